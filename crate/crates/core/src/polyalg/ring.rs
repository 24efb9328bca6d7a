use std::fmt::Debug;
use std::ops::{Add, Mul, Neg, Sub};

use num_rational::BigRational;
use num_traits::{One, Zero};

use crate::error::{Error, Result};

/// A coefficient field usable in [`SparsePoly`](super::SparsePoly).
pub trait Coefficient:
    Clone
    + PartialEq
    + Debug
    + Send
    + Sync
    + Zero
    + One
    + Neg<Output = Self>
    + Add<Output = Self>
    + Sub<Output = Self>
    + Mul<Output = Self>
{
}

impl<T> Coefficient for T where
    T: Clone
        + PartialEq
        + Debug
        + Send
        + Sync
        + Zero
        + One
        + Neg<Output = T>
        + Add<Output = T>
        + Sub<Output = T>
        + Mul<Output = T>
{
}

/// Commutative ring operations on values that may carry context (a variable
/// registry, a degree), so zero and one are produced from an existing element.
pub trait Ring: Clone + PartialEq {
    fn zero_like(&self) -> Self;
    fn one_like(&self) -> Self;
    fn vanishes(&self) -> bool;
    fn plus(&self, other: &Self) -> Self;
    fn minus(&self, other: &Self) -> Self;
    fn times(&self, other: &Self) -> Self;
    fn negated(&self) -> Self;
}

impl<C: Coefficient> Ring for C {
    fn zero_like(&self) -> Self {
        C::zero()
    }
    fn one_like(&self) -> Self {
        C::one()
    }
    fn vanishes(&self) -> bool {
        self.is_zero()
    }
    fn plus(&self, other: &Self) -> Self {
        self.clone() + other.clone()
    }
    fn minus(&self, other: &Self) -> Self {
        self.clone() - other.clone()
    }
    fn times(&self, other: &Self) -> Self {
        self.clone() * other.clone()
    }
    fn negated(&self) -> Self {
        -self.clone()
    }
}

/// Exact determinant by Laplace expansion along rows, memoized over column
/// subsets (`O(2^k k)` ring operations). Exact for any exact ring.
pub fn det<T: Ring>(matrix: &[Vec<T>]) -> Result<T> {
    let k = matrix.len();
    if k == 0 {
        return Err(Error::InvalidInput("determinant of an empty matrix".into()));
    }
    if let Some(row) = matrix.iter().find(|r| r.len() != k) {
        return Err(Error::NonSquare { rows: k, cols: row.len() });
    }
    if k > 24 {
        return Err(Error::InvalidInput(format!("{k}x{k} determinant is too large")));
    }
    let zero = matrix[0][0].zero_like();
    let mut memo: Vec<Option<T>> = vec![None; 1 << k];
    memo[0] = Some(matrix[0][0].one_like());
    for mask in 1usize..(1 << k) {
        let used = mask.count_ones() as usize;
        let row = used - 1;
        let mut acc = zero.clone();
        let mut pos = 0usize;
        for col in 0..k {
            if mask & (1 << col) == 0 {
                continue;
            }
            let entry = &matrix[row][col];
            if !entry.vanishes() {
                let sub = memo[mask ^ (1 << col)].as_ref().expect("subset computed first");
                if !sub.vanishes() {
                    let term = entry.times(sub);
                    // sign of expanding the last row of a (row+1)-square block
                    acc = if (row + pos).is_multiple_of(2) { acc.plus(&term) } else { acc.minus(&term) };
                }
            }
            pos += 1;
        }
        memo[mask] = Some(acc);
    }
    Ok(memo[(1 << k) - 1].take().unwrap())
}

/// Rank of an exact rational matrix by Gaussian elimination.
pub fn rank_of(matrix: &[Vec<BigRational>]) -> usize {
    let mut rows: Vec<Vec<BigRational>> = matrix.to_vec();
    let cols = rows.first().map_or(0, |r| r.len());
    let mut rank = 0;
    for c in 0..cols {
        let Some(pivot) = (rank..rows.len()).find(|&r| !rows[r][c].is_zero()) else {
            continue;
        };
        rows.swap(rank, pivot);
        for r in rank + 1..rows.len() {
            if rows[r][c].is_zero() {
                continue;
            }
            let factor = &rows[r][c] / &rows[rank][c];
            for j in c..cols {
                let delta = &factor * &rows[rank][j];
                rows[r][j] -= delta;
            }
        }
        rank += 1;
    }
    rank
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::polyalg::{rat, BinaryForm};
    use proptest::prelude::*;

    fn cofactor(m: &[Vec<BigRational>]) -> BigRational {
        if m.len() == 1 {
            return m[0][0].clone();
        }
        let mut total = BigRational::zero();
        for j in 0..m.len() {
            let minor: Vec<Vec<BigRational>> = m[1..]
                .iter()
                .map(|r| r.iter().enumerate().filter(|(c, _)| *c != j).map(|(_, v)| v.clone()).collect())
                .collect();
            let term = &m[0][j] * cofactor(&minor);
            if j % 2 == 0 {
                total += term;
            } else {
                total -= term;
            }
        }
        total
    }

    fn to_matrix(v: &[i64], k: usize) -> Vec<Vec<BigRational>> {
        (0..k).map(|i| (0..k).map(|j| rat(v[i * k + j])).collect()).collect()
    }

    #[test]
    fn small_determinants() {
        assert_eq!(det(&to_matrix(&[1, 0, 0, 1], 2)).unwrap(), rat(1));
        assert_eq!(det(&to_matrix(&[1, 1, 2, 3], 2)).unwrap(), rat(1));
        let s = BinaryForm::monomial(1, 1, rat(1));
        let t = BinaryForm::monomial(1, 0, rat(1));
        let d = det(&[vec![s.clone(), t.clone()], vec![t.clone(), s.clone()]]).unwrap();
        assert_eq!(d, BinaryForm::new(vec![rat(-1), rat(0), rat(1)]));
    }

    #[test]
    fn non_square_rejected() {
        let m = vec![vec![rat(1), rat(2)], vec![rat(3)]];
        assert!(matches!(det(&m), Err(Error::NonSquare { .. })));
    }

    #[test]
    fn rank_examples() {
        assert_eq!(rank_of(&to_matrix(&[1, 2, 2, 4], 2)), 1);
        assert_eq!(rank_of(&to_matrix(&[1, 2, 3, 4, 5, 6, 7, 8, 10], 3)), 3);
    }

    proptest! {
        #[test]
        fn det_matches_cofactor(v in proptest::collection::vec(-9i64..10, 9)) {
            let m = to_matrix(&v, 3);
            prop_assert_eq!(det(&m).unwrap(), cofactor(&m));
        }

        #[test]
        fn det_matches_cofactor_4(v in proptest::collection::vec(-5i64..6, 16)) {
            let m = to_matrix(&v, 4);
            prop_assert_eq!(det(&m).unwrap(), cofactor(&m));
        }
    }
}

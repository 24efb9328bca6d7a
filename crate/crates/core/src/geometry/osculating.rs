use itertools::Itertools;
use num_rational::BigRational;
use num_traits::One;

use crate::error::{Error, Result};
use crate::polyalg::{det, rat, BinaryForm};

/// The `m`-plane osculating the rational normal curve
/// `gamma(s,t) = (s^(n-1), t s^(n-2), ..., t^(n-1))`: rows `gamma, gamma', ...,
/// gamma^(m-1)` with derivatives in `t`. Row `i` has degree `n-1-i`.
#[derive(Debug, Clone, PartialEq)]
pub struct OsculatingPlane {
    m: usize,
    n: usize,
    rows: Vec<Vec<BinaryForm>>,
}

impl OsculatingPlane {
    pub fn m(&self) -> usize {
        self.m
    }

    pub fn n(&self) -> usize {
        self.n
    }

    pub fn rows(&self) -> &[Vec<BinaryForm>] {
        &self.rows
    }

    /// The constant `m x n` matrix `L(s,t)` at a point.
    pub fn at(&self, s: &BigRational, t: &BigRational) -> Vec<Vec<BigRational>> {
        self.rows.iter().map(|row| row.iter().map(|f| f.evaluate(s, t)).collect()).collect()
    }
}

/// Symbolic `L(s,t)`; evaluate with [`OsculatingPlane::at`].
pub fn osculating_matrix(m: usize, n: usize) -> Result<OsculatingPlane> {
    if m == 0 || m >= n {
        return Err(Error::InvalidInput(format!("osculating plane needs 1 <= m < n (m={m}, n={n})")));
    }
    let gamma: Vec<BinaryForm> = (0..n).map(|j| BinaryForm::monomial(n - 1, n - 1 - j, BigRational::one())).collect();
    let mut rows = vec![gamma];
    for _ in 1..m {
        let next = rows.last().unwrap().iter().map(BinaryForm::derivative_t).collect();
        rows.push(next);
    }
    Ok(OsculatingPlane { m, n, rows })
}

/// `l_alpha = (-1)^|alpha|` times the minor of `L(1,1)` on the columns
/// complementary to `alpha` (1-based, increasing).
pub fn l_minor(m: usize, n: usize, alpha: &[usize]) -> Result<BigRational> {
    if alpha.len() + m != n || alpha.windows(2).any(|w| w[0] >= w[1]) || alpha.iter().any(|&a| a < 1 || a > n) {
        return Err(Error::InvalidIndex(format!("{alpha:?} is not a {}-subset of 1..={n}", n - m)));
    }
    let plane = osculating_matrix(m, n)?.at(&rat(1), &rat(1));
    let complement: Vec<usize> = (1..=n).filter(|c| !alpha.contains(c)).collect();
    let sub: Vec<Vec<BigRational>> = plane.iter().map(|row| complement.iter().map(|&c| row[c - 1].clone()).collect()).collect();
    let minor = det(&sub)?;
    let weight: usize = alpha.iter().enumerate().map(|(i, &a)| a - (i + 1)).sum();
    Ok(if weight.is_multiple_of(2) { minor } else { -minor })
}

/// `l_alpha` for every `p`-subset in lexicographic order.
pub fn l_table(m: usize, n: usize) -> Result<Vec<(Vec<usize>, BigRational)>> {
    (1..=n)
        .combinations(n - m)
        .map(|alpha| l_minor(m, n, &alpha).map(|l| (alpha, l)))
        .collect()
}

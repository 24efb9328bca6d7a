use std::collections::HashMap;

use super::index::{ProblemShape, QuantumIndex};
use crate::error::{Error, Result};

/// Default bound on the number of poset elements materialized at once.
pub const DEFAULT_POSET_CAP: usize = 10_000;

/// `|alpha^(a)| = a*n + sum(alpha_i - i)`.
pub fn rank(shape: &ProblemShape, x: &QuantumIndex) -> Result<usize> {
    shape.validate(x)?;
    Ok(rank_unchecked(shape, x))
}

pub(crate) fn rank_unchecked(shape: &ProblemShape, x: &QuantumIndex) -> usize {
    x.level * shape.n() + x.alpha_weight()
}

/// Whether `x <= y`.
///
/// `alpha^(a) >= beta^(b)` iff `a >= b` and, when `d = a - b < p`,
/// `alpha_(d+j) >= beta_j` for `j = 1..=p-d`.
pub fn leq(shape: &ProblemShape, x: &QuantumIndex, y: &QuantumIndex) -> Result<bool> {
    shape.validate(x)?;
    shape.validate(y)?;
    Ok(leq_unchecked(shape.p(), x, y))
}

pub(crate) fn leq_unchecked(p: usize, x: &QuantumIndex, y: &QuantumIndex) -> bool {
    if y.level < x.level {
        return false;
    }
    let d = y.level - x.level;
    if d >= p {
        return true;
    }
    (0..p - d).all(|j| y.alpha[d + j] >= x.alpha[j])
}

/// Lower and upper covers of `x`, each in lexicographic `(a, alpha)` order.
///
/// `y` covers `x` when `x < y` and `rank(y) = rank(x) + 1`; [`QuantumPoset::validate_covers`]
/// checks this agrees with the no-intermediate-element definition.
pub fn covers(
    shape: &ProblemShape,
    x: &QuantumIndex,
) -> Result<(Vec<QuantumIndex>, Vec<QuantumIndex>)> {
    let r = rank(shape, x)?;
    let p = shape.p();
    let mut lower = Vec::new();
    let mut upper = Vec::new();
    for y in shape.indices() {
        let ry = rank_unchecked(shape, &y);
        if ry + 1 == r && leq_unchecked(p, &y, x) {
            lower.push(y);
        } else if ry == r + 1 && leq_unchecked(p, x, &y) {
            upper.push(y);
        }
    }
    Ok((lower, upper))
}

/// Greatest lower bound of `x` and `y`.
pub fn glb(shape: &ProblemShape, x: &QuantumIndex, y: &QuantumIndex) -> Result<QuantumIndex> {
    shape.validate(x)?;
    shape.validate(y)?;
    let p = shape.p();
    let common: Vec<QuantumIndex> = shape
        .indices()
        .into_iter()
        .filter(|z| leq_unchecked(p, z, x) && leq_unchecked(p, z, y))
        .collect();
    maximum_of(p, &common)
        .cloned()
        .ok_or_else(|| Error::LatticeViolation(format!("{x} and {y} have no greatest lower bound")))
}

fn maximum_of(p: usize, set: &[QuantumIndex]) -> Option<&QuantumIndex> {
    let candidate = set.iter().max_by_key(|c| (c.level, c.alpha_weight()))?;
    set.iter().all(|z| leq_unchecked(p, z, candidate)).then_some(candidate)
}

/// The materialized poset `C_q` with ranks and cover lists.
#[derive(Debug, Clone)]
pub struct QuantumPoset {
    shape: ProblemShape,
    elements: Vec<QuantumIndex>,
    ranks: Vec<usize>,
    lower: Vec<Vec<usize>>,
    upper: Vec<Vec<usize>>,
    lookup: HashMap<QuantumIndex, usize>,
}

impl QuantumPoset {
    pub fn new(shape: ProblemShape) -> Result<Self> {
        Self::with_cap(shape, DEFAULT_POSET_CAP)
    }

    pub fn with_cap(shape: ProblemShape, cap: usize) -> Result<Self> {
        let size = shape.num_coordinates();
        if size > cap {
            return Err(Error::PosetTooLarge { size, cap });
        }
        let elements = shape.indices();
        let ranks: Vec<usize> = elements.iter().map(|x| rank_unchecked(&shape, x)).collect();
        let mut by_rank: Vec<Vec<usize>> = vec![Vec::new(); shape.dimension() + 1];
        for (i, &r) in ranks.iter().enumerate() {
            by_rank[r].push(i);
        }
        let p = shape.p();
        let mut lower = vec![Vec::new(); elements.len()];
        let mut upper = vec![Vec::new(); elements.len()];
        for r in 1..by_rank.len() {
            for &hi in &by_rank[r] {
                for &lo in &by_rank[r - 1] {
                    if leq_unchecked(p, &elements[lo], &elements[hi]) {
                        lower[hi].push(lo);
                        upper[lo].push(hi);
                    }
                }
            }
        }
        for list in lower.iter_mut().chain(upper.iter_mut()) {
            list.sort_unstable();
        }
        let lookup = elements.iter().cloned().enumerate().map(|(i, x)| (x, i)).collect();
        Ok(Self { shape, elements, ranks, lower, upper, lookup })
    }

    pub fn shape(&self) -> &ProblemShape {
        &self.shape
    }

    pub fn len(&self) -> usize {
        self.elements.len()
    }

    pub fn is_empty(&self) -> bool {
        self.elements.is_empty()
    }

    pub fn elements(&self) -> &[QuantumIndex] {
        &self.elements
    }

    pub fn element(&self, i: usize) -> &QuantumIndex {
        &self.elements[i]
    }

    pub fn index_of(&self, x: &QuantumIndex) -> Option<usize> {
        self.lookup.get(x).copied()
    }

    pub fn rank_of(&self, i: usize) -> usize {
        self.ranks[i]
    }

    pub fn lower_covers(&self, i: usize) -> &[usize] {
        &self.lower[i]
    }

    pub fn upper_covers(&self, i: usize) -> &[usize] {
        &self.upper[i]
    }

    pub fn leq(&self, i: usize, j: usize) -> bool {
        leq_unchecked(self.shape.p(), &self.elements[i], &self.elements[j])
    }

    /// Element indices sorted by rank (stable in lexicographic order).
    pub fn by_rank(&self) -> Vec<usize> {
        let mut order: Vec<usize> = (0..self.len()).collect();
        order.sort_by_key(|&i| self.ranks[i]);
        order
    }

    pub fn minimal_elements(&self) -> Vec<usize> {
        (0..self.len()).filter(|&i| self.lower[i].is_empty()).collect()
    }

    pub fn maximal_elements(&self) -> Vec<usize> {
        (0..self.len()).filter(|&i| self.upper[i].is_empty()).collect()
    }

    /// Meet of two elements, by scanning common lower bounds.
    pub fn glb(&self, i: usize, j: usize) -> Result<usize> {
        let common: Vec<usize> =
            (0..self.len()).filter(|&k| self.leq(k, i) && self.leq(k, j)).collect();
        // only a top-ranked common lower bound can be the greatest one
        common
            .iter()
            .copied()
            .max_by_key(|&c| (self.ranks[c], std::cmp::Reverse(c)))
            .filter(|&c| common.iter().all(|&k| self.leq(k, c)))
            .ok_or_else(|| {
                Error::LatticeViolation(format!(
                    "{} and {} have no greatest lower bound",
                    self.elements[i], self.elements[j]
                ))
            })
    }

    /// Checks the rank-based covers against "x < y with nothing strictly between".
    pub fn validate_covers(&self) -> Result<()> {
        let n = self.len();
        for x in 0..n {
            for y in 0..n {
                if x == y || !self.leq(x, y) {
                    continue;
                }
                let intermediate =
                    (0..n).any(|z| z != x && z != y && self.leq(x, z) && self.leq(z, y));
                let covered = self.upper[x].contains(&y);
                if covered == intermediate {
                    return Err(Error::Internal(format!(
                        "cover mismatch between {} and {}",
                        self.elements[x], self.elements[y]
                    )));
                }
            }
        }
        Ok(())
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn idx(alpha: &[usize], a: usize) -> QuantumIndex {
        QuantumIndex::new(alpha.to_vec(), a)
    }

    fn c1() -> ProblemShape {
        ProblemShape::new(2, 2, 1).unwrap()
    }

    #[test]
    fn ranks() {
        let s = c1();
        assert_eq!(rank(&s, &idx(&[1, 2], 0)).unwrap(), 0);
        assert_eq!(rank(&s, &idx(&[3, 4], 1)).unwrap(), 8);
        assert_eq!(rank(&s, &idx(&[1, 2], 1)).unwrap(), 4);
        assert!(rank(&s, &idx(&[1, 1], 0)).is_err());
    }

    /// Transitive closure of the rank-one steps of the definition.
    fn closure_leq(s: &ProblemShape, x: &QuantumIndex, y: &QuantumIndex) -> bool {
        let all = s.indices();
        let p = s.p();
        let mut reach = vec![x.clone()];
        let mut seen = std::collections::HashSet::new();
        seen.insert(x.clone());
        while let Some(cur) = reach.pop() {
            if &cur == y {
                return true;
            }
            for z in &all {
                if !seen.contains(z) && leq_unchecked(p, &cur, z) {
                    seen.insert(z.clone());
                    reach.push(z.clone());
                }
            }
        }
        false
    }

    #[test]
    fn order_examples() {
        let s = c1();
        assert!(leq(&s, &idx(&[2, 4], 0), &idx(&[1, 2], 1)).unwrap());
        assert!(closure_leq(&s, &idx(&[2, 4], 0), &idx(&[1, 2], 1)));
        assert!(!leq(&s, &idx(&[3, 4], 0), &idx(&[1, 2], 1)).unwrap());
        assert!(!closure_leq(&s, &idx(&[3, 4], 0), &idx(&[1, 2], 1)));
        for x in s.indices() {
            assert!(leq(&s, &x, &x).unwrap());
        }
    }

    #[test]
    fn cover_examples() {
        let s = c1();
        let (lower, _) = covers(&s, &idx(&[1, 2], 1)).unwrap();
        assert_eq!(lower, vec![idx(&[2, 4], 0)]);
        let (lower, upper) = covers(&s, &idx(&[1, 2], 0)).unwrap();
        assert!(lower.is_empty());
        assert_eq!(upper, vec![idx(&[1, 3], 0)]);
    }

    #[test]
    fn meet_examples() {
        let s = c1();
        assert_eq!(glb(&s, &idx(&[1, 4], 0), &idx(&[2, 3], 0)).unwrap(), idx(&[1, 3], 0));
        for y in s.indices() {
            assert_eq!(glb(&s, &y, &y).unwrap(), y);
            assert_eq!(glb(&s, &s.bottom(), &y).unwrap(), s.bottom());
        }
    }

    #[test]
    fn poset_covers_validate() {
        for (m, p, q) in [(2, 2, 0), (2, 2, 1), (3, 2, 1), (2, 3, 2)] {
            let poset = QuantumPoset::new(ProblemShape::new(m, p, q).unwrap()).unwrap();
            poset.validate_covers().unwrap();
        }
    }

    #[test]
    fn cap_is_enforced() {
        let err = QuantumPoset::with_cap(ProblemShape::new(4, 4, 2).unwrap(), 100).unwrap_err();
        assert_eq!(err, Error::PosetTooLarge { size: 210, cap: 100 });
    }
}

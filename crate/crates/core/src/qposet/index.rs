use std::fmt;

use itertools::Itertools;
use num_integer::binomial;
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};

/// The integers `(m, p, q)` fixing an enumerative problem.
///
/// `m` is the codimension, `p` the plane dimension and `q` the degree of the maps.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub struct ProblemShape {
    m: usize,
    p: usize,
    q: usize,
}

impl ProblemShape {
    /// Both `m` and `p` must exceed one.
    pub fn new(m: usize, p: usize, q: usize) -> Result<Self> {
        if m < 2 || p < 2 {
            return Err(Error::InvalidShape(format!(
                "m and p must both be at least 2 (got m={m}, p={p})"
            )));
        }
        Ok(Self { m, p, q })
    }

    pub fn m(&self) -> usize {
        self.m
    }

    pub fn p(&self) -> usize {
        self.p
    }

    pub fn q(&self) -> usize {
        self.q
    }

    /// Ambient dimension `n = m + p`.
    pub fn n(&self) -> usize {
        self.m + self.p
    }

    /// Dimension `N = pm + qn` of the space of maps, which is also the number
    /// of conditions in the enumerative problem.
    pub fn dimension(&self) -> usize {
        self.p * self.m + self.q * self.n()
    }

    /// Number of Pluecker coordinates, `(q+1) * C(n,p)`, saturating at `usize::MAX`.
    pub fn num_coordinates(&self) -> usize {
        checked_binomial(self.n(), self.p)
            .and_then(|c| c.checked_mul(self.q as u128 + 1))
            .and_then(|c| usize::try_from(c).ok())
            .unwrap_or(usize::MAX)
    }

    /// The same `(m, p)` with degree `q - 1`, if `q > 0`.
    pub fn lower_degree(&self) -> Option<Self> {
        (self.q > 0).then(|| Self { q: self.q - 1, ..*self })
    }

    pub fn with_degree(&self, q: usize) -> Self {
        Self { q, ..*self }
    }

    /// Unique minimal index `(1,...,p)^(0)`.
    pub fn bottom(&self) -> QuantumIndex {
        QuantumIndex { level: 0, alpha: (1..=self.p).collect() }
    }

    /// Unique maximal index `(m+1,...,n)^(q)`.
    pub fn top(&self) -> QuantumIndex {
        QuantumIndex { level: self.q, alpha: (self.m + 1..=self.n()).collect() }
    }

    /// All indices in lexicographic order on `(a, alpha)`.
    pub fn indices(&self) -> Vec<QuantumIndex> {
        let subsets: Vec<Vec<usize>> = (1..=self.n()).combinations(self.p).collect();
        (0..=self.q)
            .flat_map(|level| {
                subsets.iter().map(move |alpha| QuantumIndex { level, alpha: alpha.clone() })
            })
            .collect()
    }

    /// Position of `x` in [`ProblemShape::indices`], computed without enumeration.
    pub fn position(&self, x: &QuantumIndex) -> Result<usize> {
        self.validate(x)?;
        let n = self.n();
        let p = self.p;
        // lexicographic rank of the subset
        let mut pos = 0usize;
        let mut prev = 0usize;
        for (i, &v) in x.alpha.iter().enumerate() {
            for skipped in prev + 1..v {
                pos += binomial(n - skipped, p - i - 1);
            }
            prev = v;
        }
        Ok(x.level * binomial(n, p) + pos)
    }

    pub fn validate(&self, x: &QuantumIndex) -> Result<()> {
        if x.alpha.len() != self.p {
            return Err(Error::InvalidIndex(format!(
                "{x}: expected {} entries, found {}",
                self.p,
                x.alpha.len()
            )));
        }
        if x.level > self.q {
            return Err(Error::InvalidIndex(format!("{x}: level exceeds q = {}", self.q)));
        }
        if x.alpha[0] < 1 || *x.alpha.last().unwrap() > self.n() {
            return Err(Error::InvalidIndex(format!("{x}: entries must lie in 1..={}", self.n())));
        }
        if x.alpha.windows(2).any(|w| w[0] >= w[1]) {
            return Err(Error::InvalidIndex(format!("{x}: entries must be strictly increasing")));
        }
        Ok(())
    }
}

fn checked_binomial(n: usize, k: usize) -> Option<u128> {
    let k = k.min(n - k);
    let mut acc: u128 = 1;
    for r in 1..=k as u128 {
        acc = acc.checked_mul(n as u128 - k as u128 + r)? / r;
    }
    Some(acc)
}

impl fmt::Display for ProblemShape {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "(m={}, p={}, q={})", self.m, self.p, self.q)
    }
}

/// A quantum Pluecker index `alpha^(a)`.
///
/// Ordering is lexicographic on `(level, alpha)`, which is the iteration order
/// used for every output of the crate.
#[derive(Debug, Clone, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
pub struct QuantumIndex {
    pub level: usize,
    pub alpha: Vec<usize>,
}

impl QuantumIndex {
    pub fn new(alpha: Vec<usize>, level: usize) -> Self {
        Self { level, alpha }
    }

    /// `|alpha| = sum(alpha_i - i)`, the Grassmannian part of the rank.
    pub fn alpha_weight(&self) -> usize {
        self.alpha.iter().enumerate().map(|(i, &a)| a - (i + 1)).sum()
    }

    /// Canonical key `"a:alpha_1,...,alpha_p"`.
    pub fn key(&self) -> String {
        format!("{}:{}", self.level, self.alpha.iter().join(","))
    }

    /// Parses [`QuantumIndex::key`].
    pub fn from_key(key: &str) -> Result<Self> {
        let (level, alpha) = key
            .split_once(':')
            .ok_or_else(|| Error::Parse(format!("index key {key:?} lacks ':'")))?;
        let level = level
            .trim()
            .parse()
            .map_err(|_| Error::Parse(format!("bad level in {key:?}")))?;
        let alpha = alpha
            .split(',')
            .map(|v| v.trim().parse::<usize>())
            .collect::<std::result::Result<Vec<_>, _>>()
            .map_err(|_| Error::Parse(format!("bad subset in {key:?}")))?;
        Ok(Self { level, alpha })
    }
}

impl fmt::Display for QuantumIndex {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "({})^({})", self.alpha.iter().join(","), self.level)
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn shape_numbers() {
        let s = ProblemShape::new(2, 2, 1).unwrap();
        assert_eq!(s.n(), 4);
        assert_eq!(s.dimension(), 8);
        assert_eq!(s.num_coordinates(), 12);
        assert!(ProblemShape::new(1, 2, 0).is_err());
        assert!(ProblemShape::new(2, 1, 0).is_err());
    }

    #[test]
    fn coordinate_count_saturates() {
        assert_eq!(ProblemShape::new(5, 5, 2).unwrap().num_coordinates(), 3 * 252);
        assert_eq!(ProblemShape::new(70, 70, 0).unwrap().num_coordinates(), usize::MAX);
    }

    #[test]
    fn positions_match_enumeration() {
        for (m, p, q) in [(2, 2, 1), (3, 2, 2), (2, 3, 1), (4, 3, 0)] {
            let s = ProblemShape::new(m, p, q).unwrap();
            for (i, x) in s.indices().iter().enumerate() {
                assert_eq!(s.position(x).unwrap(), i);
            }
        }
    }

    #[test]
    fn validation() {
        let s = ProblemShape::new(2, 2, 1).unwrap();
        assert!(s.validate(&QuantumIndex::new(vec![2, 1], 0)).is_err());
        assert!(s.validate(&QuantumIndex::new(vec![1, 5], 0)).is_err());
        assert!(s.validate(&QuantumIndex::new(vec![1, 2], 2)).is_err());
        assert!(s.validate(&QuantumIndex::new(vec![1, 2, 3], 0)).is_err());
        assert!(s.validate(&QuantumIndex::new(vec![3, 4], 1)).is_ok());
    }

    #[test]
    fn key_round_trip() {
        let x = QuantumIndex::new(vec![1, 3, 10], 2);
        assert_eq!(x.key(), "2:1,3,10");
        assert_eq!(QuantumIndex::from_key(&x.key()).unwrap(), x);
    }
}

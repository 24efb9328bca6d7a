use std::collections::BTreeMap;

use itertools::Itertools;
use num_bigint::{BigInt, BigUint};
use num_rational::BigRational;
use num_traits::{One, Signed, Zero};

use super::index::{ProblemShape, QuantumIndex};
use super::order::QuantumPoset;
use crate::error::{Error, Result};

/// Degrees `deg Z_{alpha^(a)}`: the number of maximal chains below each index.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ChainCountTable {
    shape: ProblemShape,
    counts: BTreeMap<QuantumIndex, BigUint>,
}

impl ChainCountTable {
    /// Dynamic program up the graded poset: minimal elements get 1, every other
    /// element the sum over its lower covers.
    pub fn build(poset: &QuantumPoset) -> Self {
        let mut values: Vec<BigUint> = vec![BigUint::zero(); poset.len()];
        for i in poset.by_rank() {
            let lower = poset.lower_covers(i);
            values[i] = if lower.is_empty() {
                BigUint::one()
            } else {
                lower.iter().map(|&j| &values[j]).sum()
            };
        }
        let counts = poset.elements().iter().cloned().zip(values).collect();
        Self { shape: *poset.shape(), counts }
    }

    pub fn shape(&self) -> &ProblemShape {
        &self.shape
    }

    pub fn get(&self, x: &QuantumIndex) -> Option<&BigUint> {
        self.counts.get(x)
    }

    pub fn iter(&self) -> impl Iterator<Item = (&QuantumIndex, &BigUint)> {
        self.counts.iter()
    }

    /// Value at the top element.
    pub fn delta(&self) -> &BigUint {
        &self.counts[&self.shape.top()]
    }

    /// JSON object keyed by `"a:alpha_1,...,alpha_p"`, values as decimal strings.
    pub fn to_json(&self) -> serde_json::Value {
        let map: serde_json::Map<String, serde_json::Value> = self
            .counts
            .iter()
            .map(|(k, v)| (k.key(), serde_json::Value::String(v.to_string())))
            .collect();
        serde_json::Value::Object(map)
    }

    pub fn from_json(shape: ProblemShape, value: &serde_json::Value) -> Result<Self> {
        let obj = value
            .as_object()
            .ok_or_else(|| Error::Parse("chain-count table must be a JSON object".into()))?;
        let mut counts = BTreeMap::new();
        for (k, v) in obj {
            let index = QuantumIndex::from_key(k)?;
            shape.validate(&index)?;
            let digits = v
                .as_str()
                .ok_or_else(|| Error::Parse(format!("count for {k} must be a string")))?;
            let count = digits
                .parse::<BigUint>()
                .map_err(|_| Error::Parse(format!("bad count {digits:?} for {k}")))?;
            counts.insert(index, count);
        }
        Ok(Self { shape, counts })
    }
}

/// `deg Z_x` for a single index.
pub fn chain_count(shape: &ProblemShape, x: &QuantumIndex) -> Result<BigUint> {
    shape.validate(x)?;
    let poset = QuantumPoset::new(*shape)?;
    Ok(ChainCountTable::build(&poset).get(x).cloned().expect("validated index"))
}

/// The degree of the quantum Grassmannian as the number of maximal chains of `C_q`.
pub fn delta_chains(shape: &ProblemShape) -> Result<BigUint> {
    let poset = QuantumPoset::new(*shape)?;
    Ok(ChainCountTable::build(&poset).delta().clone())
}

fn factorial(k: usize) -> BigInt {
    (1..=k).map(BigInt::from).product()
}

/// The closed formula
///
/// `(-1)^(q(p+1)) N! sum_{nu_1+...+nu_p=q} prod_{i<j} (j-i+n(nu_j-nu_i)) / prod_j (m+j+n nu_j-1)!`
///
/// evaluated with exact rationals.
pub fn delta_formula(shape: &ProblemShape) -> Result<BigUint> {
    let (m, p, q, n) = (shape.m() as i64, shape.p(), shape.q(), shape.n() as i64);
    let mut sum = BigRational::zero();
    for nu in compositions(q, p) {
        let mut numer = BigInt::one();
        for i in 0..p {
            for j in i + 1..p {
                numer *= BigInt::from((j - i) as i64 + n * (nu[j] as i64 - nu[i] as i64));
            }
        }
        let denom: BigInt = (0..p)
            .map(|j| {
                let arg = m + (j as i64 + 1) + n * nu[j] as i64 - 1;
                factorial(arg as usize)
            })
            .product();
        sum += BigRational::new(numer, denom);
    }
    let mut value = sum * BigRational::from_integer(factorial(shape.dimension()));
    if (q * (shape.p() + 1)) % 2 == 1 {
        value = -value;
    }
    if !value.is_integer() || value.is_negative() {
        return Err(Error::Internal(format!(
            "degree formula produced {value} for {shape}, expected a nonnegative integer"
        )));
    }
    Ok(value.to_integer().to_biguint().expect("nonnegative"))
}

/// Weak compositions of `total` into `parts` nonnegative parts, lexicographic.
fn compositions(total: usize, parts: usize) -> Vec<Vec<usize>> {
    // stars and bars: choose separator positions among total + parts - 1 slots
    (0..total + parts - 1)
        .combinations(parts - 1)
        .map(|bars| {
            let mut out = Vec::with_capacity(parts);
            let mut prev: i64 = -1;
            for &b in &bars {
                out.push((b as i64 - prev - 1) as usize);
                prev = b as i64;
            }
            out.push((total + parts - 1) - (prev + 1) as usize);
            out
        })
        .collect()
}

/// Number of standard Young tableaux of a `p x m` rectangle (hook-length formula).
pub fn syt_rectangle(p: usize, m: usize) -> BigUint {
    let cells = factorial(p * m);
    let hooks: BigInt = (0..p)
        .flat_map(|i| (0..m).map(move |j| (p - i) + (m - j) - 1))
        .map(BigInt::from)
        .product();
    (cells / hooks).to_biguint().expect("positive")
}

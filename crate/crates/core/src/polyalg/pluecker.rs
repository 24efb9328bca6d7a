use itertools::Itertools;
use num_rational::BigRational;
use num_traits::Zero;

use super::form::BinaryForm;
use super::ring::det;
use crate::error::{Error, Result};
use crate::qposet::{ProblemShape, QuantumIndex};

/// Coordinates indexed by `C_q`, stored in lexicographic `(a, alpha)` order.
#[derive(Debug, Clone, PartialEq)]
pub struct PlueckerVector<T> {
    shape: ProblemShape,
    coords: Vec<T>,
}

impl<T> PlueckerVector<T> {
    pub fn new(shape: ProblemShape, coords: Vec<T>) -> Result<Self> {
        if coords.len() != shape.num_coordinates() {
            return Err(Error::InvalidInput(format!(
                "{} coordinates supplied for {shape}, which has {}",
                coords.len(),
                shape.num_coordinates()
            )));
        }
        Ok(Self { shape, coords })
    }

    pub fn from_fn(shape: ProblemShape, f: impl FnMut(&QuantumIndex) -> T) -> Self {
        let coords = shape.indices().iter().map(f).collect();
        Self { shape, coords }
    }

    pub fn shape(&self) -> &ProblemShape {
        &self.shape
    }

    pub fn coords(&self) -> &[T] {
        &self.coords
    }

    pub fn into_coords(self) -> Vec<T> {
        self.coords
    }

    pub fn get(&self, x: &QuantumIndex) -> Result<&T> {
        Ok(&self.coords[self.shape.position(x)?])
    }

    pub fn iter(&self) -> impl Iterator<Item = (QuantumIndex, &T)> {
        self.shape.indices().into_iter().zip(self.coords.iter())
    }

    pub fn map<U>(&self, f: impl Fn(&T) -> U) -> PlueckerVector<U> {
        PlueckerVector { shape: self.shape, coords: self.coords.iter().map(f).collect() }
    }
}

/// Quantum Pluecker coordinates of a `p x n` matrix of binary forms: for each
/// increasing column subset `alpha`, the coefficient of `s^a t^(q-a)` in the
/// minor with rows in matrix order.
pub fn pluecker_extract(shape: &ProblemShape, matrix: &[Vec<BinaryForm>]) -> Result<PlueckerVector<BigRational>> {
    let (p, n, q) = (shape.p(), shape.n(), shape.q());
    if matrix.len() != p || matrix.iter().any(|r| r.len() != n) {
        return Err(Error::Representation(format!("expected a {p}x{n} matrix of forms")));
    }
    for (i, row) in matrix.iter().enumerate() {
        let degrees: Vec<usize> = row.iter().filter(|f| !f.is_zero()).map(BinaryForm::degree).unique().collect();
        if degrees.len() > 1 {
            return Err(Error::Representation(format!("row {i} is not homogeneous (degrees {degrees:?})")));
        }
    }
    let mut coords = Vec::with_capacity(shape.num_coordinates());
    let mut minors = Vec::new();
    for alpha in (0..n).combinations(p) {
        let sub: Vec<Vec<BinaryForm>> =
            matrix.iter().map(|row| alpha.iter().map(|&c| row[c].clone()).collect()).collect();
        let minor = det(&sub)?;
        if !minor.is_zero() && minor.degree() != q {
            let label = alpha.iter().map(|c| c + 1).join(",");
            return Err(Error::Representation(format!(
                "minor on columns {label} has degree {}, expected {q}",
                minor.degree()
            )));
        }
        minors.push(minor);
    }
    if minors.iter().all(BinaryForm::is_zero) {
        return Err(Error::Representation("all maximal minors vanish".into()));
    }
    for a in 0..=q {
        for minor in &minors {
            coords.push(if minor.is_zero() { BigRational::zero() } else { minor.coeff(a) });
        }
    }
    PlueckerVector::new(*shape, coords)
}

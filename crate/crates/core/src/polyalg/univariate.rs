use std::fmt;

use num_bigint::BigInt;
use num_complex::Complex64;
use num_integer::Integer;
use num_rational::BigRational;
use num_traits::{One, Signed, ToPrimitive, Zero};

use super::ring::Coefficient;
use super::sparse::SparsePoly;
use super::text::render_rational;
use crate::error::{Error, Result};

/// Dense univariate polynomial with exact coefficients, lowest degree first.
/// Trailing zeros are trimmed, so the zero polynomial has no coefficients.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct UniPoly {
    coeffs: Vec<BigRational>,
}

impl UniPoly {
    pub fn new(mut coeffs: Vec<BigRational>) -> Self {
        while coeffs.last().is_some_and(Zero::is_zero) {
            coeffs.pop();
        }
        Self { coeffs }
    }

    pub fn from_integers(coeffs: &[i64]) -> Self {
        Self::new(coeffs.iter().map(|&c| BigRational::from_integer(c.into())).collect())
    }

    pub fn zero() -> Self {
        Self { coeffs: Vec::new() }
    }

    pub fn x() -> Self {
        Self::from_integers(&[0, 1])
    }

    /// Reads a polynomial that involves at most the variable `var`.
    pub fn from_sparse(poly: &SparsePoly<BigRational>, var: usize) -> Result<Self> {
        if poly.variables().iter().any(|&v| v != var) {
            return Err(Error::InvalidInput("polynomial is not univariate in the requested variable".into()));
        }
        let d = poly.degree_in(var).unwrap_or(0) as usize;
        let mut coeffs = vec![BigRational::zero(); d + 1];
        for (m, c) in poly.terms() {
            coeffs[m.exponents()[var] as usize] = c.clone();
        }
        Ok(Self::new(coeffs))
    }

    pub fn coeffs(&self) -> &[BigRational] {
        &self.coeffs
    }

    pub fn is_zero(&self) -> bool {
        self.coeffs.is_empty()
    }

    pub fn degree(&self) -> Option<usize> {
        self.coeffs.len().checked_sub(1)
    }

    pub fn lead(&self) -> Option<&BigRational> {
        self.coeffs.last()
    }

    pub fn eval(&self, x: &BigRational) -> BigRational {
        let mut acc = BigRational::zero();
        for c in self.coeffs.iter().rev() {
            acc = acc * x + c;
        }
        acc
    }

    pub fn derivative(&self) -> Self {
        Self::new(
            self.coeffs
                .iter()
                .enumerate()
                .skip(1)
                .map(|(k, c)| c * BigRational::from_integer((k as i64).into()))
                .collect(),
        )
    }

    pub fn scale(&self, c: &BigRational) -> Self {
        Self::new(self.coeffs.iter().map(|a| a * c).collect())
    }

    pub fn add(&self, other: &Self) -> Self {
        let n = self.coeffs.len().max(other.coeffs.len());
        Self::new(
            (0..n)
                .map(|k| {
                    let a = self.coeffs.get(k).cloned().unwrap_or_else(BigRational::zero);
                    let b = other.coeffs.get(k).cloned().unwrap_or_else(BigRational::zero);
                    a + b
                })
                .collect(),
        )
    }

    pub fn sub(&self, other: &Self) -> Self {
        self.add(&other.scale(&-BigRational::one()))
    }

    pub fn mul(&self, other: &Self) -> Self {
        if self.is_zero() || other.is_zero() {
            return Self::zero();
        }
        let mut out = vec![BigRational::zero(); self.coeffs.len() + other.coeffs.len() - 1];
        for (i, a) in self.coeffs.iter().enumerate() {
            for (j, b) in other.coeffs.iter().enumerate() {
                out[i + j] += a * b;
            }
        }
        Self::new(out)
    }

    /// Euclidean division; panics on a zero divisor.
    pub fn div_rem(&self, divisor: &Self) -> (Self, Self) {
        let dd = divisor.degree().expect("division by the zero polynomial");
        let lead = divisor.lead().unwrap().clone();
        let mut rem = self.coeffs.clone();
        let mut quot = vec![BigRational::zero(); rem.len().saturating_sub(dd)];
        while rem.len() > dd && !rem.is_empty() {
            let k = rem.len() - 1 - dd;
            let factor = rem.last().unwrap() / &lead;
            for (j, c) in divisor.coeffs.iter().enumerate() {
                rem[k + j] -= &factor * c;
            }
            quot[k] = factor;
            rem.pop();
            while rem.last().is_some_and(Zero::is_zero) {
                rem.pop();
            }
        }
        (Self::new(quot), Self::new(rem))
    }

    pub fn monic(&self) -> Self {
        match self.lead() {
            Some(l) => self.scale(&l.recip()),
            None => Self::zero(),
        }
    }

    /// Integer coefficients with unit content and positive leading coefficient.
    pub fn primitive(&self) -> Self {
        if self.is_zero() {
            return Self::zero();
        }
        let lcm = self.coeffs.iter().fold(BigInt::one(), |acc, c| acc.lcm(c.denom()));
        let ints: Vec<BigInt> = self.coeffs.iter().map(|c| (c * BigRational::from_integer(lcm.clone())).to_integer()).collect();
        let mut content = ints.iter().fold(BigInt::zero(), |acc, c| acc.gcd(c));
        if ints.last().unwrap().is_negative() {
            content = -content;
        }
        Self::new(ints.into_iter().map(|c| BigRational::from_integer(c / &content)).collect())
    }

    /// Greatest common divisor, normalized by [`UniPoly::primitive`].
    pub fn gcd(&self, other: &Self) -> Self {
        let mut a = self.primitive();
        let mut b = other.primitive();
        while !b.is_zero() {
            let (_, r) = a.div_rem(&b);
            a = b;
            b = r.primitive();
        }
        a.primitive()
    }

    /// Product of the distinct irreducible factors, `f / gcd(f, f')`, primitive.
    pub fn square_free(&self) -> Self {
        if self.degree().unwrap_or(0) == 0 {
            return self.primitive();
        }
        let g = self.gcd(&self.derivative());
        self.div_rem(&g).0.primitive()
    }

    pub fn to_sparse<C: Coefficient>(&self, registry: &std::sync::Arc<super::Registry>, var: usize, f: impl Fn(&BigRational) -> C) -> SparsePoly<C> {
        let x = SparsePoly::var(registry, var);
        let mut out = SparsePoly::zero(registry);
        for (k, c) in self.coeffs.iter().enumerate() {
            out = &out + &x.pow(k as u32).scale(&f(c));
        }
        out
    }

    /// Floating coefficients after dividing exactly by the largest coefficient.
    fn normalized_f64(&self) -> Vec<f64> {
        let max = self.coeffs.iter().map(|c| c.abs()).max().unwrap_or_else(BigRational::one);
        self.coeffs.iter().map(|c| (c / &max).to_f64().unwrap_or(0.0)).collect()
    }

    /// All complex roots (with multiplicity) by Aberth-Ehrlich iteration in
    /// double precision. Intended for cross-checks, not certification.
    pub fn complex_roots(&self) -> Vec<Complex64> {
        let Some(d) = self.degree() else { return Vec::new() };
        if d == 0 {
            return Vec::new();
        }
        let full = self.normalized_f64();
        // exact zero roots first, then deflate them away
        let lowest = self.coeffs.iter().position(|c| !c.is_zero()).unwrap_or(0);
        let mut roots: Vec<Complex64> = vec![Complex64::new(0.0, 0.0); lowest];
        let a = &full[lowest..];
        let active = d - lowest;
        if active == 0 {
            return roots;
        }
        // radius guess from the geometric mean of the root moduli
        let radius = (a[0].abs() / a[active].abs()).powf(1.0 / active as f64).max(1e-300);
        let eval = |z: Complex64| -> (Complex64, Complex64) {
            let mut p = Complex64::new(0.0, 0.0);
            let mut dp = Complex64::new(0.0, 0.0);
            for &c in a.iter().rev() {
                dp = dp * z + p;
                p = p * z + c;
            }
            (p, dp)
        };
        let mut z: Vec<Complex64> = (0..active)
            .map(|k| Complex64::from_polar(radius, 2.0 * std::f64::consts::PI * (k as f64 + 0.25) / active as f64 + 0.4))
            .collect();
        for _ in 0..2000 {
            let mut biggest: f64 = 0.0;
            for k in 0..active {
                let (p, dp) = eval(z[k]);
                if p == Complex64::new(0.0, 0.0) {
                    continue;
                }
                let ratio = p / dp;
                let repulsion: Complex64 = (0..active).filter(|&j| j != k).map(|j| (z[k] - z[j]).inv()).sum();
                let step = ratio / (Complex64::new(1.0, 0.0) - ratio * repulsion);
                if step.is_finite() {
                    z[k] -= step;
                    biggest = biggest.max(step.norm() / z[k].norm().max(1e-300));
                }
            }
            if biggest < 1e-15 {
                break;
            }
        }
        roots.extend(z);
        roots
    }
}

impl fmt::Display for UniPoly {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.is_zero() {
            return write!(f, "0");
        }
        let mut first = true;
        for (k, c) in self.coeffs.iter().enumerate().rev() {
            if c.is_zero() {
                continue;
            }
            let neg = c.is_negative();
            let mag = c.abs();
            let body = match k {
                0 => render_rational(&mag),
                _ => {
                    let xk = if k == 1 { "x".to_string() } else { format!("x^{k}") };
                    if mag.is_one() { xk } else { format!("{}*{}", render_rational(&mag), xk) }
                }
            };
            match (first, neg) {
                (true, true) => write!(f, "-{body}")?,
                (true, false) => write!(f, "{body}")?,
                (false, true) => write!(f, " - {body}")?,
                (false, false) => write!(f, " + {body}")?,
            }
            first = false;
        }
        Ok(())
    }
}

use std::fmt;

use num_rational::BigRational;
use num_traits::{One, Zero};

use super::ring::Ring;
use super::univariate::UniPoly;
use super::text::render_rational;

/// A binary form `sum_k c_k s^k t^(d-k)` of degree `d` with exact coefficients.
///
/// The degree is tracked even when every coefficient is zero; a zero form
/// reports a nominal degree of `-1` and is compatible with any degree.
#[derive(Debug, Clone)]
pub struct BinaryForm {
    degree: usize,
    coeffs: Vec<BigRational>,
}

impl BinaryForm {
    /// Coefficients `c_0..c_d` for `s^k t^(d-k)`; the degree is `coeffs.len() - 1`.
    pub fn new(coeffs: Vec<BigRational>) -> Self {
        assert!(!coeffs.is_empty(), "a binary form needs at least one coefficient");
        Self { degree: coeffs.len() - 1, coeffs }
    }

    pub fn zero(degree: usize) -> Self {
        Self { degree, coeffs: vec![BigRational::zero(); degree + 1] }
    }

    pub fn constant(c: BigRational) -> Self {
        Self::new(vec![c])
    }

    /// `c * s^s_power * t^(degree - s_power)`.
    pub fn monomial(degree: usize, s_power: usize, c: BigRational) -> Self {
        assert!(s_power <= degree);
        let mut f = Self::zero(degree);
        f.coeffs[s_power] = c;
        f
    }

    pub fn degree(&self) -> usize {
        self.degree
    }

    pub fn nominal_degree(&self) -> i64 {
        if self.is_zero() {
            -1
        } else {
            self.degree as i64
        }
    }

    pub fn is_zero(&self) -> bool {
        self.coeffs.iter().all(Zero::is_zero)
    }

    /// Coefficient of `s^k t^(d-k)`, zero outside `0..=d`.
    pub fn coeff(&self, k: usize) -> BigRational {
        self.coeffs.get(k).cloned().unwrap_or_else(BigRational::zero)
    }

    pub fn coeffs(&self) -> &[BigRational] {
        &self.coeffs
    }

    /// Whether `self + other` is homogeneous.
    pub fn compatible(&self, other: &Self) -> bool {
        self.degree == other.degree || self.is_zero() || other.is_zero()
    }

    /// Sum of forms; `None` when both are nonzero with different degrees.
    pub fn checked_add(&self, other: &Self) -> Option<Self> {
        if self.is_zero() {
            return Some(other.clone());
        }
        if other.is_zero() {
            return Some(self.clone());
        }
        (self.degree == other.degree).then(|| Self {
            degree: self.degree,
            coeffs: self.coeffs.iter().zip(&other.coeffs).map(|(a, b)| a + b).collect(),
        })
    }

    pub fn scale(&self, c: &BigRational) -> Self {
        Self { degree: self.degree, coeffs: self.coeffs.iter().map(|a| a * c).collect() }
    }

    pub fn mul(&self, other: &Self) -> Self {
        let degree = self.degree + other.degree;
        let mut coeffs = vec![BigRational::zero(); degree + 1];
        for (i, a) in self.coeffs.iter().enumerate() {
            if a.is_zero() {
                continue;
            }
            for (j, b) in other.coeffs.iter().enumerate() {
                if !b.is_zero() {
                    coeffs[i + j] += a * b;
                }
            }
        }
        Self { degree, coeffs }
    }

    /// Derivative with respect to `t`; degree drops by one (a constant maps to
    /// the zero form of degree 0).
    pub fn derivative_t(&self) -> Self {
        if self.degree == 0 {
            return Self::zero(0);
        }
        let degree = self.degree - 1;
        let coeffs = (0..=degree)
            .map(|k| &self.coeffs[k] * BigRational::from_integer(((self.degree - k) as i64).into()))
            .collect();
        Self { degree, coeffs }
    }

    /// Derivative with respect to `s`.
    pub fn derivative_s(&self) -> Self {
        if self.degree == 0 {
            return Self::zero(0);
        }
        let degree = self.degree - 1;
        let coeffs = (0..=degree)
            .map(|k| &self.coeffs[k + 1] * BigRational::from_integer(((k + 1) as i64).into()))
            .collect();
        Self { degree, coeffs }
    }

    pub fn evaluate(&self, s: &BigRational, t: &BigRational) -> BigRational {
        let mut total = BigRational::zero();
        for (k, c) in self.coeffs.iter().enumerate() {
            if c.is_zero() {
                continue;
            }
            total += c * pow(s, k) * pow(t, self.degree - k);
        }
        total
    }

    /// Substitute `t = 1`, giving a univariate polynomial in `s`.
    pub fn dehomogenize_t(&self) -> UniPoly {
        UniPoly::new(self.coeffs.clone())
    }

    /// Substitute `s -> s^e, t -> t^e`.
    pub fn inflate(&self, e: usize) -> Self {
        let mut f = Self::zero(self.degree * e);
        for (k, c) in self.coeffs.iter().enumerate() {
            f.coeffs[k * e] = c.clone();
        }
        f
    }
}

fn pow(x: &BigRational, k: usize) -> BigRational {
    num_traits::pow(x.clone(), k)
}

impl PartialEq for BinaryForm {
    fn eq(&self, other: &Self) -> bool {
        match (self.is_zero(), other.is_zero()) {
            (true, true) => true,
            (false, false) => self.degree == other.degree && self.coeffs == other.coeffs,
            _ => false,
        }
    }
}

impl Ring for BinaryForm {
    fn zero_like(&self) -> Self {
        Self::zero(self.degree)
    }
    fn one_like(&self) -> Self {
        Self::constant(BigRational::one())
    }
    fn vanishes(&self) -> bool {
        self.is_zero()
    }
    fn plus(&self, other: &Self) -> Self {
        self.checked_add(other).expect("sum of binary forms of different degrees")
    }
    fn minus(&self, other: &Self) -> Self {
        self.plus(&other.negated())
    }
    fn times(&self, other: &Self) -> Self {
        self.mul(other)
    }
    fn negated(&self) -> Self {
        Self { degree: self.degree, coeffs: self.coeffs.iter().map(|c| -c).collect() }
    }
}

impl fmt::Display for BinaryForm {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let mut first = true;
        for k in (0..=self.degree).rev() {
            let c = &self.coeffs[k];
            if c.is_zero() {
                continue;
            }
            let mut mono = Vec::new();
            if k > 0 {
                mono.push(if k == 1 { "s".to_string() } else { format!("s^{k}") });
            }
            let tk = self.degree - k;
            if tk > 0 {
                mono.push(if tk == 1 { "t".to_string() } else { format!("t^{tk}") });
            }
            let negative = c < &BigRational::zero();
            let mag = if negative { -c.clone() } else { c.clone() };
            let body = if mono.is_empty() {
                render_rational(&mag)
            } else if mag.is_one() {
                mono.join("*")
            } else {
                format!("{}*{}", render_rational(&mag), mono.join("*"))
            };
            match (first, negative) {
                (true, true) => write!(f, "-{body}")?,
                (true, false) => write!(f, "{body}")?,
                (false, true) => write!(f, " - {body}")?,
                (false, false) => write!(f, " + {body}")?,
            }
            first = false;
        }
        if first {
            write!(f, "0")?;
        }
        Ok(())
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::polyalg::rat;

    fn s() -> BinaryForm {
        BinaryForm::monomial(1, 1, rat(1))
    }
    fn t() -> BinaryForm {
        BinaryForm::monomial(1, 0, rat(1))
    }

    #[test]
    fn product_of_linear_forms() {
        let p = s().plus(&t()).times(&s().minus(&t()));
        assert_eq!(p, BinaryForm::new(vec![rat(-1), rat(0), rat(1)]));
        assert_eq!(p.to_string(), "s^2 - t^2");
    }

    #[test]
    fn t_derivative() {
        // d/dt (t^2 s) = 2 t s
        let f = BinaryForm::monomial(3, 1, rat(1));
        assert_eq!(f.derivative_t(), BinaryForm::monomial(2, 1, rat(2)));
        assert_eq!(BinaryForm::constant(rat(5)).derivative_t().nominal_degree(), -1);
    }

    #[test]
    fn dehomogenize() {
        let f = BinaryForm::new(vec![rat(1), rat(1), rat(1)]);
        assert_eq!(f.dehomogenize_t(), UniPoly::new(vec![rat(1), rat(1), rat(1)]));
    }

    #[test]
    fn zero_form_is_compatible() {
        let z = BinaryForm::zero(5);
        assert_eq!(z.nominal_degree(), -1);
        assert!(z.compatible(&s()));
        assert_eq!(z.plus(&s()), s());
        assert!(s().checked_add(&BinaryForm::constant(rat(1))).is_none());
    }

    #[test]
    fn evaluation_and_inflation() {
        let f = s().plus(&t().scale(&rat(2)));
        assert_eq!(f.evaluate(&rat(3), &rat(5)), rat(13));
        let g = f.inflate(4);
        assert_eq!(g.degree(), 4);
        assert_eq!(g.evaluate(&rat(1), &rat(2)), rat(33));
    }
}

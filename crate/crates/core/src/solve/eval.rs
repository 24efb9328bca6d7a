use nalgebra::{DMatrix, DVector};
use num_complex::{Complex, Complex64};
use num_rational::BigRational;
use num_traits::ToPrimitive;

use crate::polyalg::SparsePoly;

/// A polynomial with complex floating coefficients, stored as
/// `(coefficient, [(variable, exponent)])`.
#[derive(Debug, Clone)]
pub(crate) struct CPoly {
    terms: Vec<(Complex64, Vec<(usize, u32)>)>,
    derivatives: Vec<Vec<(Complex64, Vec<(usize, u32)>)>>,
}

fn compress(e: &[u32]) -> Vec<(usize, u32)> {
    e.iter().enumerate().filter(|(_, &k)| k > 0).map(|(i, &k)| (i, k)).collect()
}

fn eval_terms(terms: &[(Complex64, Vec<(usize, u32)>)], x: &[Complex64]) -> (Complex64, f64) {
    let mut value = Complex64::new(0.0, 0.0);
    let mut size = 0.0;
    for (c, mon) in terms {
        let m = mon.iter().fold(Complex64::new(1.0, 0.0), |acc, &(i, k)| acc * x[i].powu(k));
        let term = c * m;
        value += term;
        size += term.norm();
    }
    (value, size)
}

pub(crate) fn to_f64(c: &BigRational) -> f64 {
    c.to_f64().unwrap_or(f64::NAN)
}

impl CPoly {
    pub(crate) fn from_exact(poly: &SparsePoly<BigRational>) -> Self {
        let arity = poly.registry().len();
        let terms: Vec<_> = poly
            .terms()
            .map(|(m, c)| (Complex64::new(to_f64(c), 0.0), compress(m.exponents())))
            .collect();
        let derivatives = (0..arity)
            .map(|v| {
                poly.derivative(v)
                    .terms()
                    .map(|(m, c)| (Complex64::new(to_f64(c), 0.0), compress(m.exponents())))
                    .collect()
            })
            .collect();
        CPoly { terms, derivatives }
    }

    pub(crate) fn eval(&self, x: &[Complex64]) -> Complex64 {
        eval_terms(&self.terms, x).0
    }

    /// `|f(x)| / sum |c_i x^(a_i)|`, zero when every term vanishes.
    pub(crate) fn relative_residual(&self, x: &[Complex64]) -> f64 {
        let (v, size) = eval_terms(&self.terms, x);
        if size == 0.0 {
            0.0
        } else {
            v.norm() / size
        }
    }

    fn gradient_into(&self, x: &[Complex64], row: &mut [Complex64]) {
        for (v, d) in self.derivatives.iter().enumerate() {
            row[v] = eval_terms(d, x).0;
        }
    }
}

/// A square or overdetermined system of [`CPoly`] in `nvars` unknowns.
#[derive(Debug, Clone)]
pub(crate) struct CSystem {
    pub polys: Vec<CPoly>,
    pub nvars: usize,
}

impl CSystem {
    pub(crate) fn new(polys: &[SparsePoly<BigRational>], nvars: usize) -> Self {
        CSystem { polys: polys.iter().map(CPoly::from_exact).collect(), nvars }
    }

    pub(crate) fn eval(&self, x: &[Complex64]) -> DVector<Complex64> {
        DVector::from_iterator(self.polys.len(), self.polys.iter().map(|p| p.eval(x)))
    }

    pub(crate) fn jacobian(&self, x: &[Complex64]) -> DMatrix<Complex64> {
        let mut j = DMatrix::zeros(self.polys.len(), self.nvars);
        let mut row = vec![Complex64::new(0.0, 0.0); self.nvars];
        for (i, p) in self.polys.iter().enumerate() {
            p.gradient_into(x, &mut row);
            for (k, v) in row.iter().enumerate() {
                j[(i, k)] = *v;
            }
        }
        j
    }
}

/// Exact Gaussian rational of a finite complex float.
pub(crate) fn to_exact(z: Complex64) -> Option<Complex<BigRational>> {
    Some(Complex::new(BigRational::from_float(z.re)?, BigRational::from_float(z.im)?))
}

pub(crate) fn to_float(z: &Complex<BigRational>) -> Complex64 {
    Complex64::new(to_f64(&z.re), to_f64(&z.im))
}

/// Polynomials evaluated exactly at the Gaussian rational nearest to `x`, then rounded.
pub(crate) struct ExactSystem {
    polys: Vec<SparsePoly<Complex<BigRational>>>,
}

impl ExactSystem {
    pub(crate) fn new(polys: &[SparsePoly<BigRational>]) -> Self {
        ExactSystem { polys: polys.iter().map(|p| p.map_coefficients(|c| Complex::new(c.clone(), BigRational::from_integer(0.into())))).collect() }
    }

    pub(crate) fn eval(&self, x: &[Complex64]) -> Option<DVector<Complex64>> {
        let point: Vec<Complex<BigRational>> = x.iter().map(|&v| to_exact(v)).collect::<Option<_>>()?;
        Some(DVector::from_iterator(self.polys.len(), self.polys.iter().map(|p| to_float(&p.evaluate(&point)))))
    }
}

pub(crate) fn max_norm(x: &[Complex64]) -> f64 {
    x.iter().map(|v| v.norm()).fold(0.0, f64::max)
}

/// Solves a square complex system, `None` when singular.
pub(crate) fn lu_solve(a: DMatrix<Complex64>, b: &DVector<Complex64>) -> Option<DVector<Complex64>> {
    let x = a.lu().solve(b)?;
    x.iter().all(|v| v.re.is_finite() && v.im.is_finite()).then_some(x)
}

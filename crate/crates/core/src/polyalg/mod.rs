//! Polynomial arithmetic over exact rationals and complex floats.
//!
//! * [`BinaryForm`]: dense homogeneous forms in `(s, t)`.
//! * [`SparsePoly`]: sparse multivariate polynomials over a named [`Registry`],
//!   generic over the coefficient field ([`BigRational`] for construction and
//!   certification, [`Complex64`](num_complex::Complex64) for tracking). Conversion
//!   between the two is always explicit via [`SparsePoly::map_coefficients`].
//! * [`UniPoly`]: dense exact univariate polynomials (gcd, square-free part, roots).
//! * [`det`]: exact determinants over any [`Ring`].
//! * [`pluecker_extract`]: quantum Pluecker coordinates of a matrix of forms.

mod form;
mod pluecker;
mod ring;
mod sparse;
mod text;
mod univariate;

pub use form::BinaryForm;
pub use num_rational::BigRational;
pub use pluecker::{pluecker_extract, PlueckerVector};
pub use ring::{det, rank_of, Coefficient, Ring};
pub use sparse::{Monomial, Registry, SparsePoly};
pub use text::{parse_poly, render_poly, render_rational};
pub use univariate::UniPoly;

use num_bigint::BigInt;

/// Shorthand for an integer-valued rational.
pub fn rat(n: i64) -> BigRational {
    BigRational::from_integer(BigInt::from(n))
}

/// Shorthand for `num/den`.
pub fn frac(num: i64, den: i64) -> BigRational {
    BigRational::new(BigInt::from(num), BigInt::from(den))
}

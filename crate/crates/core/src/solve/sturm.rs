use num_bigint::BigInt;
use num_integer::Integer;
use num_rational::BigRational;
use num_traits::{One, Signed, Zero};

use crate::error::{Error, Result};
use crate::polyalg::UniPoly;

/// Divides by a positive rational so the coefficients are coprime integers,
/// keeping every sign.
fn positive_content_free(p: &UniPoly) -> UniPoly {
    if p.is_zero() {
        return p.clone();
    }
    let lcm = p.coeffs().iter().fold(BigInt::one(), |acc, c| acc.lcm(c.denom()));
    let ints: Vec<BigInt> = p.coeffs().iter().map(|c| (c * BigRational::from_integer(lcm.clone())).to_integer()).collect();
    let content = ints.iter().fold(BigInt::zero(), |acc, c| acc.gcd(c)).abs();
    UniPoly::new(ints.into_iter().map(|c| BigRational::from_integer(c / &content)).collect())
}

/// The Sturm chain `p, p', -rem(p, p'), ...` of the square-free part of `p`.
pub fn sturm_chain(p: &UniPoly) -> Result<Vec<UniPoly>> {
    if p.is_zero() {
        return Err(Error::InvalidInput("the zero polynomial has no Sturm chain".into()));
    }
    let f = positive_content_free(&p.square_free());
    let mut chain = vec![f.clone(), positive_content_free(&f.derivative())];
    while !chain.last().unwrap().is_zero() {
        let n = chain.len();
        let (_, r) = chain[n - 2].div_rem(&chain[n - 1]);
        chain.push(positive_content_free(&r.scale(&-BigRational::one())));
    }
    chain.pop();
    Ok(chain)
}

fn variations(signs: impl Iterator<Item = i8>) -> usize {
    let nonzero: Vec<i8> = signs.filter(|&s| s != 0).collect();
    nonzero.windows(2).filter(|w| w[0] != w[1]).count()
}

fn sign(x: &BigRational) -> i8 {
    if x.is_positive() {
        1
    } else if x.is_negative() {
        -1
    } else {
        0
    }
}

fn sign_at_infinity(p: &UniPoly, negative: bool) -> i8 {
    let lead = sign(p.lead().expect("chain members are nonzero"));
    if negative && p.degree().unwrap_or(0) % 2 == 1 {
        -lead
    } else {
        lead
    }
}

/// Number of distinct real roots, on the whole line or in the half-open
/// interval `(a, b]`.
pub fn sturm_real_roots(p: &UniPoly, interval: Option<(&BigRational, &BigRational)>) -> Result<usize> {
    let chain = sturm_chain(p)?;
    let (low, high) = match interval {
        None => (
            variations(chain.iter().map(|q| sign_at_infinity(q, true))),
            variations(chain.iter().map(|q| sign_at_infinity(q, false))),
        ),
        Some((a, b)) => {
            if a > b {
                return Err(Error::InvalidInput(format!("empty interval ({a}, {b}]")));
            }
            (
                variations(chain.iter().map(|q| sign(&q.eval(a)))),
                variations(chain.iter().map(|q| sign(&q.eval(b)))),
            )
        }
    };
    Ok(low - high)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::polyalg::{frac, rat};
    use proptest::prelude::*;

    #[test]
    fn small_cases() {
        assert_eq!(sturm_real_roots(&UniPoly::from_integers(&[1, 0, 1]), None).unwrap(), 0);
        assert_eq!(sturm_real_roots(&UniPoly::from_integers(&[-1, 0, 1]), None).unwrap(), 2);
        assert_eq!(sturm_real_roots(&UniPoly::from_integers(&[0, -1, 0, 1]), None).unwrap(), 3);
        assert!(sturm_real_roots(&UniPoly::zero(), None).is_err());
        // (x - 1)^2 (x + 2) has two distinct real roots
        assert_eq!(sturm_real_roots(&UniPoly::from_integers(&[2, -3, 0, 1]), None).unwrap(), 2);
        assert_eq!(sturm_real_roots(&UniPoly::from_integers(&[5]), None).unwrap(), 0);
    }

    #[test]
    fn intervals() {
        let p = UniPoly::from_integers(&[0, -1, 0, 1]);
        assert_eq!(sturm_real_roots(&p, Some((&frac(-1, 2), &rat(2)))).unwrap(), 2);
        assert_eq!(sturm_real_roots(&p, Some((&rat(-1), &rat(1)))).unwrap(), 2);
        assert_eq!(sturm_real_roots(&p, Some((&rat(2), &rat(3)))).unwrap(), 0);
    }

    proptest! {
        /// Products of distinct linear factors and irreducible quadratics.
        #[test]
        fn counts_constructed_roots(roots in prop::collection::btree_set(-20i64..20, 0..6), quads in prop::collection::vec(1i64..9, 0..3)) {
            let mut p = UniPoly::from_integers(&[1]);
            for r in &roots {
                p = p.mul(&UniPoly::from_integers(&[-r, 1]));
            }
            for c in &quads {
                p = p.mul(&UniPoly::from_integers(&[*c, 0, 1]));
            }
            prop_assert_eq!(sturm_real_roots(&p, None).unwrap(), roots.len());
        }
    }
}

use crate::error::{Error, Result};
use crate::polyalg::{PlueckerVector, Ring};
use crate::qposet::ProblemShape;

/// `pi(A, B, x)`: `z_{alpha^(a)} = A x_{alpha^(a)} - B x_{alpha^(a-1)}`, with `x`
/// indexed by `C_{q-1}` and out-of-range entries read as zero.
pub fn pi_map<T: Ring>(shape: &ProblemShape, a: &T, b: &T, x: &PlueckerVector<T>) -> Result<PlueckerVector<T>> {
    let lower = shape
        .lower_degree()
        .ok_or_else(|| Error::InvalidInput("the boundary map needs q >= 1".into()))?;
    if x.shape() != &lower {
        return Err(Error::InvalidInput(format!("argument lives on {}, expected {lower}", x.shape())));
    }
    if a.vanishes() && b.vanishes() {
        return Err(Error::InvalidInput("(A, B) = (0, 0)".into()));
    }
    let width = shape.num_coordinates() / (shape.q() + 1);
    let coords = x.coords();
    let zero = a.zero_like();
    let out = (0..shape.num_coordinates())
        .map(|i| {
            let level = i / width;
            let here = if level < shape.q() { a.times(&coords[i]) } else { zero.clone() };
            let below = if level > 0 { b.times(&coords[i - width]) } else { zero.clone() };
            here.minus(&below)
        })
        .collect();
    PlueckerVector::new(*shape, out)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::geometry::{lambda_form_symbolic, pluecker_registry};
    use crate::polyalg::{frac, rat, BigRational, SparsePoly};
    use num_traits::Zero;

    #[test]
    fn extreme_choices_of_a_and_b() {
        let shape = ProblemShape::new(2, 2, 1).unwrap();
        let x = PlueckerVector::new(shape.lower_degree().unwrap(), (1..=6).map(rat).collect()).unwrap();
        let z = pi_map(&shape, &rat(1), &rat(0), &x).unwrap();
        assert_eq!(&z.coords()[..6], x.coords());
        assert!(z.coords()[6..].iter().all(Zero::is_zero));
        let z = pi_map(&shape, &rat(0), &rat(1), &x).unwrap();
        assert!(z.coords()[..6].iter().all(Zero::is_zero));
        assert_eq!(z.coords()[6..].to_vec(), x.coords().iter().map(|v| -v).collect::<Vec<_>>());
        assert!(pi_map(&shape, &rat(0), &rat(0), &x).is_err());
        assert!(pi_map(&shape.with_degree(0), &rat(1), &rat(1), &x).is_err());
        assert!(pi_map(&shape.with_degree(2), &rat(1), &frac(1, 2), &x).is_err());
    }

    /// `Lambda(s,t) o pi = (A t^n - B s^n) Lambda'(s,t)` as polynomials in `x, A, B, s, t`.
    #[test]
    fn pullback_of_the_pencil() {
        for q in [1, 2] {
            let shape = ProblemShape::new(2, 2, q).unwrap();
            let lower = shape.lower_degree().unwrap();
            let (k, kl) = (shape.num_coordinates(), lower.num_coordinates());
            let n = shape.n() as u32;
            let names: Vec<String> =
                pluecker_registry(&lower, &["A", "B", "s", "t"]).names().iter().map(|v| v.replace('z', "x")).collect();
            let reg = crate::polyalg::Registry::new(names);
            let var = |i| SparsePoly::<BigRational>::var(&reg, i);
            let (av, bv, sv, tv) = (var(kl), var(kl + 1), var(kl + 2), var(kl + 3));
            let x = PlueckerVector::new(lower, (0..kl).map(var).collect()).unwrap();
            let z = pi_map(&shape, &av, &bv, &x).unwrap();

            let lam = lambda_form_symbolic(&shape).unwrap();
            let mut images: Vec<SparsePoly<BigRational>> = z.into_coords();
            images.push(sv.clone());
            images.push(tv.clone());
            assert_eq!(images.len(), k + 2);
            let lhs = lam.substitute(&images).unwrap();

            let lam_lower = lambda_form_symbolic(&lower).unwrap();
            let mut lower_images: Vec<SparsePoly<BigRational>> = (0..kl).map(var).collect();
            lower_images.push(sv.clone());
            lower_images.push(tv.clone());
            let factor = &(&av * &tv.pow(n)) - &(&bv * &sv.pow(n));
            let rhs = &factor * &lam_lower.substitute(&lower_images).unwrap();
            assert_eq!(lhs, rhs, "q = {q}");
        }
    }
}

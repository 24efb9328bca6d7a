use itertools::Itertools;
use num_rational::BigRational;
use num_traits::{One, Zero};

use super::osculating::l_minor;
use super::pluecker_registry;
use crate::error::{Error, Result};
use crate::polyalg::{det, rank_of, Monomial, SparsePoly};
use crate::qposet::ProblemShape;

/// Where a linear section came from.
#[derive(Debug, Clone, PartialEq)]
pub enum SectionSource {
    /// `Lambda(1, t)`: the curve point `M(1, t^n)` meets the osculating plane `L(1, t)`.
    Osculating { t: BigRational },
    /// `M(s, t)` meets an explicit plane.
    Plane { s: BigRational, t: BigRational },
    /// Read back from text.
    Text,
}

/// A hyperplane section of the Pluecker space: a nonzero linear form in the `z`.
#[derive(Debug, Clone, PartialEq)]
pub struct LinearSection {
    pub source: SectionSource,
    pub form: SparsePoly<BigRational>,
}

fn pow(x: &BigRational, k: usize) -> BigRational {
    num_traits::pow(x.clone(), k)
}

/// `Lambda(s,t) = sum z_{alpha^(a)} l_alpha s^|alpha^(a)| t^(N-|alpha^(a)|)`.
pub fn lambda_form(shape: &ProblemShape, s: &BigRational, t: &BigRational) -> Result<LinearSection> {
    if s.is_zero() && t.is_zero() {
        return Err(Error::InvalidInput("(s,t) = (0,0) is not a point of P^1".into()));
    }
    let registry = pluecker_registry(shape, &[]);
    let big_n = shape.dimension();
    let arity = registry.len();
    let mut terms = Vec::new();
    let ls = l_values(shape)?;
    for (i, x) in shape.indices().iter().enumerate() {
        let r = x.level * shape.n() + x.alpha_weight();
        let l = &ls[i % ls.len()];
        terms.push((Monomial::var(arity, i), l * pow(s, r) * pow(t, big_n - r)));
    }
    let source = if s.is_one() {
        SectionSource::Osculating { t: t.clone() }
    } else {
        SectionSource::Plane { s: s.clone(), t: t.clone() }
    };
    Ok(LinearSection { source, form: SparsePoly::from_terms(&registry, terms) })
}

fn l_values(shape: &ProblemShape) -> Result<Vec<BigRational>> {
    (1..=shape.n())
        .combinations(shape.p())
        .map(|alpha| l_minor(shape.m(), shape.n(), &alpha))
        .collect()
}

/// `Lambda` as a polynomial in the `z` and two trailing variables `s`, `t`.
pub fn lambda_form_symbolic(shape: &ProblemShape) -> Result<SparsePoly<BigRational>> {
    let registry = pluecker_registry(shape, &["s", "t"]);
    let arity = registry.len();
    let (si, ti) = (arity - 2, arity - 1);
    let big_n = shape.dimension() as u32;
    let ls = l_values(shape)?;
    let terms = shape.indices().iter().enumerate().map(|(i, x)| {
        let r = (x.level * shape.n() + x.alpha_weight()) as u32;
        let mut e = vec![0u32; arity];
        e[i] = 1;
        e[si] = r;
        e[ti] = big_n - r;
        (Monomial::from_exponents(e), ls[i % ls.len()].clone())
    }).collect::<Vec<_>>();
    Ok(SparsePoly::from_terms(&registry, terms))
}

/// The linear form in `z` whose vanishing is `det [L; M(s,t)] = 0`, expanded
/// along the rows of `M`: the coefficient of `z_{alpha^(a)}` is
/// `(-1)^(pm + |alpha|) det(L restricted to the complement of alpha) s^a t^(q-a)`.
pub fn section_from_plane(
    shape: &ProblemShape,
    plane: &[Vec<BigRational>],
    s: &BigRational,
    t: &BigRational,
) -> Result<LinearSection> {
    let (m, n, q) = (shape.m(), shape.n(), shape.q());
    if plane.len() != m || plane.iter().any(|r| r.len() != n) {
        return Err(Error::InvalidInput(format!("plane must be a {m}x{n} matrix")));
    }
    if s.is_zero() && t.is_zero() {
        return Err(Error::InvalidInput("(s,t) = (0,0) is not a point of P^1".into()));
    }
    let rank = rank_of(plane);
    if rank < m {
        return Err(Error::DegeneratePlane { rank, expected: m });
    }
    let registry = pluecker_registry(shape, &[]);
    let arity = registry.len();
    let subsets: Vec<Vec<usize>> = (1..=n).combinations(shape.p()).collect();
    let complementary: Vec<BigRational> = subsets
        .iter()
        .map(|alpha| {
            let cols: Vec<usize> = (1..=n).filter(|c| !alpha.contains(c)).collect();
            let sub: Vec<Vec<BigRational>> = plane.iter().map(|r| cols.iter().map(|&c| r[c - 1].clone()).collect()).collect();
            let minor = det(&sub)?;
            let weight: usize = alpha.iter().enumerate().map(|(i, &a)| a - (i + 1)).sum();
            Ok(if (shape.p() * m + weight).is_multiple_of(2) { minor } else { -minor })
        })
        .collect::<Result<_>>()?;
    let mut terms = Vec::new();
    for (i, x) in shape.indices().iter().enumerate() {
        let c = &complementary[i % subsets.len()] * pow(s, x.level) * pow(t, q - x.level);
        terms.push((Monomial::var(arity, i), c));
    }
    Ok(LinearSection {
        source: SectionSource::Plane { s: s.clone(), t: t.clone() },
        form: SparsePoly::from_terms(&registry, terms),
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::polyalg::{frac, pluecker_extract, rat, BigRational, BinaryForm};
    use crate::geometry::osculating_matrix;
    use num_traits::Zero;
    use rand::{Rng, SeedableRng};
    use rand_chacha::ChaCha8Rng;

    fn coefficients(section: &LinearSection) -> Vec<BigRational> {
        section.form.linear_parts().unwrap().0
    }

    #[test]
    fn flagship_pencil_at_one_t() {
        let shape = ProblemShape::new(2, 2, 1).unwrap();
        // Lambda(1, 2): coefficients l_alpha * 2^(8 - rank)
        let c = coefficients(&lambda_form(&shape, &rat(1), &rat(2)).unwrap());
        let expected = [256, -256, 64, 192, -64, 16, 16, -16, 4, 12, -4, 1];
        assert_eq!(c, expected.iter().map(|&v| rat(v)).collect::<Vec<_>>());
        let at_one = coefficients(&lambda_form(&shape, &rat(1), &rat(1)).unwrap());
        assert_eq!(at_one[..6].to_vec(), vec![rat(1), rat(-2), rat(1), rat(3), rat(-2), rat(1)]);
        assert!(lambda_form(&shape, &rat(0), &rat(0)).is_err());
    }

    #[test]
    fn symbolic_pencil_is_homogeneous_of_degree_n() {
        let shape = ProblemShape::new(3, 2, 1).unwrap();
        let lam = lambda_form_symbolic(&shape).unwrap();
        let k = lam.registry().len();
        for (m, _) in lam.terms() {
            assert_eq!(m.exponents()[k - 2] + m.exponents()[k - 1], shape.dimension() as u32);
        }
    }

    #[test]
    fn coordinate_plane_gives_single_term() {
        let shape = ProblemShape::new(2, 2, 0).unwrap();
        let plane = vec![vec![rat(0), rat(0), rat(1), rat(0)], vec![rat(0), rat(0), rat(0), rat(1)]];
        let c = coefficients(&section_from_plane(&shape, &plane, &rat(1), &rat(1)).unwrap());
        assert!(!c[0].is_zero());
        assert!(c[1..].iter().all(Zero::is_zero));
    }

    #[test]
    fn degenerate_plane_rejected() {
        let shape = ProblemShape::new(2, 2, 0).unwrap();
        let plane = vec![vec![rat(1), rat(2), rat(3), rat(4)], vec![rat(2), rat(4), rat(6), rat(8)]];
        assert!(matches!(
            section_from_plane(&shape, &plane, &rat(1), &rat(1)),
            Err(Error::DegeneratePlane { rank: 1, expected: 2 })
        ));
    }

    fn random_form(rng: &mut ChaCha8Rng, degree: usize) -> BinaryForm {
        BinaryForm::new((0..=degree).map(|_| rat(rng.gen_range(-4..=4))).collect())
    }

    /// The form evaluated at the Pluecker vector of a random matrix of forms
    /// equals the block determinant computed directly.
    #[test]
    fn agrees_with_block_determinant() {
        let mut rng = ChaCha8Rng::seed_from_u64(7);
        for (m, p, q) in [(2, 2, 0), (2, 2, 1), (3, 2, 1), (2, 3, 1)] {
            let shape = ProblemShape::new(m, p, q).unwrap();
            let n = shape.n();
            for _ in 0..5 {
                let plane: Vec<Vec<BigRational>> =
                    (0..m).map(|_| (0..n).map(|_| rat(rng.gen_range(-5..=5))).collect()).collect();
                if rank_of(&plane) < m {
                    continue;
                }
                let (s, t) = (frac(rng.gen_range(1..5), 3), frac(rng.gen_range(-5..5), 2));
                let section = section_from_plane(&shape, &plane, &s, &t).unwrap();
                let mut degrees = vec![0; p];
                degrees[0] = q;
                let forms: Vec<Vec<BinaryForm>> =
                    degrees.iter().map(|&d| (0..n).map(|_| random_form(&mut rng, d)).collect()).collect();
                let Ok(z) = pluecker_extract(&shape, &forms) else { continue };
                let lhs = section.form.evaluate(z.coords());
                let mut block: Vec<Vec<BigRational>> = plane.clone();
                for row in &forms {
                    block.push(row.iter().map(|f| f.evaluate(&s, &t)).collect());
                }
                assert_eq!(lhs, det(&block).unwrap(), "shape {shape}");
            }
        }
    }

    #[test]
    fn osculating_section_is_proportional_to_pencil() {
        let shape = ProblemShape::new(2, 2, 1).unwrap();
        let plane = osculating_matrix(2, 4).unwrap();
        for u in [rat(2), frac(1, 3), rat(-5)] {
            let l = plane.at(&rat(1), &u);
            let from_plane = coefficients(&section_from_plane(&shape, &l, &rat(1), &num_traits::pow(u.clone(), 4)).unwrap());
            let pencil = coefficients(&lambda_form(&shape, &rat(1), &u).unwrap());
            let ratio = &from_plane[0] / &pencil[0];
            for (a, b) in from_plane.iter().zip(&pencil) {
                assert_eq!(a, &(b * &ratio));
            }
        }
    }
}

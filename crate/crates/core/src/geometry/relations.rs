use std::collections::HashMap;

use itertools::Itertools;
use num_rational::BigRational;
use num_traits::{One, Zero};

use super::pluecker_registry;
use crate::polyalg::{Monomial, SparsePoly};
use crate::qposet::ProblemShape;

/// A term `sign * p_A * p_B` of a Grassmannian relation, `A`, `B` subset positions.
type Syzygy = Vec<(i64, usize, usize)>;

/// The van der Waerden syzygies of `G(p,n)`: for a `(p-1)`-subset `I` and a
/// `(p+1)`-subset `J`, `sum_k (-1)^k p_{I j_k} p_{J - j_k}`, with `p` antisymmetric.
fn syzygies(p: usize, n: usize) -> Vec<Syzygy> {
    let position: HashMap<Vec<usize>, usize> =
        (1..=n).combinations(p).enumerate().map(|(i, a)| (a, i)).collect();
    let mut out = Vec::new();
    for big_i in (1..=n).combinations(p - 1) {
        for big_j in (1..=n).combinations(p + 1) {
            let mut terms: HashMap<(usize, usize), i64> = HashMap::new();
            for (k, &j) in big_j.iter().enumerate() {
                if big_i.contains(&j) {
                    continue;
                }
                let above = big_i.iter().filter(|&&i| i > j).count();
                let mut left = big_i.clone();
                left.push(j);
                left.sort_unstable();
                let right: Vec<usize> = big_j.iter().copied().filter(|&x| x != j).collect();
                let sign = if (k + above) % 2 == 0 { 1 } else { -1 };
                let (a, b) = (position[&left], position[&right]);
                *terms.entry((a.min(b), a.max(b))).or_insert(0) += sign;
            }
            let syzygy: Syzygy =
                terms.into_iter().filter(|&(_, c)| c != 0).map(|((a, b), c)| (c, a, b)).sorted().collect();
            if !syzygy.is_empty() {
                out.push(syzygy);
            }
        }
    }
    out
}

/// Quadrics cutting out the space of degree-`q` maps: each syzygy with every
/// `p_alpha` replaced by `f_alpha(s,t) = sum_a z_{alpha^(a)} s^a t^(q-a)`,
/// one quadric per coefficient of `s^e t^(2q-e)`. Each quadric is scaled to a
/// unit leading coefficient; duplicates are dropped, first occurrence kept.
pub fn quantum_pluecker_relations(shape: &ProblemShape) -> Vec<SparsePoly<BigRational>> {
    let (p, n, q) = (shape.p(), shape.n(), shape.q());
    let registry = pluecker_registry(shape, &[]);
    let arity = registry.len();
    let width = num_integer::binomial(n, p);
    let mut out: Vec<SparsePoly<BigRational>> = Vec::new();
    for e in 0..=2 * q {
        for syzygy in syzygies(p, n) {
            let mut terms: HashMap<Monomial, BigRational> = HashMap::new();
            for &(sign, a, b) in &syzygy {
                for la in e.saturating_sub(q)..=e.min(q) {
                    let lb = e - la;
                    let mut x = vec![0u32; arity];
                    x[la * width + a] += 1;
                    x[lb * width + b] += 1;
                    *terms.entry(Monomial::from_exponents(x)).or_insert_with(BigRational::zero) +=
                        BigRational::from_integer(sign.into());
                }
            }
            let poly = SparsePoly::from_terms(&registry, terms);
            let Some((_, lead)) = poly.leading() else { continue };
            let poly = poly.scale(&(BigRational::one() / lead));
            if !out.contains(&poly) {
                out.push(poly);
            }
        }
    }
    out
}

/// The classical quadratic Pluecker relations: [`quantum_pluecker_relations`] at `q = 0`.
pub fn grassmann_relations(shape: &ProblemShape) -> Vec<SparsePoly<BigRational>> {
    quantum_pluecker_relations(&shape.with_degree(0))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::polyalg::{parse_poly, pluecker_extract, rat, render_poly, BinaryForm};
    use rand::{Rng, SeedableRng};
    use rand_chacha::ChaCha8Rng;

    #[test]
    fn classical_relation_of_g24() {
        let shape = ProblemShape::new(2, 2, 0).unwrap();
        let rels = grassmann_relations(&shape);
        assert_eq!(rels.len(), 1);
        let expected = parse_poly("z14_0*z23_0 - z13_0*z24_0 + z12_0*z34_0", rels[0].registry()).unwrap();
        assert_eq!(rels[0], expected);
    }

    #[test]
    fn flagship_relations() {
        let shape = ProblemShape::new(2, 2, 1).unwrap();
        let rels = quantum_pluecker_relations(&shape);
        let rendered: Vec<String> = rels.iter().map(render_poly).collect();
        assert_eq!(
            rendered,
            [
                "z12_0*z34_0 - z13_0*z24_0 + z14_0*z23_0",
                "z12_0*z34_1 - z13_0*z24_1 + z14_0*z23_1 + z23_0*z14_1 - z24_0*z13_1 + z34_0*z12_1",
                "z12_1*z34_1 - z13_1*z24_1 + z14_1*z23_1",
            ]
        );
    }

    #[test]
    fn relations_vanish_on_extracted_vectors() {
        let mut rng = ChaCha8Rng::seed_from_u64(3);
        for (m, p, q) in [(2, 2, 1), (3, 2, 1), (2, 3, 1), (2, 2, 2)] {
            let shape = ProblemShape::new(m, p, q).unwrap();
            let rels = quantum_pluecker_relations(&shape);
            let mut checked = 0;
            while checked < 5 {
                let mut degrees = vec![0; p];
                degrees[rng.gen_range(0..p)] = q;
                let matrix: Vec<Vec<BinaryForm>> = degrees
                    .iter()
                    .map(|&d| {
                        (0..shape.n())
                            .map(|_| BinaryForm::new((0..=d).map(|_| rat(rng.gen_range(-3..=3))).collect()))
                            .collect()
                    })
                    .collect();
                let Ok(z) = pluecker_extract(&shape, &matrix) else { continue };
                for r in &rels {
                    assert!(r.evaluate(z.coords()).is_zero());
                }
                checked += 1;
            }
        }
    }

    #[test]
    fn count_grows_with_degree() {
        let shape = ProblemShape::new(3, 2, 0).unwrap();
        // G(2,5) has C(5,4) = 5 independent three-term relations.
        assert_eq!(grassmann_relations(&shape).len(), 5);
        assert_eq!(quantum_pluecker_relations(&shape.with_degree(1)).len(), 15);
    }
}

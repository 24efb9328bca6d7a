use itertools::Itertools;
use num_complex::Complex64;
use num_rational::BigRational;
use num_traits::Zero;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use serde::{Deserialize, Serialize};

use super::sturm::sturm_real_roots;
use super::types::Solution;
use crate::error::{Error, Result};
use crate::geometry::PolySystem;
use crate::polyalg::{det, parse_poly, render_rational, Registry, SparsePoly, UniPoly};
use crate::qposet::chain_count;
use num_traits::ToPrimitive;

/// An exact univariate polynomial vanishing on the projections of the solutions.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct Certificate {
    /// The projection `w = sum_j c_j y_j` in the balanced coordinates.
    pub projection: Vec<i64>,
    pub variable: String,
    /// Coefficients, lowest degree first, as exact integer strings.
    pub eliminant: Vec<String>,
    pub degree: usize,
    pub expected_degree: usize,
    pub real_roots: usize,
    /// Number of resultant routes whose gcd gave the eliminant.
    pub routes: usize,
    /// Projections tried before this one.
    pub retries: usize,
}

impl Certificate {
    pub fn polynomial(&self) -> UniPoly {
        let reg = Registry::new(Vec::<String>::new());
        UniPoly::new(
            self.eliminant
                .iter()
                .map(|c| parse_poly(c, &reg).map(|p| p.constant_term()).unwrap_or_else(|_| BigRational::zero()))
                .collect(),
        )
    }

    /// Whether the degree reached its target.
    pub fn complete(&self) -> bool {
        self.degree == self.expected_degree
    }

    /// How many solutions project onto a root of the eliminant: Newton's
    /// method, with the eliminant evaluated exactly at each iterate, converges
    /// from the projection to a root within relative distance `tol`.
    pub fn matched_solutions(&self, solutions: &[Solution], tol: f64) -> usize {
        let p = self.polynomial();
        let dp = p.derivative();
        solutions
            .iter()
            .filter(|s| {
                let w: Complex64 = s.coordinates.iter().zip(&self.projection).map(|(y, &c)| y * c as f64).sum();
                polish_root(&p, &dp, w).is_some_and(|r| (r - w).norm() <= tol * w.norm().max(1.0))
            })
            .count()
    }
}

/// `p(z)` for a Gaussian rational `z = (re, im)`.
fn eval_exact(p: &UniPoly, re: &BigRational, im: &BigRational) -> (BigRational, BigRational) {
    let (mut a, mut b) = (BigRational::zero(), BigRational::zero());
    for c in p.coeffs().iter().rev() {
        let na = &a * re - &b * im + c;
        b = &a * im + &b * re;
        a = na;
    }
    (a, b)
}

fn polish_root(p: &UniPoly, dp: &UniPoly, start: Complex64) -> Option<Complex64> {
    let mut z = start;
    for _ in 0..60 {
        let re = BigRational::from_float(z.re)?;
        let im = BigRational::from_float(z.im)?;
        let (fa, fb) = eval_exact(p, &re, &im);
        let (da, db) = eval_exact(dp, &re, &im);
        let den = &da * &da + &db * &db;
        if den.is_zero() {
            return None;
        }
        // f / f' = f * conj(f') / |f'|^2
        let sa = (&fa * &da + &fb * &db) / &den;
        let sb = (&fb * &da - &fa * &db) / &den;
        let step = Complex64::new(sa.to_f64()?, sb.to_f64()?);
        z -= step;
        if step.norm() <= 4.0 * f64::EPSILON * z.norm().max(f64::MIN_POSITIVE) {
            return Some(z);
        }
    }
    None
}

#[derive(Debug, Clone)]
pub struct CertifyOptions {
    /// Target degree; defaults to the degree of the problem.
    pub expected: Option<usize>,
    pub seed: u64,
    pub max_retries: usize,
    /// Random-combination routes tried per projection after the fixed ones.
    pub extra_routes: usize,
}

impl Default for CertifyOptions {
    fn default() -> Self {
        CertifyOptions { expected: None, seed: 1, max_retries: 6, extra_routes: 6 }
    }
}

/// Sylvester resultant with respect to `var`.
pub fn resultant(f: &SparsePoly<BigRational>, g: &SparsePoly<BigRational>, var: usize) -> Result<SparsePoly<BigRational>> {
    if f.is_zero() || g.is_zero() {
        return Ok(SparsePoly::zero(f.registry()));
    }
    let a = f.coefficients_in(var);
    let b = g.coefficients_in(var);
    let (m, n) = (a.len() - 1, b.len() - 1);
    if m == 0 {
        return Ok(f.pow(n as u32));
    }
    if n == 0 {
        return Ok(g.pow(m as u32));
    }
    let zero = SparsePoly::zero(f.registry());
    let size = m + n;
    let mut rows = Vec::with_capacity(size);
    for i in 0..n {
        let mut row = vec![zero.clone(); size];
        for (k, c) in a.iter().rev().enumerate() {
            row[i + k] = c.clone();
        }
        rows.push(row);
    }
    for i in 0..m {
        let mut row = vec![zero.clone(); size];
        for (k, c) in b.iter().rev().enumerate() {
            row[i + k] = c.clone();
        }
        rows.push(row);
    }
    det(&rows)
}

fn combine(polys: &[SparsePoly<BigRational>], count: usize, rng: &mut ChaCha8Rng) -> Vec<SparsePoly<BigRational>> {
    (0..count)
        .map(|_| {
            polys.iter().fold(SparsePoly::zero(polys[0].registry()), |acc, p| {
                &acc + &p.scale(&BigRational::from_integer(rng.gen_range(-7i64..=7).into()))
            })
        })
        .collect()
}

/// Eliminates all variables but the last through one resultant route.
fn route(polys: &[SparsePoly<BigRational>], order: &[usize]) -> Result<SparsePoly<BigRational>> {
    let mut current = polys.to_vec();
    for &v in order {
        if current.len() < 2 {
            return Ok(SparsePoly::zero(polys[0].registry()));
        }
        let first = current[0].clone();
        current = current[1..].iter().map(|g| resultant(&first, g, v)).collect::<Result<_>>()?;
    }
    Ok(current.into_iter().next().unwrap_or_else(|| SparsePoly::zero(polys[0].registry())))
}

/// The gcd of eliminants over resultant routes, with projection variable last.
fn eliminate(
    polys: &[SparsePoly<BigRational>],
    expected: usize,
    extra: usize,
    rng: &mut ChaCha8Rng,
) -> Result<(UniPoly, usize)> {
    let k = polys[0].registry().len();
    let last = k - 1;
    let orders: Vec<Vec<usize>> = (0..last).permutations(last).collect();
    let mut candidates: Vec<Vec<SparsePoly<BigRational>>> = Vec::new();
    for subset in (0..polys.len()).combinations(k.min(polys.len())) {
        for start in 0..subset.len() {
            let mut chosen: Vec<SparsePoly<BigRational>> = vec![polys[subset[start]].clone()];
            chosen.extend(subset.iter().filter(|&&i| i != subset[start]).map(|&i| polys[i].clone()));
            candidates.push(chosen);
        }
    }
    let mut g = UniPoly::zero();
    let mut routes = 0;
    let mut tried_extra = 0;
    let mut i = 0;
    loop {
        let system = if i < candidates.len() {
            candidates[i].clone()
        } else if tried_extra < extra {
            tried_extra += 1;
            combine(polys, k, rng)
        } else {
            break;
        };
        i += 1;
        for order in &orders {
            let r = route(&system, order)?;
            if r.is_zero() {
                continue;
            }
            let u = UniPoly::from_sparse(&r, last)?;
            g = if g.is_zero() { u.square_free() } else { g.gcd(&u).square_free() };
            routes += 1;
        }
        let degree = g.degree().unwrap_or(0);
        if routes >= 2 && !g.is_zero() && degree <= expected {
            break;
        }
    }
    Ok((g, routes))
}

/// Exact eliminant of a reduced system with at most three free variables in
/// the balanced coordinates, and its number of distinct real roots.
///
/// The first projection is the last free variable; whenever the square-free
/// eliminant falls short of the expected degree (a non-injective projection)
/// a random integral combination of the variables is tried instead.
pub fn certify_eliminant(system: &PolySystem, options: &CertifyOptions) -> Result<Certificate> {
    let red = system.reduction()?;
    let k = red.num_free();
    if k == 0 || k > 3 {
        return Err(Error::CertificationUnavailable(format!("{k} free variables (supported: 1 to 3)")));
    }
    let quadrics = red.scaled_quadrics();
    if quadrics.len() < k {
        return Err(Error::CertificationUnavailable("fewer equations than unknowns".into()));
    }
    let expected = match options.expected {
        Some(e) => e,
        None => {
            let target = system.bound.clone().unwrap_or_else(|| system.shape.top());
            chain_count(&system.shape, &target)?
                .to_usize()
                .ok_or_else(|| Error::CertificationUnavailable("degree too large".into()))?
        }
    };
    let mut names: Vec<String> = red.free_registry.names().to_vec();
    names[k - 1] = "w".into();
    let reg = Registry::new(names);
    let mut rng = ChaCha8Rng::seed_from_u64(options.seed);
    let mut best: Option<Certificate> = None;
    for attempt in 0..=options.max_retries {
        let mut projection = vec![0i64; k];
        projection[k - 1] = 1;
        if attempt > 0 {
            for c in projection.iter_mut().take(k - 1) {
                *c = rng.gen_range(-5..=5);
            }
        }
        // y_last = w - sum_{j < last} c_j y_j
        let images: Vec<SparsePoly<BigRational>> = (0..k)
            .map(|j| {
                if j + 1 < k {
                    SparsePoly::var(&reg, j)
                } else {
                    (0..k - 1).fold(SparsePoly::var(&reg, k - 1), |acc, i| {
                        &acc - &SparsePoly::var(&reg, i).scale(&BigRational::from_integer(projection[i].into()))
                    })
                }
            })
            .collect();
        let polys: Vec<SparsePoly<BigRational>> = quadrics
            .iter()
            .map(|q| {
                let moved = q.reembed(&reg, &(0..k).map(Some).collect::<Vec<_>>())?;
                moved.substitute(&images)
            })
            .collect::<Result<_>>()?;
        let (g, routes) = eliminate(&polys, expected, options.extra_routes, &mut rng)?;
        if g.is_zero() {
            continue;
        }
        let degree = g.degree().unwrap_or(0);
        let real_roots = sturm_real_roots(&g, None)?;
        let variable = projection
            .iter()
            .enumerate()
            .filter(|(_, &c)| c != 0)
            .map(|(j, &c)| {
                let name = red.free_registry.name(j);
                if c == 1 { name.to_string() } else { format!("{c}*{name}") }
            })
            .join(" + ");
        let cert = Certificate {
            projection: projection.clone(),
            variable,
            eliminant: g.coeffs().iter().map(render_rational).collect(),
            degree,
            expected_degree: expected,
            real_roots,
            routes,
            retries: attempt,
        };
        if degree == expected {
            return Ok(cert);
        }
        let closer = best.as_ref().is_none_or(|b| degree.abs_diff(expected) < b.degree.abs_diff(expected));
        if closer {
            best = Some(cert);
        }
    }
    best.ok_or_else(|| Error::CertificationUnavailable("every resultant route vanished identically".into()))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::polyalg::rat;

    #[test]
    fn resultant_of_lines_and_circles() {
        let reg = Registry::new(["x", "y"]);
        let f = parse_poly("x^2 + y^2 - 5", &reg).unwrap();
        let g = parse_poly("x - y + 1", &reg).unwrap();
        // eliminating x: (y - 1)^2 + y^2 - 5 = 2y^2 - 2y - 4
        let r = resultant(&f, &g, 0).unwrap();
        assert_eq!(UniPoly::from_sparse(&r, 1).unwrap().primitive(), UniPoly::from_integers(&[-2, -1, 1]));
        let c = parse_poly("3", &reg).unwrap();
        assert_eq!(resultant(&c, &g, 0).unwrap().constant_term(), rat(3));
    }

    #[test]
    fn univariate_quadric_certificate() {
        use crate::geometry::{build_system, SectionsSpec};
        use crate::qposet::ProblemShape;
        let shape = ProblemShape::new(2, 2, 0).unwrap();
        let spec = SectionsSpec::Osculating((1..=4).map(rat).collect());
        let sys = build_system(&shape, &spec, None).unwrap();
        let cert = certify_eliminant(&sys, &CertifyOptions::default()).unwrap();
        assert_eq!(cert.degree, 2);
        assert_eq!(cert.real_roots, 2);
        assert_eq!(cert.polynomial().degree(), Some(2));
    }
}

use std::f64::consts::TAU;
use std::time::Instant;

use nalgebra::DVector;
use num_complex::Complex64;
use num_rational::BigRational;
use num_traits::{One, Signed};
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use rayon::prelude::*;

use super::classify::{same_point, verify_solutions};
use super::eval::{lu_solve, max_norm, CSystem, ExactSystem};
use super::types::{PathStatus, Solution, SolveReport, TrackSettings};
use crate::error::{Error, Result};
use crate::geometry::PolySystem;
use crate::polyalg::SparsePoly;

/// `gamma (1 - tau) G + tau F` with `G_i = x_i^(d_i) - 1`.
struct Homotopy<'a> {
    target: &'a CSystem,
    exact: Option<&'a ExactSystem>,
    degrees: Vec<u32>,
    gamma: Complex64,
}

struct Endpoint {
    x: Vec<Complex64>,
    status: PathStatus,
}

impl Homotopy<'_> {
    fn start(&self, x: &[Complex64]) -> DVector<Complex64> {
        DVector::from_iterator(x.len(), x.iter().zip(&self.degrees).map(|(v, &d)| v.powu(d) - 1.0))
    }

    fn value(&self, x: &[Complex64], tau: f64) -> DVector<Complex64> {
        self.target.eval(x) * Complex64::new(tau, 0.0) + self.start(x) * (self.gamma * (1.0 - tau))
    }

    fn jacobian(&self, x: &[Complex64], tau: f64) -> nalgebra::DMatrix<Complex64> {
        let mut j = self.target.jacobian(x) * Complex64::new(tau, 0.0);
        let g = self.gamma * (1.0 - tau);
        for (i, (v, &d)) in x.iter().zip(&self.degrees).enumerate() {
            j[(i, i)] += g * (d as f64) * v.powu(d - 1);
        }
        j
    }

    /// `dx/dtau = -H_x^{-1} H_tau`.
    fn velocity(&self, x: &[Complex64], tau: f64) -> Option<Vec<Complex64>> {
        let h_tau = self.target.eval(x) - self.start(x) * self.gamma;
        let v = lu_solve(self.jacobian(x, tau), &(-h_tau))?;
        Some(v.iter().copied().collect())
    }

    fn newton_step(&self, x: &[Complex64], tau: f64) -> Option<Vec<Complex64>> {
        let dx = if tau >= 1.0 {
            lu_solve(self.target.jacobian(x), &(-self.target.eval(x)))?
        } else {
            lu_solve(self.jacobian(x, tau), &(-self.value(x, tau)))?
        };
        Some(dx.iter().copied().collect())
    }

    fn predict(&self, x: &[Complex64], tau: f64, h: f64) -> Option<Vec<Complex64>> {
        let axpy = |a: &[Complex64], k: &[Complex64], s: f64| -> Vec<Complex64> {
            a.iter().zip(k).map(|(u, v)| u + v * s).collect()
        };
        let k1 = self.velocity(x, tau)?;
        let k2 = self.velocity(&axpy(x, &k1, h / 2.0), tau + h / 2.0)?;
        let k3 = self.velocity(&axpy(x, &k2, h / 2.0), tau + h / 2.0)?;
        let k4 = self.velocity(&axpy(x, &k3, h), tau + h)?;
        Some(
            (0..x.len())
                .map(|i| x[i] + (k1[i] + k2[i] * 2.0 + k3[i] * 2.0 + k4[i]) * (h / 6.0))
                .collect(),
        )
    }

    fn correct(&self, mut x: Vec<Complex64>, tau: f64, settings: &TrackSettings) -> Option<Vec<Complex64>> {
        for it in 0..settings.corrector_max_iters {
            let dx = self.newton_step(&x, tau)?;
            let scale = max_norm(&x).max(1.0);
            let size = max_norm(&dx);
            if it == 0 && size > 0.1 * scale {
                return None;
            }
            x.iter_mut().zip(&dx).for_each(|(a, b)| *a += b);
            if size <= settings.corrector_tol * scale {
                return Some(x);
            }
        }
        None
    }

    fn track(&self, start: Vec<Complex64>, settings: &TrackSettings, step_factor: f64) -> Endpoint {
        let max_step = settings.max_step * step_factor;
        let mut h = (settings.initial_step * step_factor).max(settings.min_step * 2.0);
        let mut tau = 0.0;
        let mut x = start;
        let mut steps = 0;
        while tau < 1.0 {
            steps += 1;
            if steps > settings.max_steps {
                return Endpoint { x, status: PathStatus::Failed };
            }
            let step = h.min(1.0 - tau);
            let next = if 1.0 - tau - step < settings.min_step { 1.0 } else { tau + step };
            let trial = self
                .predict(&x, tau, next - tau)
                .and_then(|p| self.correct(p, next, settings));
            match trial {
                Some(y) => {
                    x = y;
                    tau = next;
                    h = (h * 1.25).min(max_step);
                    if max_norm(&x) > settings.divergence_bound {
                        return Endpoint { x, status: PathStatus::Diverged };
                    }
                }
                None => {
                    h /= 2.0;
                    if h < settings.min_step {
                        if 1.0 - tau < 1e-6 {
                            return self.refine(x, settings);
                        }
                        let status = if max_norm(&x) > settings.divergence_bound.sqrt() {
                            PathStatus::Diverged
                        } else {
                            PathStatus::Failed
                        };
                        return Endpoint { x, status };
                    }
                }
            }
        }
        self.refine(x, settings)
    }

    /// Newton on the target until the update is below `endpoint_tol` or stops shrinking.
    fn refine(&self, mut x: Vec<Complex64>, settings: &TrackSettings) -> Endpoint {
        let mut last = f64::INFINITY;
        for _ in 0..50 {
            let Some(dx) = self.newton_step(&x, 1.0) else {
                return Endpoint { x, status: PathStatus::Failed };
            };
            let scale = max_norm(&x).max(1.0);
            let size = max_norm(&dx);
            if size > last && size <= 1e-8 * scale {
                break;
            }
            x.iter_mut().zip(&dx).for_each(|(a, b)| *a += b);
            if size <= settings.endpoint_tol * scale {
                break;
            }
            last = size;
        }
        // iterative refinement with exactly evaluated residuals
        if let Some(exact) = self.exact {
            for _ in 0..6 {
                let Some(f) = exact.eval(&x) else { break };
                let Some(dx) = lu_solve(self.target.jacobian(&x), &(-f)) else { break };
                let size = max_norm(dx.as_slice());
                x.iter_mut().zip(dx.iter()).for_each(|(a, b)| *a += b);
                if size <= f64::EPSILON * max_norm(&x).max(1.0) {
                    break;
                }
            }
        }
        let status = if max_norm(&x) > settings.divergence_bound {
            PathStatus::Diverged
        } else if x.iter().all(|v| v.re.is_finite() && v.im.is_finite()) {
            PathStatus::Converged
        } else {
            PathStatus::Failed
        };
        Endpoint { x, status }
    }
}

fn start_points(degrees: &[u32]) -> Vec<Vec<Complex64>> {
    let mut points = vec![Vec::new()];
    for &d in degrees {
        let roots: Vec<Complex64> = (0..d).map(|k| Complex64::from_polar(1.0, TAU * k as f64 / d as f64)).collect();
        points = points
            .into_iter()
            .flat_map(|p| {
                roots.iter().map(move |r| {
                    let mut q = p.clone();
                    q.push(*r);
                    q
                })
            })
            .collect();
    }
    points
}

/// Replaces an overdetermined list by `nvars` random exact combinations.
fn square_up(polys: Vec<SparsePoly<BigRational>>, nvars: usize, rng: &mut ChaCha8Rng) -> Vec<SparsePoly<BigRational>> {
    if polys.len() <= nvars {
        return polys;
    }
    (0..nvars)
        .map(|_| {
            polys.iter().fold(SparsePoly::zero(polys[0].registry()), |acc, p| {
                let c: i64 = loop {
                    let c = rng.gen_range(-9..=9);
                    if c != 0 {
                        break c;
                    }
                };
                &acc + &p.scale(&BigRational::from_integer(c.into()))
            })
        })
        .collect()
}

fn run_paths(
    homotopy: &Homotopy<'_>,
    starts: &[Vec<Complex64>],
    which: &[usize],
    settings: &TrackSettings,
    step_factor: f64,
) -> Vec<Endpoint> {
    let work = || {
        which
            .par_iter()
            .map(|&i| homotopy.track(starts[i].clone(), settings, step_factor))
            .collect::<Vec<_>>()
    };
    match settings.threads {
        Some(n) => match rayon::ThreadPoolBuilder::new().num_threads(n.max(1)).build() {
            Ok(pool) => pool.install(work),
            Err(_) => work(),
        },
        None => work(),
    }
}

/// Paths of one homotopy with fresh random constants from stream `attempt`.
fn attempt_paths(
    system: &PolySystem,
    quadrics: &[SparsePoly<BigRational>],
    nvars: usize,
    settings: &TrackSettings,
    attempt: u64,
) -> Result<(Vec<Solution>, usize)> {
    let mut rng = ChaCha8Rng::seed_from_u64(settings.seed);
    rng.set_stream(attempt);
    let gamma = Complex64::from_polar(1.0, rng.gen_range(0.0..TAU));
    let square: Vec<SparsePoly<BigRational>> =
        square_up(quadrics.to_vec(), nvars, &mut rng).into_iter().map(unit_max).collect();
    let degrees: Vec<u32> = square.iter().map(|p| p.total_degree().unwrap_or(0)).collect();
    if degrees.contains(&0) {
        return Err(Error::InvalidInput("a reduced equation is constant".into()));
    }
    let target = CSystem::new(&square, nvars);
    let exact = ExactSystem::new(&square);
    let homotopy = Homotopy { target: &target, exact: Some(&exact), degrees: degrees.clone(), gamma };
    let starts = start_points(&degrees);
    let all: Vec<usize> = (0..starts.len()).collect();
    let mut endpoints = run_paths(&homotopy, &starts, &all, settings, 1.0);

    let checker = super::classify::Checker::new(system)?;
    let good: Vec<bool> = endpoints
        .iter()
        .map(|e| e.status == PathStatus::Converged && checker.residual(&checker.lift(&e.x)) <= settings.residual_tol)
        .collect();
    let mut good = good;
    let mut retracked = 0;
    for round in 0..settings.max_retracks {
        let mut again: Vec<usize> = Vec::new();
        for i in 0..endpoints.len() {
            if endpoints[i].status == PathStatus::Failed {
                again.push(i);
                continue;
            }
            if !good[i] {
                continue;
            }
            let collides = (0..endpoints.len())
                .any(|j| j != i && good[j] && same_point(&endpoints[i].x, &endpoints[j].x, settings.distinct_tol));
            if collides {
                again.push(i);
            }
        }
        if again.is_empty() {
            break;
        }
        retracked += again.len();
        let factor = 0.25f64.powi(round as i32 + 1);
        let redone = run_paths(&homotopy, &starts, &again, settings, factor);
        for (i, e) in again.into_iter().zip(redone) {
            good[i] = e.status == PathStatus::Converged
                && checker.residual(&checker.lift(&e.x)) <= settings.residual_tol;
            endpoints[i] = e;
        }
    }
    let offset = attempt as usize * starts.len();
    let raw = endpoints
        .into_iter()
        .enumerate()
        .map(|(i, e)| Solution {
            path: offset + i,
            coordinates: e.x,
            lifted: Vec::new(),
            residual: f64::INFINITY,
            status: e.status,
            is_real: false,
            conjugate: None,
            suspicious: false,
        })
        .collect();
    Ok((raw, retracked))
}

fn unit_max(p: SparsePoly<BigRational>) -> SparsePoly<BigRational> {
    let max = p.terms().map(|(_, c)| c.abs()).max().unwrap_or_else(BigRational::one);
    p.scale(&max.recip())
}

/// Tracks every path of a total-degree homotopy to the reduced system (in its
/// balanced coordinates), retracks failures and collisions with smaller steps,
/// and verifies the endpoints against the original equations. When fewer than
/// the expected number of solutions survive, the homotopy is rebuilt with new
/// random constants (up to `max_restarts` times) and the verified solutions merged.
pub fn solve_homotopy(system: &PolySystem, settings: &TrackSettings) -> Result<(Vec<Solution>, SolveReport)> {
    settings.validate()?;
    let clock = Instant::now();
    let red = system.reduction()?;
    let nvars = red.num_free();
    if nvars == 0 {
        return Err(Error::InvalidInput("the reduced system has no free variables".into()));
    }
    let quadrics: Vec<SparsePoly<BigRational>> = red.scaled_quadrics().into_iter().map(unit_max).collect();
    if quadrics.len() < nvars {
        return Err(Error::InvalidInput(format!(
            "{} equations in {nvars} unknowns: the solution set is not finite",
            quadrics.len()
        )));
    }
    let mut raw: Vec<Solution> = Vec::new();
    let mut retracked = 0;
    let mut attempts = 0;
    let mut report = loop {
        let (more, r) = attempt_paths(system, &quadrics, nvars, settings, attempts as u64)?;
        attempts += 1;
        retracked += r;
        raw.extend(more);
        let report = verify_solutions(system, &raw, settings, None)?;
        let short = report.delta.is_some_and(|d| (report.distinct as u64) < d);
        if !short || attempts > settings.max_restarts {
            break report;
        }
    };
    report.retracked = retracked;
    report.restarts = attempts - 1;
    if !report.matches_delta {
        report.warnings.push(format!(
            "{} distinct solutions found, expected {}",
            report.distinct,
            report.delta.map_or("unknown".to_string(), |d| d.to_string())
        ));
    }
    report.elapsed_ms = clock.elapsed().as_millis();
    Ok((report.solutions.clone(), report))
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn roots_of_unity_grid() {
        let p = start_points(&[2, 3]);
        assert_eq!(p.len(), 6);
        for x in &p {
            assert!((x[0].powu(2) - 1.0).norm() < 1e-12);
            assert!((x[1].powu(3) - 1.0).norm() < 1e-12);
        }
    }

    #[test]
    fn tracks_a_univariate_quadric() {
        let reg = crate::polyalg::Registry::new(["z"]);
        let f = crate::polyalg::parse_poly("z^2 - 2*z - 3", &reg).unwrap();
        let target = CSystem::new(&[f], 1);
        let h = Homotopy { target: &target, exact: None, degrees: vec![2], gamma: Complex64::from_polar(1.0, 0.7) };
        let settings = TrackSettings::default();
        let mut roots: Vec<f64> = start_points(&[2])
            .into_iter()
            .map(|s| {
                let e = h.track(s, &settings, 1.0);
                assert_eq!(e.status, PathStatus::Converged);
                assert!(e.x[0].im.abs() < 1e-12);
                e.x[0].re
            })
            .collect();
        roots.sort_by(f64::total_cmp);
        assert!((roots[0] + 1.0).abs() < 1e-12 && (roots[1] - 3.0).abs() < 1e-12);
    }
}

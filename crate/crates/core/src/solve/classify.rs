use num_complex::Complex64;
use num_traits::ToPrimitive;

use num_complex::Complex;
use num_rational::BigRational;
use num_traits::Zero;

use super::eval::{max_norm, to_exact, to_float, CPoly};
use super::types::{PathStatus, ResidualStats, Solution, SolveReport, TrackSettings};
use super::Certificate;
use crate::geometry::PolySystem;
use crate::qposet::chain_count;

/// Float copies of the original equations and of the lift of a reduced system.
pub(crate) struct Checker {
    equations: Vec<CPoly>,
    lift: Vec<(Vec<BigRational>, BigRational)>,
    scales: Vec<BigRational>,
}

impl Checker {
    pub(crate) fn new(system: &PolySystem) -> crate::Result<Self> {
        let red = system.reduction()?;
        let equations = system
            .quadrics
            .iter()
            .chain(system.sections.iter().map(|s| &s.form))
            .map(CPoly::from_exact)
            .collect();
        let lift = red.lift.clone();
        let scales = red.scales.clone();
        Ok(Checker { equations, lift, scales })
    }

    /// The Pluecker vector of balanced free coordinates `y`, computed exactly
    /// from the nearest Gaussian rationals and rounded once.
    pub(crate) fn lift(&self, y: &[Complex64]) -> Vec<Complex64> {
        let Some(x) = y
            .iter()
            .zip(&self.scales)
            .map(|(v, s)| to_exact(*v).map(|e| Complex::new(&e.re * s, &e.im * s)))
            .collect::<Option<Vec<_>>>()
        else {
            return vec![Complex64::new(f64::NAN, f64::NAN); self.lift.len()];
        };
        self.lift
            .iter()
            .map(|(c, d)| {
                let (mut re, mut im) = (d.clone(), BigRational::zero());
                for (a, b) in c.iter().zip(&x) {
                    if !a.is_zero() {
                        re += a * &b.re;
                        im += a * &b.im;
                    }
                }
                to_float(&Complex::new(re, im))
            })
            .collect()
    }

    pub(crate) fn residual(&self, z: &[Complex64]) -> f64 {
        self.equations.iter().map(|e| e.relative_residual(z)).fold(0.0, f64::max)
    }
}

/// Whether two balanced points agree to relative sup-distance `tol`.
pub(crate) fn same_point(a: &[Complex64], b: &[Complex64], tol: f64) -> bool {
    let scale = max_norm(a).max(max_norm(b)).max(1.0);
    a.iter().zip(b).all(|(x, y)| (x - y).norm() <= tol * scale)
}

/// Conjugate-pair and reality counts.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Default)]
pub struct RealityCounts {
    pub real: usize,
    pub pairs: usize,
    pub unpaired: usize,
}

/// Marks solutions with every `|Im| < reality_tol` as real and pairs each
/// remaining solution with its nearest conjugate when that is within `100 *
/// reality_tol` relative distance, closest pairs first.
pub fn classify_real(solutions: &mut [Solution], reality_tol: f64) -> RealityCounts {
    let mut counts = RealityCounts::default();
    for s in solutions.iter_mut() {
        s.is_real = s.max_imaginary() < reality_tol;
        s.conjugate = None;
        s.suspicious = false;
        if s.is_real {
            counts.real += 1;
        }
    }
    let complex: Vec<usize> = (0..solutions.len()).filter(|&i| !solutions[i].is_real).collect();
    let mut candidates: Vec<(f64, usize, usize)> = Vec::new();
    for (a, &i) in complex.iter().enumerate() {
        for &j in &complex[a + 1..] {
            let (u, v) = (&solutions[i].coordinates, &solutions[j].coordinates);
            let scale = max_norm(u).max(max_norm(v)).max(1.0);
            let d = u.iter().zip(v).map(|(x, y)| (x - y.conj()).norm()).fold(0.0, f64::max) / scale;
            candidates.push((d, i, j));
        }
    }
    candidates.sort_by(|a, b| a.0.total_cmp(&b.0).then(a.1.cmp(&b.1)).then(a.2.cmp(&b.2)));
    let limit = (100.0 * reality_tol).max(1e-6);
    for (d, i, j) in candidates {
        if d > limit {
            break;
        }
        if solutions[i].conjugate.is_none() && solutions[j].conjugate.is_none() {
            solutions[i].conjugate = Some(j);
            solutions[j].conjugate = Some(i);
            counts.pairs += 1;
        }
    }
    for &i in &complex {
        if solutions[i].conjugate.is_none() {
            solutions[i].suspicious = true;
            counts.unpaired += 1;
        }
    }
    counts
}

fn sort_key(s: &Solution) -> String {
    s.coordinates.iter().map(|c| format!("{:+.9e}{:+.9e}", c.re, c.im)).collect::<Vec<_>>().join(" ")
}

/// Recomputes lifts and residuals, drops non-converged endpoints, those above
/// the residual tolerance and repeats, orders the rest canonically and
/// classifies reality. The certificate, when given, is compared with the real count.
pub fn verify_solutions(
    system: &PolySystem,
    solutions: &[Solution],
    settings: &TrackSettings,
    certificate: Option<&Certificate>,
) -> crate::Result<SolveReport> {
    let checker = Checker::new(system)?;
    let mut kept: Vec<Solution> = Vec::new();
    let (mut converged, mut diverged, mut failed, mut rejected) = (0, 0, 0, 0);
    for s in solutions {
        match s.status {
            PathStatus::Diverged => diverged += 1,
            PathStatus::Failed => failed += 1,
            PathStatus::Converged => converged += 1,
        }
        if s.status != PathStatus::Converged {
            continue;
        }
        let mut s = s.clone();
        s.lifted = checker.lift(&s.coordinates);
        s.residual = checker.residual(&s.lifted);
        if !(s.residual <= settings.residual_tol) {
            rejected += 1;
            continue;
        }
        if kept.iter().any(|k| same_point(&k.coordinates, &s.coordinates, settings.distinct_tol)) {
            continue;
        }
        kept.push(s);
    }
    kept.sort_by_cached_key(sort_key);
    let counts = classify_real(&mut kept, settings.reality_tol);
    let target = system.bound.clone().unwrap_or_else(|| system.shape.top());
    let delta = chain_count(&system.shape, &target).ok().and_then(|d| d.to_u64());
    let distinct = kept.len();
    let certificate_agrees = certificate.map(|c| c.real_roots == counts.real && c.degree == distinct);
    Ok(SolveReport {
        shape: system.shape,
        schedule: None,
        settings: settings.clone(),
        total_paths: solutions.len(),
        converged,
        diverged,
        failed,
        rejected,
        retracked: 0,
        restarts: 0,
        distinct,
        real: counts.real,
        complex_pairs: counts.pairs,
        unpaired: counts.unpaired,
        delta,
        matches_delta: delta == Some(distinct as u64),
        within_delta: delta.is_none_or(|d| distinct as u64 <= d),
        conjugation_closed: counts.unpaired == 0,
        residuals: ResidualStats::of(&kept),
        solutions: kept,
        certificate: certificate.cloned(),
        certificate_agrees,
        warnings: system.warnings.clone(),
        elapsed_ms: 0,
    })
}

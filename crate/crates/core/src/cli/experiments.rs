use num_rational::BigRational;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use serde::Serialize;

use crate::error::Result;
use crate::geometry::{build_system, ScheduleKind, SectionsSpec};
use crate::qposet::{delta_chains, ProblemShape};
use crate::solve::{certify_eliminant, solve_homotopy, CertifyOptions, SolveReport, TrackSettings};

/// Solves the osculating instance of `shape` for one schedule, optionally certifying.
pub fn solve_osculating(
    shape: &ProblemShape,
    schedule: &ScheduleKind,
    settings: &TrackSettings,
    certify: bool,
) -> Result<SolveReport> {
    let spec = SectionsSpec::from_schedule(shape, schedule)?;
    let system = build_system(shape, &spec, None)?;
    let (solutions, mut report) = solve_homotopy(&system, settings)?;
    report.schedule = Some(schedule.label());
    if certify {
        let options = CertifyOptions { seed: settings.seed.wrapping_add(1), ..CertifyOptions::default() };
        match certify_eliminant(&system, &options) {
            Ok(cert) => {
                let matched = cert.matched_solutions(&solutions, 1e-6);
                let agrees = cert.complete()
                    && cert.real_roots == report.real
                    && cert.degree == report.distinct
                    && matched == solutions.len();
                report.certificate = Some(cert);
                report.certificate_agrees = Some(agrees);
            }
            Err(e) => report.warnings.push(format!("certification failed: {e}")),
        }
    }
    Ok(report)
}

/// Both flagship schedules for lines in P^3 and degree-one maps.
#[derive(Debug, Clone, Serialize)]
pub struct PaperQ1 {
    pub runs: Vec<SolveReport>,
    pub passed: bool,
}

/// `t_i = i` must give no real solutions and `t_i = i^6` eight.
pub fn paper_q1(settings: &TrackSettings) -> Result<PaperQ1> {
    let shape = ProblemShape::new(2, 2, 1)?;
    let mut runs = Vec::new();
    let mut passed = true;
    for (k, real) in [(1, 0), (6, 8)] {
        let report = solve_osculating(&shape, &ScheduleKind::Power(k), settings, true)?;
        passed &= report.distinct == 8
            && report.real == real
            && report.complex_pairs == (8 - real) / 2
            && report.residuals.max < 1e-8
            && report.certificate_agrees == Some(true);
        runs.push(report);
    }
    Ok(PaperQ1 { runs, passed })
}

#[derive(Debug, Clone, Serialize)]
pub struct SweepShape {
    pub m: usize,
    pub p: usize,
    pub delta: u64,
    pub runs: usize,
    /// Runs that found exactly `delta` distinct solutions.
    pub complete: usize,
    /// Runs in which every solution was real.
    pub all_real: usize,
    pub all_real_fraction: f64,
    /// Schedules of the runs that did not find `delta` solutions.
    pub incomplete_schedules: Vec<String>,
}

#[derive(Debug, Clone, Serialize)]
pub struct ShapiroSweep {
    pub seed: u64,
    pub shapes: Vec<SweepShape>,
}

impl ShapiroSweep {
    pub fn counts_match(&self) -> bool {
        self.shapes.iter().all(|s| s.complete == s.runs)
    }
}

/// `count` distinct positive rationals `k/16`, `1 <= k <= 160`.
pub fn random_schedule(count: usize, rng: &mut ChaCha8Rng) -> Vec<BigRational> {
    let mut out: Vec<BigRational> = Vec::with_capacity(count);
    while out.len() < count {
        let t = BigRational::new(rng.gen_range(1..=160i64).into(), 16.into());
        if !out.contains(&t) {
            out.push(t);
        }
    }
    out
}

/// Grassmannian instances (`q = 0`) at random distinct positive osculation points.
pub fn shapiro_sweep(shapes: &[(usize, usize)], runs: usize, seed: u64, settings: &TrackSettings) -> Result<ShapiroSweep> {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let mut out = Vec::new();
    for &(m, p) in shapes {
        let shape = ProblemShape::new(m, p, 0)?;
        let delta: u64 = delta_chains(&shape)?.try_into().unwrap_or(u64::MAX);
        let mut entry = SweepShape {
            m,
            p,
            delta,
            runs,
            complete: 0,
            all_real: 0,
            all_real_fraction: 0.0,
            incomplete_schedules: Vec::new(),
        };
        for run in 0..runs {
            let ts = random_schedule(shape.dimension(), &mut rng);
            let kind = ScheduleKind::Explicit(ts);
            let run_settings = TrackSettings { seed: seed.wrapping_add(run as u64), ..settings.clone() };
            let report = solve_osculating(&shape, &kind, &run_settings, false)?;
            if report.distinct as u64 == delta {
                entry.complete += 1;
                if report.real == report.distinct {
                    entry.all_real += 1;
                }
            } else {
                entry.incomplete_schedules.push(kind.label());
            }
        }
        entry.all_real_fraction = if runs == 0 { 0.0 } else { entry.all_real as f64 / runs as f64 };
        out.push(entry);
    }
    Ok(ShapiroSweep { seed, shapes: out })
}

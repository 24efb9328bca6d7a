use num_complex::Complex64;
use serde::{Deserialize, Serialize};

use super::certify::Certificate;
use crate::error::{Error, Result};
use crate::qposet::ProblemShape;

/// Numerical parameters of path tracking and post-processing.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct TrackSettings {
    pub initial_step: f64,
    pub min_step: f64,
    pub max_step: f64,
    pub corrector_tol: f64,
    pub corrector_max_iters: usize,
    pub divergence_bound: f64,
    pub endpoint_tol: f64,
    pub max_steps: usize,
    /// Endpoints with a larger relative residual against the original system are discarded.
    pub residual_tol: f64,
    /// A solution is real when every balanced coordinate has `|Im| <` this.
    pub reality_tol: f64,
    /// Relative sup-distance below which two endpoints are the same solution.
    pub distinct_tol: f64,
    /// How many times failed or colliding paths are tracked again with smaller steps.
    pub max_retracks: usize,
    /// How many times the homotopy is rebuilt with new constants when solutions are missing.
    pub max_restarts: usize,
    pub seed: u64,
    /// Worker threads; `None` uses the global pool.
    #[serde(skip)]
    pub threads: Option<usize>,
}

impl Default for TrackSettings {
    fn default() -> Self {
        TrackSettings {
            initial_step: 0.01,
            min_step: 1e-12,
            max_step: 0.1,
            corrector_tol: 1e-9,
            corrector_max_iters: 3,
            divergence_bound: 1e8,
            endpoint_tol: 1e-12,
            max_steps: 100_000,
            residual_tol: 1e-8,
            reality_tol: 1e-8,
            distinct_tol: 1e-6,
            max_retracks: 2,
            max_restarts: 3,
            seed: 0,
            threads: None,
        }
    }
}

impl TrackSettings {
    pub fn validate(&self) -> Result<()> {
        let positive = [
            self.initial_step,
            self.min_step,
            self.max_step,
            self.corrector_tol,
            self.divergence_bound,
            self.endpoint_tol,
            self.residual_tol,
            self.reality_tol,
            self.distinct_tol,
        ];
        if positive.iter().any(|v| !(v.is_finite() && *v > 0.0)) {
            return Err(Error::InvalidInput("tolerances and step sizes must be positive".into()));
        }
        if self.min_step >= self.initial_step || self.initial_step > self.max_step {
            return Err(Error::InvalidInput("need min_step < initial_step <= max_step".into()));
        }
        if self.corrector_max_iters == 0 || self.max_steps == 0 {
            return Err(Error::InvalidInput("iteration limits must be positive".into()));
        }
        Ok(())
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum PathStatus {
    Converged,
    Diverged,
    Failed,
}

/// One solution of a reduced system.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct Solution {
    /// Index of the start solution the path began at.
    pub path: usize,
    /// Free coordinates in balanced form `y_j = x_j / scale_j`.
    pub coordinates: Vec<Complex64>,
    /// Every Pluecker coordinate, in the order of the system's registry.
    pub lifted: Vec<Complex64>,
    /// Largest relative residual over the original quadrics and sections.
    pub residual: f64,
    pub status: PathStatus,
    pub is_real: bool,
    /// Position of the complex conjugate within the same solution list.
    pub conjugate: Option<usize>,
    /// Non-real with no conjugate found.
    pub suspicious: bool,
}

impl Solution {
    pub fn max_imaginary(&self) -> f64 {
        self.coordinates.iter().map(|c| c.im.abs()).fold(0.0, f64::max)
    }
}

#[derive(Debug, Clone, Default, PartialEq, Serialize, Deserialize)]
pub struct ResidualStats {
    pub max: f64,
    pub mean: f64,
}

impl ResidualStats {
    pub fn of(solutions: &[Solution]) -> Self {
        if solutions.is_empty() {
            return Self::default();
        }
        let max = solutions.iter().map(|s| s.residual).fold(0.0, f64::max);
        let mean = solutions.iter().map(|s| s.residual).sum::<f64>() / solutions.len() as f64;
        ResidualStats { max, mean }
    }
}

/// Counts and diagnostics of a run; serializes deterministically.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct SolveReport {
    pub shape: ProblemShape,
    /// How the sections were chosen, when known.
    pub schedule: Option<String>,
    pub settings: TrackSettings,
    pub total_paths: usize,
    pub converged: usize,
    pub diverged: usize,
    pub failed: usize,
    /// Converged endpoints rejected by the residual test.
    pub rejected: usize,
    pub retracked: usize,
    pub restarts: usize,
    pub distinct: usize,
    pub real: usize,
    pub complex_pairs: usize,
    pub unpaired: usize,
    /// The degree of the problem, when known.
    pub delta: Option<u64>,
    pub matches_delta: bool,
    pub within_delta: bool,
    pub conjugation_closed: bool,
    pub residuals: ResidualStats,
    pub solutions: Vec<Solution>,
    pub certificate: Option<Certificate>,
    pub certificate_agrees: Option<bool>,
    pub warnings: Vec<String>,
    #[serde(skip)]
    pub elapsed_ms: u128,
}

impl SolveReport {
    pub fn to_json(&self) -> String {
        serde_json::to_string_pretty(self).expect("report serializes")
    }

    /// All consistency checks hold: the count equals the degree, conjugates pair
    /// up and the certificate, if computed, agrees.
    pub fn consistent(&self) -> bool {
        self.matches_delta && self.conjugation_closed && self.certificate_agrees != Some(false)
    }
}

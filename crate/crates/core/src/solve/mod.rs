//! Numerical solving and exact certification of reduced systems.
//!
//! [`solve_homotopy`] tracks a total-degree homotopy in the balanced coordinates
//! of a [`Reduction`](crate::geometry::Reduction) and checks every endpoint
//! against the original quadrics and sections; [`certify_eliminant`] computes an
//! exact eliminant by iterated resultants and counts its real roots with
//! [`sturm_real_roots`].

mod certify;
mod classify;
mod eval;
mod homotopy;
mod sturm;
mod types;

pub use certify::{certify_eliminant, resultant, Certificate, CertifyOptions};
pub use classify::{classify_real, verify_solutions, RealityCounts};
pub use homotopy::solve_homotopy;
pub use sturm::{sturm_chain, sturm_real_roots};
pub use types::{PathStatus, ResidualStats, Solution, SolveReport, TrackSettings};

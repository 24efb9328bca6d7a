//! Twisted cubics' cousins: the 8 degree-1 curves of lines in P^3 meeting 8
//! osculating lines, for t_i = i^6 (all real) and t_i = i (none real).

use qgrass::geometry::{build_system, ScheduleKind, SectionsSpec};
use qgrass::solve::{certify_eliminant, solve_homotopy, CertifyOptions, TrackSettings};
use qgrass::ProblemShape;

fn main() -> qgrass::Result<()> {
    let shape = ProblemShape::new(2, 2, 1)?;
    let settings = TrackSettings { seed: 2024, ..TrackSettings::default() };
    for k in [6, 1] {
        let spec = SectionsSpec::from_schedule(&shape, &ScheduleKind::Power(k))?;
        let system = build_system(&shape, &spec, None)?;
        let (solutions, report) = solve_homotopy(&system, &settings)?;
        let cert = certify_eliminant(&system, &CertifyOptions::default())?;
        println!("t_i = i^{k}");
        println!(
            "  paths {}  distinct {}  real {}  conjugate pairs {}  max residual {:.1e}  ({} ms)",
            report.total_paths, report.distinct, report.real, report.complex_pairs, report.residuals.max, report.elapsed_ms
        );
        println!(
            "  eliminant in {} of degree {} with {} real roots; {} of {} solutions match its roots",
            cert.variable,
            cert.degree,
            cert.real_roots,
            cert.matched_solutions(&solutions, 1e-6),
            solutions.len()
        );
    }
    Ok(())
}

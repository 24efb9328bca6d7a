//! Builds an osculating system, writes it as text, reads it back, and solves
//! and certifies the parsed copy.

use qgrass::geometry::{build_system, PolySystem, ScheduleKind, SectionsSpec};
use qgrass::polyalg::render_poly;
use qgrass::solve::{certify_eliminant, solve_homotopy, CertifyOptions, TrackSettings};
use qgrass::ProblemShape;

fn main() -> qgrass::Result<()> {
    let shape = ProblemShape::new(2, 2, 1)?;
    let spec = SectionsSpec::from_schedule(&shape, &"geom:2".parse::<ScheduleKind>()?)?;
    let text = build_system(&shape, &spec, None)?.render();
    println!("{} lines of system text", text.lines().count());

    let system = PolySystem::parse(&text)?;
    let red = system.reduction()?;
    println!("{} free variables, Bezout bound {}", red.num_free(), red.bezout_bound());
    for q in red.scaled_quadrics() {
        println!("  {}", render_poly(&q));
    }
    let (_, report) = solve_homotopy(&system, &TrackSettings::default())?;
    let cert = certify_eliminant(&system, &CertifyOptions::default())?;
    println!("{} solutions, {} real; eliminant degree {} with {} real roots", report.distinct, report.real, cert.degree, cert.real_roots);
    Ok(())
}

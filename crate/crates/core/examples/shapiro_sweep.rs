//! Lines and planes osculating the rational normal curve at random real points:
//! how often are all solutions real?

use qgrass::cli::experiments::shapiro_sweep;
use qgrass::solve::TrackSettings;

fn main() -> qgrass::Result<()> {
    let runs = std::env::args().nth(1).and_then(|v| v.parse().ok()).unwrap_or(40);
    let sweep = shapiro_sweep(&[(2, 2), (3, 2), (2, 3)], runs, 7, &TrackSettings::default())?;
    for s in &sweep.shapes {
        println!(
            "m={} p={}: {}/{} runs found all {} solutions, all real in {:.0}%",
            s.m,
            s.p,
            s.complete,
            s.runs,
            s.delta,
            100.0 * s.all_real_fraction
        );
        for bad in &s.incomplete_schedules {
            println!("  incomplete: {bad}");
        }
    }
    Ok(())
}

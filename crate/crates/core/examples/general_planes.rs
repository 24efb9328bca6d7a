//! Lines in P^3 meeting four random lines: not osculating, so any number of
//! the two solutions may be real.

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use qgrass::geometry::{build_system, SectionsSpec};
use qgrass::polyalg::{rank_of, rat, BigRational};
use qgrass::solve::{certify_eliminant, solve_homotopy, CertifyOptions, TrackSettings};
use qgrass::ProblemShape;

fn random_plane(rng: &mut ChaCha8Rng) -> Vec<Vec<BigRational>> {
    loop {
        let plane: Vec<Vec<BigRational>> = (0..2).map(|_| (0..4).map(|_| rat(rng.gen_range(-9..=9))).collect()).collect();
        if rank_of(&plane) == 2 {
            return plane;
        }
    }
}

fn main() -> qgrass::Result<()> {
    let shape = ProblemShape::new(2, 2, 0)?;
    let mut rng = ChaCha8Rng::seed_from_u64(5);
    for trial in 0..6 {
        let planes = (0..4).map(|_| (random_plane(&mut rng), (rat(1), rat(1)))).collect();
        let system = build_system(&shape, &SectionsSpec::General(planes), None)?;
        let (_, report) = solve_homotopy(&system, &TrackSettings::default())?;
        let cert = certify_eliminant(&system, &CertifyOptions::default())?;
        println!(
            "trial {trial}: {} solutions, {} real (Sturm count {})",
            report.distinct, report.real, cert.real_roots
        );
    }
    Ok(())
}

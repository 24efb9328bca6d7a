//! Pulls the pencil back along the boundary map and checks that it factors as
//! `(A t^n - B s^n)` times the pencil one degree down.

use qgrass::geometry::{lambda_form_symbolic, pi_map, pluecker_registry};
use qgrass::polyalg::{render_poly, BigRational, PlueckerVector, Registry, SparsePoly};
use qgrass::ProblemShape;

fn main() -> qgrass::Result<()> {
    let shape = ProblemShape::new(2, 2, 1)?;
    let lower = shape.lower_degree().expect("q > 0");
    let names: Vec<String> =
        pluecker_registry(&lower, &["A", "B", "s", "t"]).names().iter().map(|v| v.replace('z', "x")).collect();
    let reg = Registry::new(names);
    let k = lower.num_coordinates();
    let var = |i| SparsePoly::<BigRational>::var(&reg, i);
    let (a, b, s, t) = (var(k), var(k + 1), var(k + 2), var(k + 3));

    let x = PlueckerVector::new(lower, (0..k).map(var).collect())?;
    let mut images = pi_map(&shape, &a, &b, &x)?.into_coords();
    images.extend([s.clone(), t.clone()]);
    let pulled = lambda_form_symbolic(&shape)?.substitute(&images)?;

    let mut lower_images: Vec<_> = (0..k).map(var).collect();
    lower_images.extend([s.clone(), t.clone()]);
    let n = shape.n() as u32;
    let factor = &(&a * &t.pow(n)) - &(&b * &s.pow(n));
    let expected = &factor * &lambda_form_symbolic(&lower)?.substitute(&lower_images)?;

    println!("pi*Lambda has {} terms", pulled.num_terms());
    println!("factor: {}", render_poly(&factor));
    println!("identity holds: {}", pulled == expected);
    Ok(())
}

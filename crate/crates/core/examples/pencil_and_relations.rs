//! The osculating pencil and the quadrics that cut out the space of curves.

use qgrass::geometry::{l_table, lambda_form, quantum_pluecker_relations};
use qgrass::polyalg::{rat, render_poly};
use qgrass::ProblemShape;

fn main() -> qgrass::Result<()> {
    let shape = ProblemShape::new(2, 2, 1)?;
    let table: Vec<String> = l_table(2, 4)?
        .into_iter()
        .map(|(alpha, l)| format!("l_{}={l}", alpha.iter().map(usize::to_string).collect::<String>()))
        .collect();
    println!("{}", table.join("  "));

    // Lambda(1, t) at t = 3, with every rank of the poset visible in the powers of t
    let section = lambda_form(&shape, &rat(1), &rat(3))?;
    println!("Lambda(1,3) = {}", render_poly(&section.form));

    for r in quantum_pluecker_relations(&shape) {
        println!("0 = {}", render_poly(&r));
    }
    for (m, p, q) in [(2, 3, 0), (2, 2, 2), (3, 2, 1)] {
        let s = ProblemShape::new(m, p, q)?;
        println!("{s}: {} quadrics", quantum_pluecker_relations(&s).len());
    }
    Ok(())
}

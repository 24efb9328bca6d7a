//! Degrees of the space of rational curves, by the closed formula and by
//! counting maximal chains, for small Grassmannians.

use qgrass::qposet::{delta_chains, delta_formula, syt_rectangle};
use qgrass::ProblemShape;

fn main() -> qgrass::Result<()> {
    println!("{:>3} {:>3} {:>3} {:>14} {:>14}", "m", "p", "q", "formula", "chains");
    for m in 2..=4 {
        for p in 2..=m {
            for q in 0..=2 {
                let shape = ProblemShape::new(m, p, q)?;
                let (f, c) = (delta_formula(&shape)?, delta_chains(&shape)?);
                let mark = if f == c { "" } else { "  MISMATCH" };
                println!("{m:>3} {p:>3} {q:>3} {f:>14} {c:>14}{mark}");
            }
        }
    }
    // q = 0 is the Schubert problem; its degree counts standard tableaux
    let shape = ProblemShape::new(3, 3, 0)?;
    println!("3-planes in C^6: 3x3 tableaux {} = chains {}", syt_rectangle(3, 3), delta_chains(&shape)?);
    Ok(())
}

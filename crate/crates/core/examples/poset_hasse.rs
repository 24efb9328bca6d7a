//! Prints the Hasse diagram of the index poset for degree-one curves of lines
//! in P^3, with chain counts, in Graphviz format.
//!
//!     cargo run --example poset_hasse | dot -Tsvg > c1.svg

use qgrass::qposet::{hasse_dot, ChainCountTable, QuantumPoset};
use qgrass::ProblemShape;

fn main() -> qgrass::Result<()> {
    let shape = ProblemShape::new(2, 2, 1)?;
    let poset = QuantumPoset::new(shape)?;
    let table = ChainCountTable::build(&poset);
    let bottom = poset.index_of(&shape.bottom()).expect("bottom element");
    let top = poset.index_of(&shape.top()).expect("top element");
    eprintln!(
        "{} elements, ranks {}..{}, {} maximal chains",
        poset.len(),
        poset.rank_of(bottom),
        poset.rank_of(top),
        table.delta()
    );
    print!("{}", hasse_dot(&poset, Some(&table)));
    Ok(())
}

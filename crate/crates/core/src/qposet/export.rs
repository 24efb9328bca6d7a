use std::fmt::Write;

use itertools::Itertools;

use super::chains::ChainCountTable;
use super::index::{ProblemShape, QuantumIndex};
use super::order::QuantumPoset;

/// Label `"alpha^(a)"`, subset entries concatenated when `n <= 9` and comma
/// separated otherwise.
pub fn index_label(shape: &ProblemShape, x: &QuantumIndex) -> String {
    let sep = if shape.n() <= 9 { "" } else { "," };
    format!("{}^({})", x.alpha.iter().join(sep), x.level)
}

/// Hasse diagram in DOT. Nodes are labeled `"alpha^(a)|rank"`; edges run from
/// each element to its upper covers. When a chain-count table is supplied the
/// counts are attached as a `chains` attribute.
pub fn hasse_dot(poset: &QuantumPoset, chains: Option<&ChainCountTable>) -> String {
    let shape = poset.shape();
    let mut out = String::new();
    writeln!(out, "digraph C_q {{").unwrap();
    writeln!(
        out,
        "  // m={} p={} q={} elements={}",
        shape.m(),
        shape.p(),
        shape.q(),
        poset.len()
    )
    .unwrap();
    writeln!(out, "  rankdir=BT;").unwrap();
    for (i, x) in poset.elements().iter().enumerate() {
        let label = format!("{}|{}", index_label(shape, x), poset.rank_of(i));
        match chains.and_then(|c| c.get(x)) {
            Some(count) => {
                writeln!(out, "  n{i} [label=\"{label}\", chains=\"{count}\"];").unwrap()
            }
            None => writeln!(out, "  n{i} [label=\"{label}\"];").unwrap(),
        }
    }
    for i in 0..poset.len() {
        for &j in poset.upper_covers(i) {
            writeln!(out, "  n{i} -> n{j};").unwrap();
        }
    }
    out.push_str("}\n");
    out
}

//! Combinatorics of the quantum Pluecker index set `C_q`.
//!
//! Elements are pairs `alpha^(a)` of a `p`-subset `alpha` of `1..=n` and a level
//! `0 <= a <= q`. The set is graded by `|alpha^(a)| = a*n + sum(alpha_i - i)`, has a
//! unique minimum `(1..p)^(0)` and maximum `(m+1..n)^(q)`, and its number of maximal
//! chains is the degree `delta` of the quantum Grassmannian.

mod chains;
mod export;
mod index;
mod order;

pub use chains::{chain_count, delta_chains, delta_formula, syt_rectangle, ChainCountTable};
pub use export::{hasse_dot, index_label};
pub use index::{ProblemShape, QuantumIndex};
pub use order::{covers, glb, leq, rank, QuantumPoset, DEFAULT_POSET_CAP};

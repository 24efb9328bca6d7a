//! Rational curves of degree `q` in the Grassmannian of `p`-planes in `C^(m+p)`.
//!
//! The crate counts the maps meeting `N = pm + q(m+p)` general `m`-planes in two
//! independent ways (a closed formula and the number of maximal chains of the
//! poset of quantum Pluecker indices), builds explicit polynomial systems for
//! concrete instances whose planes osculate the rational normal curve, solves them
//! by total-degree homotopy continuation, and certifies the number of real
//! solutions exactly with iterated resultants and Sturm sequences.
//!
//! Layout:
//!
//! * [`qposet`] - the index poset, ranks, covers, meets, chain counts and degree formulas.
//! * [`polyalg`] - exact and floating polynomial arithmetic, determinants, Pluecker extraction.
//! * [`geometry`] - osculating planes, the pencil of sections, quantum Pluecker relations,
//!   the boundary map and assembled systems.
//! * [`solve`] - path tracking, reality classification, verification and certification.
//! * [`cli`] - the command-line front end used by the `qgrass` binary.

pub mod cli;
pub mod error;
pub mod geometry;
pub mod polyalg;
pub mod qposet;
pub mod solve;

pub use error::{Error, Result};
pub use qposet::{ProblemShape, QuantumIndex};

//! Geometric constructions and assembled polynomial systems.
//!
//! The Pluecker variable `z_{alpha^(a)}` is named `z<alpha>_<a>`, e.g. `z12_0`; when
//! `n > 9` the subset entries are separated by dots (`z1.10_0`).

mod boundary;
mod osculating;
mod relations;
mod schedule;
mod sections;
mod system;

pub use boundary::pi_map;
pub use osculating::{l_minor, l_table, osculating_matrix, OsculatingPlane};
pub use relations::{grassmann_relations, quantum_pluecker_relations};
pub use schedule::{t_schedule, ScheduleKind};
pub use sections::{lambda_form, lambda_form_symbolic, section_from_plane, LinearSection, SectionSource};
pub use system::{build_system, PlaneCondition, PolySystem, Reduction, SectionsSpec};

use std::sync::Arc;

use itertools::Itertools;

use crate::polyalg::Registry;
use crate::qposet::{ProblemShape, QuantumIndex};

/// Variable name of `z_{alpha^(a)}` with the given prefix (`"z"` or `"x"`).
pub fn var_name(shape: &ProblemShape, prefix: &str, x: &QuantumIndex) -> String {
    let sep = if shape.n() <= 9 { "" } else { "." };
    format!("{prefix}{}_{}", x.alpha.iter().join(sep), x.level)
}

/// Inverse of [`var_name`] for the `z` prefix.
pub fn parse_var_name(shape: &ProblemShape, name: &str) -> Option<QuantumIndex> {
    let body = name.strip_prefix('z')?;
    let (alpha, level) = body.rsplit_once('_')?;
    let level = level.parse().ok()?;
    let alpha: Vec<usize> = if shape.n() <= 9 {
        alpha.chars().map(|c| c.to_digit(10).map(|d| d as usize)).collect::<Option<_>>()?
    } else {
        alpha.split('.').map(|v| v.parse().ok()).collect::<Option<_>>()?
    };
    let x = QuantumIndex::new(alpha, level);
    shape.validate(&x).ok().map(|_| x)
}

/// Registry holding every `z` variable of `C_q` in lexicographic `(a, alpha)`
/// order, followed by `extras`.
pub fn pluecker_registry(shape: &ProblemShape, extras: &[&str]) -> Arc<Registry> {
    prefixed_registry(shape, "z", extras)
}

pub(crate) fn prefixed_registry(shape: &ProblemShape, prefix: &str, extras: &[&str]) -> Arc<Registry> {
    let names = shape
        .indices()
        .iter()
        .map(|x| var_name(shape, prefix, x))
        .chain(extras.iter().map(|s| s.to_string()))
        .collect::<Vec<_>>();
    Registry::new(names)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn names_round_trip() {
        for shape in [ProblemShape::new(2, 2, 1).unwrap(), ProblemShape::new(8, 3, 1).unwrap()] {
            for x in shape.indices() {
                let name = var_name(&shape, "z", &x);
                assert_eq!(parse_var_name(&shape, &name), Some(x));
            }
        }
        let shape = ProblemShape::new(2, 2, 1).unwrap();
        assert_eq!(var_name(&shape, "z", &shape.top()), "z34_1");
        assert_eq!(parse_var_name(&shape, "z35_0"), None);
    }
}

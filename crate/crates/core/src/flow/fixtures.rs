//! Named band flows.

use super::{Band, FlowSpec, Line};

const INV: Band = Band::Invariant;
const UP: Band = Band::Transition { sign: 1 };
const DOWN: Band = Band::Transition { sign: -1 };

fn build(lines: &[(f64, i8)], bands: &[Band]) -> FlowSpec {
    let lines = lines.iter().map(|&(x, dir)| Line { x, dir }).collect();
    FlowSpec::bands(lines, bands.to_vec()).expect("fixture specs are valid")
}

/// Left half-plane moves up, right half-plane moves down, leaves in between
/// cross from the left line to the right one.
pub fn reeb_flow() -> FlowSpec {
    build(&[(-1.0, 1), (1.0, -1)], &[INV, UP, INV])
}

/// The Reeb flow conjugated by `(x, y) ↦ (-x, y)`.
pub fn mirror_reeb_flow() -> FlowSpec {
    build(&[(-1.0, -1), (1.0, 1)], &[INV, DOWN, INV])
}

pub fn double_reeb_flow() -> FlowSpec {
    build(&[(-2.0, 1), (0.0, -1), (2.0, 1)], &[INV, UP, UP, INV])
}

pub fn chain5_flow() -> FlowSpec {
    build(
        &[(-3.0, 1), (-1.0, -1), (1.0, -1), (3.0, 1)],
        &[INV, UP, INV, UP, INV],
    )
}

/// A transition between lines of equal direction: no branching.
pub fn equal_dir_flow() -> FlowSpec {
    build(&[(-1.0, 1), (1.0, 1)], &[INV, UP, INV])
}

pub fn translation_flow(a: f64, b: f64) -> FlowSpec {
    FlowSpec::translation(a, b).expect("non-zero translation")
}

/// Built-in names: `reeb`, `mirror-reeb`, `double-reeb`, `chain5`,
/// `equal-dir`, `translation` and `translation:a,b`.
pub fn by_name(name: &str) -> Option<FlowSpec> {
    match name {
        "reeb" => Some(reeb_flow()),
        "mirror-reeb" => Some(mirror_reeb_flow()),
        "double-reeb" => Some(double_reeb_flow()),
        "chain5" => Some(chain5_flow()),
        "equal-dir" => Some(equal_dir_flow()),
        "translation" => Some(translation_flow(1.0, 0.0)),
        _ => {
            let rest = name.strip_prefix("translation:")?;
            let (a, b) = rest.split_once(',')?;
            FlowSpec::translation(a.trim().parse().ok()?, b.trim().parse().ok()?).ok()
        }
    }
}

pub const NAMES: &[&str] = &[
    "reeb",
    "mirror-reeb",
    "double-reeb",
    "chain5",
    "equal-dir",
    "translation:a,b",
];

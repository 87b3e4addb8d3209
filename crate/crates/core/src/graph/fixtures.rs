//! Hand-coded leaf spaces used throughout tests, the CLI and the README.

use super::{Edge, LeafSpaceGraph};

/// Leaf space of the Reeb flow: two closed half-planes joined by an open
/// transition band whose leaves limit onto both boundary lines at once.
pub fn reeb() -> LeafSpaceGraph {
    LeafSpaceGraph::new(
        &["vL", "vR"],
        vec![
            Edge::new("eL", &[], &["vL"]),
            Edge::new("eM", &[], &["vL", "vR"]),
            Edge::new("eR", &[], &["vR"]),
        ],
    )
}

/// Reeb flow conjugated by the reflection `(x, y) -> (-x, y)`.
pub fn mirror_reeb() -> LeafSpaceGraph {
    LeafSpaceGraph::new(
        &["vL", "vR"],
        vec![
            Edge::new("eL", &[], &["vL"]),
            Edge::new("eM", &[], &["vR", "vL"]),
            Edge::new("eR", &[], &["vR"]),
        ],
    )
}

/// A single open interval: the leaf space of a translation.
pub fn translation() -> LeafSpaceGraph {
    LeafSpaceGraph::new(&[], vec![Edge::new("e0", &[], &[])])
}

/// Two Reeb components sharing the middle line, which is a fundamental
/// region on its own. Five regions.
pub fn double_reeb() -> LeafSpaceGraph {
    LeafSpaceGraph::new(
        &["v1", "v2", "v3"],
        vec![
            Edge::new("eL", &[], &["v1"]),
            Edge::new("eT1", &[], &["v1", "v2"]),
            Edge::new("eT2", &["v2", "v3"], &[]),
            Edge::new("eR", &["v3"], &[]),
        ],
    )
}

/// Two Reeb components separated by a closed band. Five regions, all
/// two-dimensional.
pub fn chain5() -> LeafSpaceGraph {
    LeafSpaceGraph::new(
        &["v1", "v2", "v3", "v4"],
        vec![
            Edge::new("eL", &[], &["v1"]),
            Edge::new("eT1", &[], &["v1", "v2"]),
            Edge::new("eM", &["v2"], &["v3"]),
            Edge::new("eT2", &["v3", "v4"], &[]),
            Edge::new("eR", &["v4"], &[]),
        ],
    )
}

/// Three first-order extreme edges and one second-order extreme edge.
pub fn f4_like() -> LeafSpaceGraph {
    LeafSpaceGraph::new(
        &["a", "b", "c", "d"],
        vec![
            Edge::new("e1", &[], &["a"]),
            Edge::new("e2", &[], &["a", "b"]),
            Edge::new("e3", &["b"], &["c", "d"]),
            Edge::new("e4", &["c"], &[]),
            Edge::new("e5", &["d"], &[]),
        ],
    )
}

/// Named fixture lookup.
pub fn by_name(name: &str) -> Option<LeafSpaceGraph> {
    Some(match name {
        "reeb" => reeb(),
        "mirror-reeb" => mirror_reeb(),
        "translation" => translation(),
        "double-reeb" => double_reeb(),
        "chain5" => chain5(),
        "f4" => f4_like(),
        _ => return None,
    })
}

//! Symbolic leaf space of a band flow.
//!
//! A boundary line is a branch point exactly when it bounds a transition
//! between lines of opposite direction. Each such transition is its own
//! edge, holding both boundary lines in one end. Maximal runs of the other
//! bands form the remaining edges.

use crate::graph::{Edge, LeafSpaceGraph};

use super::{BandFlowSpec, FlowSpec};

/// A built leaf space plus its correspondence with the flow spec.
#[derive(Clone, Debug, PartialEq)]
pub struct LeafSpaceBuild {
    pub graph: LeafSpaceGraph,
    /// Vertex id of each line, if the line is a branch point.
    pub line_vertex: Vec<Option<String>>,
    /// Edge id containing each band.
    pub band_edge: Vec<String>,
}

pub fn build_leaf_space(spec: &FlowSpec) -> LeafSpaceGraph {
    build_leaf_space_detailed(spec).graph
}

pub fn build_leaf_space_detailed(spec: &FlowSpec) -> LeafSpaceBuild {
    match spec {
        FlowSpec::Translation(_) => LeafSpaceBuild {
            graph: LeafSpaceGraph::new(&[], vec![Edge::new("e0", &[], &[])]),
            line_vertex: Vec::new(),
            band_edge: Vec::new(),
        },
        FlowSpec::Bands(b) => build_bands(b),
    }
}

fn build_bands(spec: &BandFlowSpec) -> LeafSpaceBuild {
    let n = spec.lines().len();
    let branching: Vec<bool> = (0..=n).map(|j| spec.is_branching(j)).collect();
    let line_vertex: Vec<Option<String>> = (0..n)
        .map(|i| (branching[i] || branching[i + 1]).then(|| format!("v{i}")))
        .collect();
    let vid = |i: usize| {
        line_vertex[i]
            .clone()
            .expect("boundary of a branching band")
    };

    let mut edges = Vec::new();
    let mut band_edge = vec![String::new(); n + 1];
    let mut run_start: Option<usize> = None;
    let close_run =
        |start: usize, end: usize, edges: &mut Vec<Edge>, band_edge: &mut Vec<String>| {
            let id = format!("e{}", edges.len());
            let end_a = if start > 0 {
                vec![vid(start - 1)]
            } else {
                vec![]
            };
            let end_b = if end < n { vec![vid(end)] } else { vec![] };
            for slot in &mut band_edge[start..=end] {
                *slot = id.clone();
            }
            edges.push(Edge { id, end_a, end_b });
        };
    for j in 0..=n {
        if !branching[j] {
            run_start.get_or_insert(j);
            continue;
        }
        if let Some(s) = run_start.take() {
            close_run(s, j - 1, &mut edges, &mut band_edge);
        }
        let tr = spec.transition(j).expect("branching bands are transitions");
        let (left, right) = (vid(j - 1), vid(j));
        // upstream line first: the one the crossing leaves pass first
        let list = if tr.sign > 0.0 {
            vec![left, right]
        } else {
            vec![right, left]
        };
        let id = format!("e{}", edges.len());
        band_edge[j] = id.clone();
        let (end_a, end_b) = if tr.sign * tr.dir_b < 0.0 {
            (vec![], list)
        } else {
            (list, vec![])
        };
        edges.push(Edge { id, end_a, end_b });
    }
    if let Some(s) = run_start {
        close_run(s, n, &mut edges, &mut band_edge);
    }
    let vertices = line_vertex.iter().flatten().cloned().collect();
    LeafSpaceBuild {
        graph: LeafSpaceGraph { vertices, edges },
        line_vertex,
        band_edge,
    }
}

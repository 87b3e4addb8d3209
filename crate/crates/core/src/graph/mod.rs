//! Combinatorial model of oriented, possibly non-Hausdorff leaf spaces.
//!
//! A [`LeafSpaceGraph`] records one edge per two-dimensional fundamental
//! region (an open interval of leaves) and one vertex per branch-point leaf.
//! Each edge has two ends; an end lists the boundary leaves approached from
//! that side of the interval, ordered by the orientation of the foliation.
//! Vertices listed together in one end are mutually non-separable.

mod canon;
mod collapse;
pub mod fixtures;
pub mod generate;
mod iso;

use std::collections::{BTreeMap, BTreeSet, HashMap};
use std::fmt;

use serde::{Deserialize, Serialize};
use thiserror::Error;

pub use canon::canonical_form;
pub use collapse::{
    classify_edges, collapse_sequence, CollapseStep, ContractionTrace, EdgeClass, StepKind,
};
pub use iso::{decide_equivalence, is_isomorphic, Branch, Equivalence, Isomorphism};

#[derive(Clone, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(deny_unknown_fields, rename_all = "camelCase")]
pub struct Edge {
    pub id: String,
    pub end_a: Vec<String>,
    pub end_b: Vec<String>,
}

impl Edge {
    pub fn new(id: &str, end_a: &[&str], end_b: &[&str]) -> Self {
        Self {
            id: id.to_string(),
            end_a: end_a.iter().map(|s| s.to_string()).collect(),
            end_b: end_b.iter().map(|s| s.to_string()).collect(),
        }
    }

    pub fn end(&self, side: Side) -> &Vec<String> {
        match side {
            Side::A => &self.end_a,
            Side::B => &self.end_b,
        }
    }

    pub fn end_mut(&mut self, side: Side) -> &mut Vec<String> {
        match side {
            Side::A => &mut self.end_a,
            Side::B => &mut self.end_b,
        }
    }

    pub fn boundary_len(&self) -> usize {
        self.end_a.len() + self.end_b.len()
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum Side {
    A,
    B,
}

impl Side {
    pub const BOTH: [Side; 2] = [Side::A, Side::B];

    pub fn other(self) -> Side {
        match self {
            Side::A => Side::B,
            Side::B => Side::A,
        }
    }

    pub fn flipped(self, flip: bool) -> Side {
        if flip {
            self.other()
        } else {
            self
        }
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct LeafSpaceGraph {
    pub vertices: Vec<String>,
    pub edges: Vec<Edge>,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
#[serde(rename_all = "SCREAMING_SNAKE_CASE")]
pub enum ViolationCode {
    Nonempty,
    DuplicateVertex,
    DuplicateEdge,
    UnknownVertex,
    DuplicateInEnd,
    Cycle,
    Degree,
    NotBranchPoint,
    Disconnected,
    TwoRegions,
}

impl ViolationCode {
    pub fn as_str(self) -> &'static str {
        match self {
            ViolationCode::Nonempty => "NONEMPTY",
            ViolationCode::DuplicateVertex => "DUPLICATE_VERTEX",
            ViolationCode::DuplicateEdge => "DUPLICATE_EDGE",
            ViolationCode::UnknownVertex => "UNKNOWN_VERTEX",
            ViolationCode::DuplicateInEnd => "DUPLICATE_IN_END",
            ViolationCode::Cycle => "CYCLE",
            ViolationCode::Degree => "DEGREE",
            ViolationCode::NotBranchPoint => "NOT_BRANCH_POINT",
            ViolationCode::Disconnected => "DISCONNECTED",
            ViolationCode::TwoRegions => "TWO_REGIONS",
        }
    }
}

impl fmt::Display for ViolationCode {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.as_str())
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct Violation {
    pub code: ViolationCode,
    pub message: String,
}

impl Violation {
    fn new(code: ViolationCode, message: impl Into<String>) -> Self {
        Self {
            code,
            message: message.into(),
        }
    }
}

impl fmt::Display for Violation {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}: {}", self.code, self.message)
    }
}

#[derive(Debug, Error, Clone, PartialEq)]
pub enum GraphError {
    #[error("invalid leaf space: {}", join_violations(.0))]
    Invalid(Vec<Violation>),
    #[error("internal consistency failure: {0}")]
    Internal(String),
}

fn join_violations(v: &[Violation]) -> String {
    v.iter()
        .map(|x| x.to_string())
        .collect::<Vec<_>>()
        .join("; ")
}

/// One occurrence of a vertex in an end list.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub(crate) struct Attachment {
    pub edge: usize,
    pub side: Side,
    pub pos: usize,
}

/// Index-based view of a graph; vertex indices follow `g.vertices`.
pub(crate) struct Indexed<'a> {
    pub graph: &'a LeafSpaceGraph,
    pub vertex_index: HashMap<&'a str, usize>,
    pub attachments: Vec<Vec<Attachment>>,
}

impl<'a> Indexed<'a> {
    /// Unknown vertex names in end lists are skipped.
    pub fn new(graph: &'a LeafSpaceGraph) -> Self {
        let vertex_index: HashMap<&str, usize> = graph
            .vertices
            .iter()
            .enumerate()
            .map(|(i, v)| (v.as_str(), i))
            .collect();
        let mut attachments = vec![Vec::new(); graph.vertices.len()];
        for (ei, e) in graph.edges.iter().enumerate() {
            for side in Side::BOTH {
                for (pos, v) in e.end(side).iter().enumerate() {
                    if let Some(&vi) = vertex_index.get(v.as_str()) {
                        attachments[vi].push(Attachment {
                            edge: ei,
                            side,
                            pos,
                        });
                    }
                }
            }
        }
        Self {
            graph,
            vertex_index,
            attachments,
        }
    }

    pub fn vertex(&self, name: &str) -> usize {
        self.vertex_index[name]
    }

    /// The attachment of `v` other than the one on edge `edge`.
    pub fn other_attachment(&self, v: usize, edge: usize) -> Option<Attachment> {
        self.attachments[v].iter().copied().find(|a| a.edge != edge)
    }

    pub fn end_indices(&self, edge: usize, side: Side) -> Vec<usize> {
        self.graph.edges[edge]
            .end(side)
            .iter()
            .map(|v| self.vertex(v))
            .collect()
    }
}

impl LeafSpaceGraph {
    pub fn new(vertices: &[&str], edges: Vec<Edge>) -> Self {
        Self {
            vertices: vertices.iter().map(|s| s.to_string()).collect(),
            edges,
        }
    }

    pub fn edge(&self, id: &str) -> Option<&Edge> {
        self.edges.iter().find(|e| e.id == id)
    }

    /// Every invariant violation; empty for a valid graph.
    pub fn validate(&self) -> Vec<Violation> {
        use ViolationCode::*;
        let mut out = Vec::new();
        if self.edges.is_empty() {
            out.push(Violation::new(
                Nonempty,
                "a leaf space needs at least one edge",
            ));
        }
        let mut seen = BTreeSet::new();
        for v in &self.vertices {
            if !seen.insert(v.as_str()) {
                out.push(Violation::new(
                    DuplicateVertex,
                    format!("vertex {v} declared twice"),
                ));
            }
        }
        let mut seen_edges = BTreeSet::new();
        for e in &self.edges {
            if !seen_edges.insert(e.id.as_str()) {
                out.push(Violation::new(
                    DuplicateEdge,
                    format!("edge {} declared twice", e.id),
                ));
            }
        }
        for e in &self.edges {
            for side in Side::BOTH {
                let mut in_end = BTreeSet::new();
                for v in e.end(side) {
                    if !seen.contains(v.as_str()) {
                        out.push(Violation::new(
                            UnknownVertex,
                            format!("edge {} lists undeclared vertex {v}", e.id),
                        ));
                    }
                    if !in_end.insert(v.as_str()) {
                        out.push(Violation::new(
                            DuplicateInEnd,
                            format!("vertex {v} repeated in one end of edge {}", e.id),
                        ));
                    }
                }
            }
            for v in &e.end_a {
                if e.end_b.contains(v) {
                    out.push(Violation::new(
                        Cycle,
                        format!("vertex {v} sits in both ends of edge {}", e.id),
                    ));
                }
            }
        }
        if !out.is_empty() {
            return out;
        }

        let idx = Indexed::new(self);
        for (vi, name) in self.vertices.iter().enumerate() {
            let att = &idx.attachments[vi];
            if att.len() != 2 || att[0].edge == att[1].edge {
                out.push(Violation::new(
                    Degree,
                    format!(
                        "vertex {name} has {} attachments; expected 2 on distinct edges",
                        att.len()
                    ),
                ));
            }
            let paired = att
                .iter()
                .any(|a| self.edges[a.edge].end(a.side).len() >= 2);
            if !paired {
                out.push(Violation::new(
                    NotBranchPoint,
                    format!("vertex {name} is not a branch point (never shares an end)"),
                ));
            }
        }

        // incidence multigraph: nodes 0..E are edges, E.. are vertices
        let n_edges = self.edges.len();
        let mut dsu = Dsu::new(n_edges + self.vertices.len());
        let mut cyclic = false;
        for (vi, atts) in idx.attachments.iter().enumerate() {
            for a in atts {
                if !dsu.union(a.edge, n_edges + vi) {
                    cyclic = true;
                }
            }
        }
        if cyclic {
            out.push(Violation::new(
                Cycle,
                "incidence structure contains a cycle",
            ));
        }
        if dsu.components() > 1 {
            out.push(Violation::new(
                Disconnected,
                "incidence structure is disconnected",
            ));
        }
        if out.is_empty() && self.region_count() == 2 {
            out.push(Violation::new(
                TwoRegions,
                "exactly two fundamental regions is impossible",
            ));
        }
        out
    }

    pub fn is_valid(&self) -> bool {
        self.validate().is_empty()
    }

    pub fn ensure_valid(&self) -> Result<(), GraphError> {
        let v = self.validate();
        if v.is_empty() {
            Ok(())
        } else {
            Err(GraphError::Invalid(v))
        }
    }

    /// Number of fundamental regions: one per edge, plus one per vertex
    /// that is never alone in an end list. A vertex alone at some end is
    /// the closed boundary of that adjacent region.
    pub fn region_count(&self) -> usize {
        let mut alone: BTreeSet<&str> = BTreeSet::new();
        for e in &self.edges {
            for side in Side::BOTH {
                if let [v] = e.end(side).as_slice() {
                    alone.insert(v.as_str());
                }
            }
        }
        self.edges.len()
            + self
                .vertices
                .iter()
                .filter(|v| !alone.contains(v.as_str()))
                .count()
    }

    /// Vertices that form fundamental regions of their own.
    pub fn own_region_vertices(&self) -> Vec<&str> {
        let mut alone: BTreeSet<&str> = BTreeSet::new();
        for e in &self.edges {
            for side in Side::BOTH {
                if let [v] = e.end(side).as_slice() {
                    alone.insert(v.as_str());
                }
            }
        }
        self.vertices
            .iter()
            .map(|s| s.as_str())
            .filter(|v| !alone.contains(v))
            .collect()
    }

    /// The same leaf space with the foliation orientation reversed: every
    /// end list is reversed.
    pub fn reverse_orientation(&self) -> LeafSpaceGraph {
        let mut g = self.clone();
        for e in &mut g.edges {
            e.end_a.reverse();
            e.end_b.reverse();
        }
        g
    }

    /// Renames vertices and edges; names missing from a map are kept.
    pub fn relabel(
        &self,
        vertex_names: &BTreeMap<String, String>,
        edge_names: &BTreeMap<String, String>,
    ) -> LeafSpaceGraph {
        let rv = |v: &String| vertex_names.get(v).cloned().unwrap_or_else(|| v.clone());
        LeafSpaceGraph {
            vertices: self.vertices.iter().map(rv).collect(),
            edges: self
                .edges
                .iter()
                .map(|e| Edge {
                    id: edge_names
                        .get(&e.id)
                        .cloned()
                        .unwrap_or_else(|| e.id.clone()),
                    end_a: e.end_a.iter().map(rv).collect(),
                    end_b: e.end_b.iter().map(rv).collect(),
                })
                .collect(),
        }
    }

    /// Canonical presentation order: vertices and edges sorted by id.
    pub fn sorted(&self) -> LeafSpaceGraph {
        let mut g = self.clone();
        g.vertices.sort();
        g.edges.sort_by(|a, b| a.id.cmp(&b.id));
        g
    }

    /// Pairs of mutually non-separable vertices (sharing an end list).
    pub fn nonseparable_pairs(&self) -> BTreeSet<(String, String)> {
        let mut out = BTreeSet::new();
        for e in &self.edges {
            for side in Side::BOTH {
                let end = e.end(side);
                for i in 0..end.len() {
                    for j in i + 1..end.len() {
                        let (a, b) = (end[i].clone(), end[j].clone());
                        out.insert(if a <= b { (a, b) } else { (b, a) });
                    }
                }
            }
        }
        out
    }
}

pub(crate) struct Dsu {
    parent: Vec<usize>,
}

impl Dsu {
    pub fn new(n: usize) -> Self {
        Self {
            parent: (0..n).collect(),
        }
    }

    pub fn find(&mut self, mut x: usize) -> usize {
        while self.parent[x] != x {
            self.parent[x] = self.parent[self.parent[x]];
            x = self.parent[x];
        }
        x
    }

    /// Returns false when `a` and `b` were already joined.
    pub fn union(&mut self, a: usize, b: usize) -> bool {
        let (ra, rb) = (self.find(a), self.find(b));
        if ra == rb {
            return false;
        }
        self.parent[ra] = rb;
        true
    }

    pub fn components(&mut self) -> usize {
        (0..self.parent.len())
            .filter(|&i| self.find(i) == i)
            .count()
    }
}

#[cfg(test)]
mod tests {
    use super::fixtures::*;
    use super::*;

    fn codes(g: &LeafSpaceGraph) -> Vec<ViolationCode> {
        g.validate().into_iter().map(|v| v.code).collect()
    }

    #[test]
    fn fixtures_are_valid() {
        for g in [
            reeb(),
            mirror_reeb(),
            translation(),
            double_reeb(),
            chain5(),
            f4_like(),
        ] {
            assert_eq!(g.validate(), vec![], "{g:?}");
        }
    }

    #[test]
    fn lonely_shared_vertex_is_not_a_branch_point() {
        let g = LeafSpaceGraph::new(
            &["v"],
            vec![Edge::new("e1", &[], &["v"]), Edge::new("e2", &["v"], &[])],
        );
        assert!(codes(&g).contains(&ViolationCode::NotBranchPoint));
    }

    #[test]
    fn vertex_in_both_ends_is_a_cycle() {
        let g = LeafSpaceGraph::new(
            &["u", "v"],
            vec![
                Edge::new("e1", &["v"], &["v", "u"]),
                Edge::new("e2", &["u"], &[]),
            ],
        );
        assert!(codes(&g).contains(&ViolationCode::Cycle));
    }

    #[test]
    fn empty_edge_list_rejected() {
        let g = LeafSpaceGraph::new(&[], vec![]);
        assert_eq!(codes(&g), vec![ViolationCode::Nonempty]);
    }

    #[test]
    fn unknown_and_duplicate_names() {
        let g = LeafSpaceGraph::new(
            &["a", "a"],
            vec![Edge::new("e", &["zz"], &[]), Edge::new("e", &[], &[])],
        );
        let c = codes(&g);
        assert!(c.contains(&ViolationCode::DuplicateVertex));
        assert!(c.contains(&ViolationCode::DuplicateEdge));
        assert!(c.contains(&ViolationCode::UnknownVertex));
    }

    #[test]
    fn incidence_cycle_detected() {
        // e1 and e2 joined through both u and v
        let g = LeafSpaceGraph::new(
            &["u", "v"],
            vec![
                Edge::new("e1", &[], &["u", "v"]),
                Edge::new("e2", &["u", "v"], &[]),
            ],
        );
        assert!(codes(&g).contains(&ViolationCode::Cycle));
    }

    #[test]
    fn disconnected_detected() {
        let g = LeafSpaceGraph::new(
            &[],
            vec![Edge::new("e1", &[], &[]), Edge::new("e2", &[], &[])],
        );
        assert!(codes(&g).contains(&ViolationCode::Disconnected));
    }

    #[test]
    fn degree_violation() {
        let g = LeafSpaceGraph::new(
            &["u", "v"],
            vec![
                Edge::new("e1", &[], &["u", "v"]),
                Edge::new("e2", &["u"], &[]),
            ],
        );
        assert!(codes(&g).contains(&ViolationCode::Degree));
    }

    #[test]
    fn region_counts() {
        assert_eq!(translation().region_count(), 1);
        assert_eq!(reeb().region_count(), 3);
        assert_eq!(double_reeb().region_count(), 5);
        assert_eq!(chain5().region_count(), 5);
        assert_eq!(double_reeb().own_region_vertices(), vec!["v2"]);
    }

    #[test]
    fn reversal_is_an_involution() {
        let r = reeb().reverse_orientation();
        assert_eq!(r.edge("eM").unwrap().end_b, vec!["vR", "vL"]);
        assert_eq!(r.reverse_orientation(), reeb());
        assert_eq!(translation().reverse_orientation(), translation());
    }
}

//! Extreme-edge classification and the contraction of a leaf space to a
//! point by repeated collapses.
//!
//! Each round first collapses the edges that were first-order extreme when
//! the round began, then every edge that is second-order extreme after
//! those collapses. A first-order collapse deletes the edge together with
//! its single boundary vertex. A second-order collapse deletes the edge and
//! its lexicographically smallest boundary vertex; the other vertices of
//! the collapsed end take that vertex's slot in the absorbing edge, so the
//! incidence structure stays a connected tree.

use std::collections::BTreeMap;

use serde::{Deserialize, Serialize};

use super::{Edge, GraphError, LeafSpaceGraph, Side};

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub enum EdgeClass {
    NonExtreme,
    FirstOrderExtreme,
    SecondOrderExtreme,
    /// Extreme with no boundary at all: only possible for a lone edge,
    /// which contracts directly to a point.
    FinalPointReady,
}

fn class_of(e: &Edge) -> EdgeClass {
    if !e.end_a.is_empty() && !e.end_b.is_empty() {
        return EdgeClass::NonExtreme;
    }
    match e.boundary_len() {
        0 => EdgeClass::FinalPointReady,
        1 => EdgeClass::FirstOrderExtreme,
        _ => EdgeClass::SecondOrderExtreme,
    }
}

/// Classifies every edge. Works on intermediate contraction states too.
pub fn classify_edges(g: &LeafSpaceGraph) -> BTreeMap<String, EdgeClass> {
    g.edges
        .iter()
        .map(|e| (e.id.clone(), class_of(e)))
        .collect()
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub enum StepKind {
    FirstOrder,
    SecondOrder,
    FinalPoint,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "camelCase")]
pub struct CollapseStep {
    pub round: usize,
    pub kind: StepKind,
    pub collapsed_edge: String,
    pub through_vertex: Option<String>,
    pub absorbing_edge: Option<String>,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct ContractionTrace {
    pub steps: Vec<CollapseStep>,
    /// The graph before the first round and after each round.
    pub states: Vec<LeafSpaceGraph>,
}

impl ContractionTrace {
    pub fn edge_counts(&self) -> Vec<usize> {
        self.states.iter().map(|g| g.edges.len()).collect()
    }

    pub fn rounds(&self) -> usize {
        self.steps.last().map_or(0, |s| s.round)
    }
}

pub fn collapse_sequence(g: &LeafSpaceGraph) -> Result<ContractionTrace, GraphError> {
    g.ensure_valid()?;
    let mut state = g.clone();
    let mut steps = Vec::new();
    let mut states = vec![state.clone()];
    let mut round = 1;
    loop {
        if state.edges.len() == 1 {
            steps.push(CollapseStep {
                round,
                kind: StepKind::FinalPoint,
                collapsed_edge: state.edges[0].id.clone(),
                through_vertex: None,
                absorbing_edge: None,
            });
            return Ok(ContractionTrace { steps, states });
        }
        if !steps.is_empty() {
            round += 1;
        }
        let before = state.edges.len();

        let first: Vec<String> = state
            .edges
            .iter()
            .filter(|e| class_of(e) == EdgeClass::FirstOrderExtreme)
            .map(|e| e.id.clone())
            .collect();
        for id in first {
            if state.edges.len() == 1 {
                break;
            }
            let still = state.edge(&id).map(class_of) == Some(EdgeClass::FirstOrderExtreme);
            if still {
                steps.push(collapse_edge(&mut state, &id, round, StepKind::FirstOrder)?);
            }
        }

        let second: Vec<String> = state
            .edges
            .iter()
            .filter(|e| class_of(e) == EdgeClass::SecondOrderExtreme)
            .map(|e| e.id.clone())
            .collect();
        for id in second {
            if state.edges.len() == 1 {
                break;
            }
            let still = state.edge(&id).map(class_of) == Some(EdgeClass::SecondOrderExtreme);
            if still {
                steps.push(collapse_edge(
                    &mut state,
                    &id,
                    round,
                    StepKind::SecondOrder,
                )?);
            }
        }

        if state.edges.len() >= before {
            return Err(GraphError::Internal(format!(
                "round {round} collapsed nothing with {before} edges left"
            )));
        }
        states.push(state.clone());
    }
}

fn collapse_edge(
    state: &mut LeafSpaceGraph,
    id: &str,
    round: usize,
    kind: StepKind,
) -> Result<CollapseStep, GraphError> {
    let ei = state
        .edges
        .iter()
        .position(|e| e.id == id)
        .ok_or_else(|| GraphError::Internal(format!("edge {id} vanished")))?;
    let edge = state.edges.remove(ei);
    let side = if edge.end_a.is_empty() {
        Side::B
    } else {
        Side::A
    };
    let end = edge.end(side).clone();
    let through = end
        .iter()
        .min()
        .cloned()
        .ok_or_else(|| GraphError::Internal(format!("edge {id} has no boundary vertex")))?;
    let inherited: Vec<String> = end.iter().filter(|v| **v != through).cloned().collect();

    let (absorber, aside, pos) = state
        .edges
        .iter()
        .enumerate()
        .find_map(|(i, e)| {
            Side::BOTH.into_iter().find_map(|s| {
                e.end(s)
                    .iter()
                    .position(|v| *v == through)
                    .map(|p| (i, s, p))
            })
        })
        .ok_or_else(|| {
            GraphError::Internal(format!("vertex {through} has no attachment besides {id}"))
        })?;
    let absorbing_id = state.edges[absorber].id.clone();
    state.edges[absorber]
        .end_mut(aside)
        .splice(pos..=pos, inherited);
    state.vertices.retain(|v| *v != through);

    Ok(CollapseStep {
        round,
        kind,
        collapsed_edge: edge.id,
        through_vertex: Some(through),
        absorbing_edge: Some(absorbing_id),
    })
}

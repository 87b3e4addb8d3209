//! Seeded random leaf spaces and isomorphism-preserving scrambles.

use std::collections::BTreeMap;

use rand::seq::SliceRandom;
use rand::Rng;

use super::{Edge, LeafSpaceGraph, Side};

/// Random valid leaf space with exactly `n_edges` edges (`n_edges != 2`;
/// two-edge leaf spaces do not exist). Retries until validation passes.
pub fn random_graph<R: Rng>(rng: &mut R, n_edges: usize) -> LeafSpaceGraph {
    assert!(
        n_edges >= 1 && n_edges != 2,
        "no valid leaf space has {n_edges} edges"
    );
    loop {
        let g = attempt(rng, n_edges);
        if g.is_valid() {
            return g;
        }
    }
}

fn attempt<R: Rng>(rng: &mut R, n_edges: usize) -> LeafSpaceGraph {
    let mut edges = vec![Edge::new("e0", &[], &[])];
    let mut vertices: Vec<String> = Vec::new();
    for i in 1..n_edges {
        let v = format!("v{}", i - 1);
        // Prefer ends holding a single vertex that still lacks a partner.
        let needy: Vec<(usize, Side)> = edges
            .iter()
            .enumerate()
            .flat_map(|(ei, e)| Side::BOTH.into_iter().map(move |s| (ei, s, e)))
            .filter(|(_, s, e)| e.end(*s).len() == 1 && is_lonely(&edges, &e.end(*s)[0]))
            .map(|(ei, s, _)| (ei, s))
            .collect();
        let (parent, pside) = if !needy.is_empty() && rng.gen_bool(0.75) {
            *needy.choose(rng).unwrap()
        } else {
            (
                rng.gen_range(0..edges.len()),
                if rng.gen_bool(0.5) { Side::A } else { Side::B },
            )
        };
        let list = edges[parent].end_mut(pside);
        let pos = rng.gen_range(0..=list.len());
        list.insert(pos, v.clone());
        let child = if rng.gen_bool(0.5) {
            Edge::new(&format!("e{i}"), &[&v], &[])
        } else {
            Edge::new(&format!("e{i}"), &[], &[&v])
        };
        edges.push(child);
        vertices.push(v);
    }
    LeafSpaceGraph { vertices, edges }
}

fn is_lonely(edges: &[Edge], v: &str) -> bool {
    !edges.iter().any(|e| {
        Side::BOTH
            .into_iter()
            .any(|s| e.end(s).len() >= 2 && e.end(s).iter().any(|x| x == v))
    })
}

/// Renames every id, shuffles presentation order and swaps the ends of
/// random edges. The result is isomorphic to `g`.
pub fn scramble<R: Rng>(rng: &mut R, g: &LeafSpaceGraph) -> LeafSpaceGraph {
    let mut vnames: Vec<String> = (0..g.vertices.len()).map(|i| format!("x{i}")).collect();
    vnames.shuffle(rng);
    let mut enames: Vec<String> = (0..g.edges.len()).map(|i| format!("f{i}")).collect();
    enames.shuffle(rng);
    let vmap: BTreeMap<String, String> = g.vertices.iter().cloned().zip(vnames).collect();
    let emap: BTreeMap<String, String> = g.edges.iter().map(|e| e.id.clone()).zip(enames).collect();
    let mut out = g.relabel(&vmap, &emap);
    for e in &mut out.edges {
        if rng.gen_bool(0.5) {
            std::mem::swap(&mut e.end_a, &mut e.end_b);
        }
    }
    out.edges.shuffle(rng);
    out.vertices.shuffle(rng);
    out
}

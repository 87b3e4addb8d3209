//! Test-only oracles, independent of the library's search routines.

#![allow(dead_code)]

use std::collections::HashMap;

use flowleaf::graph::LeafSpaceGraph;

/// Exhaustive search over edge bijections and end flips. Vertex images are
/// read off positionally from the end lists and must stay injective.
pub fn brute_force_isomorphic(g1: &LeafSpaceGraph, g2: &LeafSpaceGraph) -> bool {
    if g1.edges.len() != g2.edges.len() || g1.vertices.len() != g2.vertices.len() {
        return false;
    }
    let mut used = vec![false; g2.edges.len()];
    assign(g1, g2, 0, &mut used, &HashMap::new(), &HashMap::new())
}

fn assign(
    g1: &LeafSpaceGraph,
    g2: &LeafSpaceGraph,
    i: usize,
    used: &mut [bool],
    fwd: &HashMap<String, String>,
    back: &HashMap<String, String>,
) -> bool {
    if i == g1.edges.len() {
        return fwd.len() == g1.vertices.len();
    }
    let src = &g1.edges[i];
    for f in 0..g2.edges.len() {
        if used[f] {
            continue;
        }
        let dst = &g2.edges[f];
        for flip in [false, true] {
            let (da, db) = if flip {
                (&dst.end_b, &dst.end_a)
            } else {
                (&dst.end_a, &dst.end_b)
            };
            if src.end_a.len() != da.len() || src.end_b.len() != db.len() {
                continue;
            }
            let mut fwd2 = fwd.clone();
            let mut back2 = back.clone();
            let consistent = src
                .end_a
                .iter()
                .zip(da)
                .chain(src.end_b.iter().zip(db))
                .all(|(v, w)| {
                    let ok_f = fwd2.get(v).is_none_or(|x| x == w);
                    let ok_b = back2.get(w).is_none_or(|x| x == v);
                    fwd2.insert(v.clone(), w.clone());
                    back2.insert(w.clone(), v.clone());
                    ok_f && ok_b
                });
            if !consistent {
                continue;
            }
            used[f] = true;
            if assign(g1, g2, i + 1, used, &fwd2, &back2) {
                used[f] = false;
                return true;
            }
            used[f] = false;
        }
    }
    false
}

//! Order-preserving isomorphisms between leaf spaces.
//!
//! Because the incidence structure is a tree and every vertex sits on
//! exactly two edges, choosing the image of one edge (and whether its ends
//! are swapped) forces the image of everything else. The search therefore
//! tries each target edge with both end orientations and propagates.

use std::collections::{BTreeMap, VecDeque};

use serde::{Deserialize, Serialize};

use super::{GraphError, Indexed, LeafSpaceGraph, Side};

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "camelCase")]
pub struct Isomorphism {
    pub edge_map: BTreeMap<String, String>,
    /// `true` when the edge's `endA`/`endB` land on the target's `endB`/`endA`.
    pub end_flip: BTreeMap<String, bool>,
    pub vertex_map: BTreeMap<String, String>,
}

impl Isomorphism {
    /// Applies the maps to `g`, producing the target graph up to the
    /// presentation order of edges and vertices.
    pub fn apply(&self, g: &LeafSpaceGraph) -> LeafSpaceGraph {
        let mut out = g.relabel(&self.vertex_map, &self.edge_map);
        for (edge, src) in out.edges.iter_mut().zip(&g.edges) {
            if self.end_flip.get(&src.id).copied().unwrap_or(false) {
                std::mem::swap(&mut edge.end_a, &mut edge.end_b);
            }
        }
        out
    }

    /// Whether applying the maps to `source` reproduces `target` exactly.
    pub fn verify(&self, source: &LeafSpaceGraph, target: &LeafSpaceGraph) -> bool {
        self.apply(source).sorted() == target.sorted()
    }
}

/// Finds an order-preserving isomorphism from `g1` to `g2`, if one exists.
pub fn is_isomorphic(
    g1: &LeafSpaceGraph,
    g2: &LeafSpaceGraph,
) -> Result<Option<Isomorphism>, GraphError> {
    g1.ensure_valid()?;
    g2.ensure_valid()?;
    Ok(find_isomorphism(g1, g2))
}

pub(crate) fn find_isomorphism(g1: &LeafSpaceGraph, g2: &LeafSpaceGraph) -> Option<Isomorphism> {
    if g1.edges.len() != g2.edges.len() || g1.vertices.len() != g2.vertices.len() {
        return None;
    }
    let (i1, i2) = (Indexed::new(g1), Indexed::new(g2));
    for target in 0..g2.edges.len() {
        for flip in [false, true] {
            if let Some(iso) = propagate(&i1, &i2, target, flip) {
                return Some(iso);
            }
        }
    }
    None
}

fn propagate(i1: &Indexed, i2: &Indexed, target: usize, flip: bool) -> Option<Isomorphism> {
    let (g1, g2) = (i1.graph, i2.graph);
    let mut edge_img: Vec<Option<(usize, bool)>> = vec![None; g1.edges.len()];
    let mut edge_used = vec![false; g2.edges.len()];
    let mut vert_img: Vec<Option<usize>> = vec![None; g1.vertices.len()];
    let mut vert_used = vec![false; g2.vertices.len()];

    edge_img[0] = Some((target, flip));
    edge_used[target] = true;
    let mut queue = VecDeque::from([0usize]);
    while let Some(e) = queue.pop_front() {
        let (f, flip) = edge_img[e]?;
        for side in Side::BOTH {
            let src = i1.end_indices(e, side);
            let dst = i2.end_indices(f, side.flipped(flip));
            if src.len() != dst.len() {
                return None;
            }
            for (&v, &w) in src.iter().zip(&dst) {
                match vert_img[v] {
                    Some(img) if img != w => return None,
                    Some(_) => continue,
                    None => {
                        if vert_used[w] {
                            return None;
                        }
                        vert_img[v] = Some(w);
                        vert_used[w] = true;
                    }
                }
                let a = i1.other_attachment(v, e)?;
                let b = i2.other_attachment(w, f)?;
                if a.pos != b.pos {
                    return None;
                }
                let next_flip = a.side != b.side;
                match edge_img[a.edge] {
                    Some(existing) if existing != (b.edge, next_flip) => return None,
                    Some(_) => {}
                    None => {
                        if edge_used[b.edge] {
                            return None;
                        }
                        edge_img[a.edge] = Some((b.edge, next_flip));
                        edge_used[b.edge] = true;
                        queue.push_back(a.edge);
                    }
                }
            }
        }
    }

    let mut iso = Isomorphism {
        edge_map: BTreeMap::new(),
        end_flip: BTreeMap::new(),
        vertex_map: BTreeMap::new(),
    };
    for (e, img) in edge_img.iter().enumerate() {
        let (f, flip) = (*img)?;
        iso.edge_map
            .insert(g1.edges[e].id.clone(), g2.edges[f].id.clone());
        iso.end_flip.insert(g1.edges[e].id.clone(), flip);
    }
    for (v, img) in vert_img.iter().enumerate() {
        iso.vertex_map
            .insert(g1.vertices[v].clone(), g2.vertices[(*img)?].clone());
    }
    Some(iso)
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "camelCase")]
pub enum Branch {
    /// `g1` matched `g2` as given.
    Direct,
    /// `g1` matched `g2` with its orientation reversed.
    Reversed,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(tag = "verdict", rename_all = "PascalCase")]
pub enum Equivalence {
    ConjugateUpToInverse {
        branch: Branch,
        witness: Isomorphism,
    },
    NotConjugate {
        regions: (usize, usize),
    },
}

impl Equivalence {
    pub fn is_conjugate(&self) -> bool {
        matches!(self, Equivalence::ConjugateUpToInverse { .. })
    }
}

/// Decides whether the free mappings whose leaf spaces are `g1` and `g2`
/// are conjugate, possibly after inverting one of them.
pub fn decide_equivalence(
    g1: &LeafSpaceGraph,
    g2: &LeafSpaceGraph,
) -> Result<Equivalence, GraphError> {
    g1.ensure_valid()?;
    g2.ensure_valid()?;
    if let Some(witness) = find_isomorphism(g1, g2) {
        return Ok(Equivalence::ConjugateUpToInverse {
            branch: Branch::Direct,
            witness,
        });
    }
    if let Some(witness) = find_isomorphism(g1, &g2.reverse_orientation()) {
        return Ok(Equivalence::ConjugateUpToInverse {
            branch: Branch::Reversed,
            witness,
        });
    }
    Ok(Equivalence::NotConjugate {
        regions: (g1.region_count(), g2.region_count()),
    })
}

#[cfg(test)]
mod tests {
    use super::super::fixtures::*;
    use super::super::Edge;
    use super::*;

    #[test]
    fn identity_witness_for_reeb() {
        let iso = is_isomorphic(&reeb(), &reeb()).unwrap().unwrap();
        assert!(iso.vertex_map.iter().all(|(k, v)| k == v));
        assert!(iso.edge_map.iter().all(|(k, v)| k == v));
        assert!(iso.end_flip.values().all(|f| !f));
    }

    #[test]
    fn reeb_and_translation_differ() {
        assert_eq!(is_isomorphic(&reeb(), &translation()).unwrap(), None);
    }

    #[test]
    fn mirror_swaps_sides() {
        let iso = is_isomorphic(&reeb(), &mirror_reeb()).unwrap().unwrap();
        assert_eq!(iso.edge_map["eL"], "eR");
        assert_eq!(iso.edge_map["eR"], "eL");
        assert_eq!(iso.vertex_map["vL"], "vR");
        assert_eq!(iso.vertex_map["vR"], "vL");
        assert!(iso.verify(&reeb(), &mirror_reeb()));
    }

    #[test]
    fn reversal_witness_for_reeb() {
        let g = reeb();
        let iso = is_isomorphic(&g, &g.reverse_orientation())
            .unwrap()
            .unwrap();
        assert!(iso.verify(&g, &g.reverse_orientation()));
    }

    #[test]
    fn order_reversal_is_not_an_isomorphism() {
        // e2 ≅ e2 only if the order can be reversed, which is forbidden.
        let g = f4_like();
        let asym = LeafSpaceGraph::new(
            &["a", "b", "c", "d"],
            vec![
                Edge::new("e1", &[], &["a"]),
                Edge::new("e2", &[], &["b", "a"]),
                Edge::new("e3", &["b"], &["c", "d"]),
                Edge::new("e4", &["c"], &[]),
                Edge::new("e5", &["d"], &[]),
            ],
        );
        assert_eq!(is_isomorphic(&g, &asym).unwrap(), None);
    }

    #[test]
    fn decisions_on_fixtures() {
        let v = decide_equivalence(&translation(), &reeb()).unwrap();
        assert_eq!(v, Equivalence::NotConjugate { regions: (1, 3) });
        assert!(decide_equivalence(&reeb(), &mirror_reeb())
            .unwrap()
            .is_conjugate());
        let v = decide_equivalence(&double_reeb(), &chain5()).unwrap();
        assert_eq!(v, Equivalence::NotConjugate { regions: (5, 5) });
    }

    #[test]
    fn invalid_input_is_an_error() {
        let bad = LeafSpaceGraph::new(&[], vec![]);
        assert!(is_isomorphic(&bad, &reeb()).is_err());
        assert!(decide_equivalence(&reeb(), &bad).is_err());
    }
}

//! Canonical strings for leaf spaces.
//!
//! The incidence tree is serialized from every edge taken as root, with
//! both orientations of the root's ends; the lexicographically smallest
//! serialization is the canonical form. Below the root, the end through
//! which an edge is entered is fixed, so the serialization is forced. End
//! lists are written in order, never sorted: the order is structure.

use super::{GraphError, Indexed, LeafSpaceGraph, Side};

pub fn canonical_form(g: &LeafSpaceGraph) -> Result<String, GraphError> {
    g.ensure_valid()?;
    let idx = Indexed::new(g);
    let best = (0..g.edges.len())
        .map(|root| {
            let a = end_code(&idx, root, Side::A, None);
            let b = end_code(&idx, root, Side::B, None);
            let (first, second) = if a <= b { (a, b) } else { (b, a) };
            format!("{{{first};{second}}}")
        })
        .min()
        .unwrap_or_default();
    Ok(best)
}

/// Serializes one end of `edge`. `entry` marks the position through which
/// the traversal arrived; that slot is written as `*`.
fn end_code(idx: &Indexed, edge: usize, side: Side, entry: Option<usize>) -> String {
    let items: Vec<String> = idx
        .end_indices(edge, side)
        .into_iter()
        .enumerate()
        .map(|(pos, v)| {
            if entry == Some(pos) {
                "*".to_string()
            } else {
                vertex_code(idx, v, edge)
            }
        })
        .collect();
    format!("({})", items.join(","))
}

fn vertex_code(idx: &Indexed, v: usize, from_edge: usize) -> String {
    let next = idx
        .other_attachment(v, from_edge)
        .expect("validated vertex has two attachments");
    let near = end_code(idx, next.edge, next.side, Some(next.pos));
    let far = end_code(idx, next.edge, next.side.other(), None);
    format!("v[{near};{far}]")
}

#[cfg(test)]
mod tests {
    use super::super::fixtures::*;
    use super::*;

    #[test]
    fn mirror_and_reeb_agree() {
        assert_eq!(
            canonical_form(&reeb()).unwrap(),
            canonical_form(&mirror_reeb()).unwrap()
        );
    }

    #[test]
    fn distinguishes_fixtures() {
        let forms: Vec<String> = [translation(), reeb(), double_reeb(), chain5(), f4_like()]
            .iter()
            .map(|g| canonical_form(g).unwrap())
            .collect();
        for i in 0..forms.len() {
            for j in i + 1..forms.len() {
                assert_ne!(forms[i], forms[j]);
            }
        }
    }

    #[test]
    fn translation_form() {
        assert_eq!(canonical_form(&translation()).unwrap(), "{();()}");
    }
}

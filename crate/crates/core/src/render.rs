//! Deterministic SVG output for foliations and leaf spaces.
//!
//! Every coordinate is written with 17 significant digits, so equal inputs
//! give byte-identical files.

use std::collections::{BTreeMap, BTreeSet};
use std::fmt::Write as _;

use crate::flow::{build_leaf_space_detailed, sample_leaf, Flow, FlowError, FlowSpec, LeafWindow};
use crate::geom::{Point, Rect};
use crate::graph::{ContractionTrace, GraphError, LeafSpaceGraph, Side};

const CANVAS: f64 = 600.0;
const MARGIN: f64 = 20.0;

fn num(v: f64) -> String {
    format!("{v:.16e}")
}

fn escape(s: &str) -> String {
    s.replace('&', "&amp;")
        .replace('<', "&lt;")
        .replace('>', "&gt;")
        .replace('"', "&quot;")
}

fn header(out: &mut String, w: f64, h: f64) {
    let _ = writeln!(
        out,
        r#"<svg xmlns="http://www.w3.org/2000/svg" version="1.1" width="{}" height="{}" viewBox="0 0 {} {}">"#,
        num(w),
        num(h),
        num(w),
        num(h)
    );
    out.push_str(
        "<style>.leaf{fill:none;stroke:#555;stroke-width:1}.vertex-leaf{fill:none;stroke:#c22;stroke-width:2.5}\
.arrow{fill:#333}.edge{stroke:#234;stroke-width:3}.link{stroke:#999;stroke-dasharray:4 3}\
.vertex{fill:#fff;stroke:#234;stroke-width:2}.own-region{fill:#c22}text{font:11px sans-serif}</style>\n",
    );
}

fn polyline(out: &mut String, class: &str, pts: &[Point]) {
    let coords: Vec<String> = pts
        .iter()
        .map(|p| format!("{},{}", num(p.x), num(p.y)))
        .collect();
    let _ = writeln!(
        out,
        r#"<polyline class="{class}" points="{}"/>"#,
        coords.join(" ")
    );
}

fn arrow(out: &mut String, pts: &[Point]) {
    if pts.len() < 2 {
        return;
    }
    let m = pts.len() / 2;
    let (a, b) = (pts[m.saturating_sub(1)], pts[(m + 1).min(pts.len() - 1)]);
    let d = b - a;
    let len = d.norm();
    if len == 0.0 {
        return;
    }
    let u = d * (1.0 / len);
    let n = Point::new(-u.y, u.x);
    let c = pts[m];
    let tip = c + u * 6.0;
    let l = c - u * 4.0 + n * 4.0;
    let r = c - u * 4.0 - n * 4.0;
    let _ = writeln!(
        out,
        r#"<polygon class="arrow" points="{},{} {},{} {},{}"/>"#,
        num(tip.x),
        num(tip.y),
        num(l.x),
        num(l.y),
        num(r.x),
        num(r.y)
    );
}

struct View {
    region: Rect,
    scale: f64,
}

impl View {
    fn new(region: Rect) -> Self {
        let scale = CANVAS / region.width().max(region.height());
        Self { region, scale }
    }

    fn px(&self, p: Point) -> Point {
        Point::new(
            MARGIN + (p.x - self.region.x_min) * self.scale,
            MARGIN + (self.region.y_max - p.y) * self.scale,
        )
    }
}

/// Pieces of the sampled polyline that lie inside `region`.
fn clip_runs(points: &[Point], region: &Rect) -> Vec<Vec<Point>> {
    let mut runs = Vec::new();
    let mut cur = Vec::new();
    for &p in points {
        if region.contains(p) {
            cur.push(p);
        } else if !cur.is_empty() {
            runs.push(std::mem::take(&mut cur));
        }
    }
    if !cur.is_empty() {
        runs.push(cur);
    }
    runs.retain(|r| r.len() >= 2);
    runs
}

/// Draws `density` sampled leaves across `region`, plus every boundary
/// line of a band flow; lines that are branch points get the
/// `vertex-leaf` class.
pub fn render_foliation(
    spec: &FlowSpec,
    region: Rect,
    density: usize,
) -> Result<String, FlowError> {
    if !region.is_proper() || density == 0 {
        return Err(FlowError::BadArgument(
            "need a proper region and density >= 1".into(),
        ));
    }
    let view = View::new(region);
    let (w, h) = (region.width(), region.height());
    let center = Point::new(region.x_min + 0.5 * w, region.y_min + 0.5 * h);
    let diag = w.hypot(h);
    let max_step = w.min(h) / 150.0;

    let mut out = String::new();
    header(
        &mut out,
        2.0 * MARGIN + w * view.scale,
        2.0 * MARGIN + h * view.scale,
    );

    let (seeds, window) = match spec {
        FlowSpec::Translation(v) => {
            let n = Point::new(-v.y, v.x) * (1.0 / v.norm());
            let extent = n.x.abs() * w + n.y.abs() * h;
            let seeds = (0..density)
                .map(|i| center + n * (((i as f64 + 0.5) / density as f64 - 0.5) * extent))
                .collect::<Vec<_>>();
            let t = diag / v.norm();
            (seeds, LeafWindow::new(-t, t, max_step))
        }
        FlowSpec::Bands(_) => {
            let seeds = (0..density)
                .map(|i| {
                    Point::new(
                        region.x_min + (i as f64 + 0.5) * w / density as f64,
                        center.y,
                    )
                })
                .collect::<Vec<_>>();
            let t = 2.0 * diag + 10.0;
            (seeds, LeafWindow::new(-t, t, max_step))
        }
    };
    for seed in seeds {
        let leaf = sample_leaf(spec, seed, window)?;
        for run in clip_runs(&leaf.points, &region) {
            let pts: Vec<Point> = run.iter().map(|&p| view.px(p)).collect();
            polyline(&mut out, "leaf", &pts);
            arrow(&mut out, &pts);
        }
    }
    if let FlowSpec::Bands(b) = spec {
        let built = build_leaf_space_detailed(spec);
        for (i, line) in b.lines().iter().enumerate() {
            if line.x < region.x_min || line.x > region.x_max {
                continue;
            }
            let class = if built.line_vertex[i].is_some() {
                "vertex-leaf"
            } else {
                "leaf"
            };
            let (lo, hi) = (
                Point::new(line.x, region.y_min),
                Point::new(line.x, region.y_max),
            );
            let pts = if line.dir > 0 { [lo, hi] } else { [hi, lo] };
            let mid = spec.flow_map(0.0, Point::new(line.x, center.y))?;
            let pts = [view.px(pts[0]), view.px(mid), view.px(pts[1])];
            polyline(&mut out, class, &pts);
            arrow(&mut out, &pts);
        }
    }
    out.push_str("</svg>\n");
    Ok(out)
}

const SEG: f64 = 120.0;
const COL: f64 = 190.0;
const ROW: f64 = 70.0;
const STACK: f64 = 16.0;

struct Placed {
    col: i64,
    row: usize,
}

struct Glyph {
    name: String,
    at: GlyphKey,
}

/// Glyph position: column, row, right end of the edge, index in the stack.
type GlyphKey = (i64, usize, bool, usize);

struct Layout {
    edges: BTreeMap<usize, Placed>,
    glyphs: Vec<Glyph>,
    /// From a vertex glyph to the entry end (`edge`, drawn on the right?).
    links: Vec<(GlyphKey, (usize, bool))>,
    orders: Vec<(i64, usize, bool, String)>,
}

fn attachments(g: &LeafSpaceGraph) -> BTreeMap<&str, Vec<(usize, Side, usize)>> {
    let mut at: BTreeMap<&str, Vec<(usize, Side, usize)>> = BTreeMap::new();
    for (ei, e) in g.edges.iter().enumerate() {
        for side in Side::BOTH {
            for (pos, v) in e.end(side).iter().enumerate() {
                at.entry(v.as_str()).or_default().push((ei, side, pos));
            }
        }
    }
    at
}

fn layout(g: &LeafSpaceGraph) -> Layout {
    let at = attachments(g);
    let mut lay = Layout {
        edges: BTreeMap::new(),
        glyphs: Vec::new(),
        links: Vec::new(),
        orders: Vec::new(),
    };
    let mut drawn: BTreeSet<&str> = BTreeSet::new();
    let mut next_row = 0;
    let mut stack: Vec<(usize, i64, bool)> = Vec::new();
    for root in 0..g.edges.len() {
        if lay.edges.contains_key(&root) {
            continue;
        }
        stack.push((root, 0, false));
        while let Some((e, col, a_right)) = stack.pop() {
            if lay.edges.contains_key(&e) {
                continue;
            }
            let row = next_row;
            next_row += 1;
            lay.edges.insert(e, Placed { col, row });
            let mut children = Vec::new();
            for side in Side::BOTH {
                let list = g.edges[e].end(side);
                // the end drawn on the right is endB unless flipped
                let right = (side == Side::B) != a_right;
                if list.len() >= 2 {
                    lay.orders.push((col, row, right, list.join(" < ")));
                }
                for (k, v) in list.iter().enumerate() {
                    if !drawn.insert(v.as_str()) {
                        continue;
                    }
                    lay.glyphs.push(Glyph {
                        name: v.clone(),
                        at: (col, row, right, k),
                    });
                    let other = at[v.as_str()].iter().find(|a| a.0 != e);
                    if let Some(&(child, cside, _)) = other {
                        if lay.edges.contains_key(&child) {
                            continue;
                        }
                        let ccol = if right { col + 1 } else { col - 1 };
                        // the entry end faces back towards this edge
                        let c_a_right = if right {
                            cside == Side::B
                        } else {
                            cside == Side::A
                        };
                        children.push((child, ccol, c_a_right, cside, (col, row, right, k)));
                    }
                }
            }
            for (child, ccol, c_a_right, cside, from) in children.into_iter().rev() {
                let entry_right = (cside == Side::B) != c_a_right;
                lay.links.push((from, (child, entry_right)));
                stack.push((child, ccol, c_a_right));
            }
        }
    }
    lay
}

fn emit_graph(g: &LeafSpaceGraph, title: Option<&str>) -> String {
    let lay = layout(g);
    let min_col = lay.edges.values().map(|p| p.col).min().unwrap_or(0);
    let max_col = lay.edges.values().map(|p| p.col).max().unwrap_or(0);
    let rows = lay.edges.len().max(1);
    let top = if title.is_some() { 30.0 } else { 0.0 };
    let width = 2.0 * MARGIN + (max_col - min_col) as f64 * COL + SEG;
    let height = 2.0 * MARGIN + top + rows as f64 * ROW;
    let x_of = |col: i64| MARGIN + (col - min_col) as f64 * COL;
    let y_of = |row: usize| MARGIN + top + row as f64 * ROW + 20.0;
    let end_pt = |col: i64, row: usize, right: bool| {
        Point::new(x_of(col) + if right { SEG } else { 0.0 }, y_of(row))
    };
    let glyph_pt = |(col, row, right, k): GlyphKey| {
        end_pt(col, row, right) + Point::new(0.0, k as f64 * STACK)
    };

    let own: BTreeSet<&str> = g.own_region_vertices().into_iter().collect();
    let mut out = String::new();
    header(&mut out, width, height);
    if let Some(t) = title {
        let _ = writeln!(
            out,
            r#"<text class="title" x="{}" y="{}">{}</text>"#,
            num(MARGIN),
            num(MARGIN + 10.0),
            escape(t)
        );
    }
    for (&e, p) in &lay.edges {
        let (a, b) = (end_pt(p.col, p.row, false), end_pt(p.col, p.row, true));
        let id = escape(&g.edges[e].id);
        let _ = writeln!(
            out,
            r#"<line class="edge" data-id="{id}" x1="{}" y1="{}" x2="{}" y2="{}"/>"#,
            num(a.x),
            num(a.y),
            num(b.x),
            num(b.y)
        );
        let _ = writeln!(
            out,
            r#"<text class="edge-label" x="{}" y="{}">{id}</text>"#,
            num(0.5 * (a.x + b.x) - 8.0),
            num(a.y - 8.0)
        );
    }
    for (from, (child, right)) in &lay.links {
        let p = &lay.edges[child];
        let (a, b) = (glyph_pt(*from), end_pt(p.col, p.row, *right));
        let _ = writeln!(
            out,
            r#"<line class="link" x1="{}" y1="{}" x2="{}" y2="{}"/>"#,
            num(a.x),
            num(a.y),
            num(b.x),
            num(b.y)
        );
    }
    for gl in &lay.glyphs {
        let p = glyph_pt(gl.at);
        let class = if own.contains(gl.name.as_str()) {
            "vertex own-region"
        } else {
            "vertex"
        };
        let name = escape(&gl.name);
        let _ = writeln!(
            out,
            r#"<circle class="{class}" data-id="{name}" cx="{}" cy="{}" r="5"/>"#,
            num(p.x),
            num(p.y)
        );
        let _ = writeln!(
            out,
            r#"<text class="vertex-label" x="{}" y="{}">{name}</text>"#,
            num(p.x + 8.0),
            num(p.y + 4.0)
        );
    }
    for (col, row, right, label) in &lay.orders {
        let p = end_pt(*col, *row, *right);
        let _ = writeln!(
            out,
            r#"<text class="order" x="{}" y="{}">{}</text>"#,
            num(p.x - 20.0),
            num(p.y - 22.0),
            escape(label)
        );
    }
    out.push_str("</svg>\n");
    out
}

/// Tree drawing of a leaf space: one segment per edge, one glyph per
/// vertex, and a `u < v` label for every end holding several vertices.
pub fn render_leafspace(g: &LeafSpaceGraph) -> Result<String, GraphError> {
    g.ensure_valid()?;
    Ok(emit_graph(g, None))
}

/// One frame per contraction state.
pub fn render_collapse_frames(trace: &ContractionTrace) -> Vec<String> {
    trace
        .states
        .iter()
        .enumerate()
        .map(|(i, g)| {
            let title = if i == 0 {
                "initial".to_string()
            } else {
                format!("after round {i}")
            };
            emit_graph(g, Some(&title))
        })
        .collect()
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::flow::fixtures::*;
    use crate::graph::{collapse_sequence, fixtures};

    fn count(s: &str, pat: &str) -> usize {
        s.matches(pat).count()
    }

    #[test]
    fn reeb_foliation() {
        let r = Rect::new(-3.0, 3.0, -3.0, 3.0);
        let svg = render_foliation(&reeb_flow(), r, 9).unwrap();
        assert!(count(&svg, r#"<polyline class="leaf""#) >= 9);
        assert_eq!(count(&svg, r#"<polyline class="vertex-leaf""#), 2);
        assert_eq!(svg, render_foliation(&reeb_flow(), r, 9).unwrap());
    }

    #[test]
    fn translation_foliation_has_no_highlights() {
        let svg = render_foliation(
            &translation_flow(1.0, 0.0),
            Rect::new(-3.0, 3.0, -3.0, 3.0),
            5,
        )
        .unwrap();
        assert_eq!(count(&svg, "vertex-leaf\""), 0);
        assert!(count(&svg, r#"class="leaf""#) >= 5);
    }

    #[test]
    fn leafspace_glyph_counts() {
        let svg = render_leafspace(&fixtures::reeb()).unwrap();
        assert_eq!(count(&svg, r#"class="edge""#), 3);
        assert_eq!(count(&svg, r#"<circle class="vertex""#), 2);
        assert!(svg.contains("vL &lt; vR"));

        let svg = render_leafspace(&fixtures::translation()).unwrap();
        assert_eq!(count(&svg, r#"class="edge""#), 1);
        assert_eq!(count(&svg, "<circle"), 0);

        let svg = render_leafspace(&fixtures::double_reeb()).unwrap();
        assert_eq!(count(&svg, r#"class="edge""#), 4);
        assert_eq!(count(&svg, r#"class="vertex own-region""#), 1);
        assert_eq!(count(&svg, "<circle"), 3);
    }

    #[test]
    fn every_edge_and_vertex_once_for_f4() {
        let g = fixtures::f4_like();
        let svg = render_leafspace(&g).unwrap();
        for e in &g.edges {
            assert_eq!(
                count(&svg, &format!(r#"class="edge" data-id="{}""#, e.id)),
                1
            );
        }
        for v in &g.vertices {
            assert_eq!(count(&svg, &format!(r#"data-id="{v}" cx"#)), 1);
        }
    }

    #[test]
    fn frames_per_round() {
        let t = collapse_sequence(&fixtures::double_reeb()).unwrap();
        let frames = render_collapse_frames(&t);
        assert_eq!(frames.len(), 3);
        assert_eq!(count(&frames[2], r#"class="edge""#), 1);
    }
}

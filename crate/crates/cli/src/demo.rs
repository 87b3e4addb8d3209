use anyhow::Result;
use flowleaf::flow::{build_leaf_space, codivergence_classes, trivialization_coord};
use flowleaf::graph::{canonical_form, collapse_sequence, decide_equivalence, is_isomorphic};
use flowleaf::io::{serialize_flowspec, serialize_leafspace};
use flowleaf::maps::transport_band_spec;
use flowleaf::{Flow, PlaneMap, Point};
use serde_json::json;

use crate::output::{load_flowspec, num, print_json};
use crate::verify::{class_checks, default_maps, group_law, transport, Check, SuiteReport};
use crate::Verdict;

/// Spec, leaf space, collapse, reversal and numerical checks for one flow.
pub fn run(arg: &str, json: bool) -> Result<Verdict> {
    let spec = load_flowspec(arg)?;
    let g = build_leaf_space(&spec);
    let trace = collapse_sequence(&g)?;
    let reversed = g.reverse_orientation();
    let symmetric = is_isomorphic(&g, &reversed)?.is_some();
    let reflected =
        transport_band_spec(&PlaneMap::ReflectionY {}, &spec).map(|r| build_leaf_space(&r));

    let mut checks = vec![
        Check::new(
            "reversed flow gives reversed leaf space",
            build_leaf_space(&spec.reversed()) == reversed,
            "build(reversed spec) == reverse(build(spec))",
        ),
        Check::new(
            "collapse ends at a point",
            trace.states.last().is_some_and(|s| s.edges.len() == 1),
            format!("edge counts by round {:?}", trace.edge_counts()),
        ),
    ];
    if let Some(r) = &reflected {
        checks.push(Check::new(
            "reflection (x, y) -> (x, -y) gives a conjugate flow",
            decide_equivalence(&g, r)?.is_conjugate(),
            format!("reflected leaf space {}", serialize_leafspace(r)),
        ));
    }
    checks.push(group_law(&spec, 0, 100, 1e-6)?);
    let base: Vec<Point> = (0..10)
        .map(|i| Point::new(-4.5 + i as f64, 0.5 * i as f64 - 2.0))
        .collect();
    checks.extend(transport(&spec, &default_maps(), &base, 0.01, 1e-3)?);
    checks.extend(class_checks(&spec, 30)?);
    let p = Point::new(0.25, 0.5);
    let c0 = trivialization_coord(&spec, p)?;
    let c1 = trivialization_coord(&spec, spec.time_one_map(p)?)?;
    let drift = (c1.phase - c0.phase).rem_euclid(1.0);
    checks.push(Check::below(
        "phase invariant under the time-one map",
        drift.min(1.0 - drift),
        1e-6,
    ));
    let report = SuiteReport::new("demo", checks);

    if json {
        print_json(&json!({
            "spec": serde_json::from_str::<serde_json::Value>(&serialize_flowspec(&spec))?,
            "leafSpace": g,
            "regions": g.region_count(),
            "canonicalForm": canonical_form(&g)?,
            "collapse": trace.steps,
            "symmetricUnderReversal": symmetric,
            "checks": report.checks,
            "passed": report.passed,
        }))?;
        return Ok(report.passed.into());
    }

    println!("== flow spec");
    println!("{}", serialize_flowspec(&spec));
    println!("\n== leaf space");
    println!("{}", serialize_leafspace(&g));
    println!(
        "{} edges, {} vertices, {} regions",
        g.edges.len(),
        g.vertices.len(),
        g.region_count()
    );
    let own = g.own_region_vertices();
    if !own.is_empty() {
        println!("vertices that are regions of their own: {}", own.join(", "));
    }
    println!("\n== collapse");
    for s in &trace.steps {
        println!(
            "round {} {:?}: {} through {} into {}",
            s.round,
            s.kind,
            s.collapsed_edge,
            s.through_vertex.as_deref().unwrap_or("-"),
            s.absorbing_edge.as_deref().unwrap_or("-")
        );
    }
    println!("\n== reversal");
    println!("reversed leaf space {}", serialize_leafspace(&reversed));
    println!("isomorphic to its reversal: {symmetric}");
    println!("\n== numerical checks");
    let classes = codivergence_classes(&spec, 30)?;
    println!(
        "codivergence classes of {} representatives: {}",
        classes.representatives.len(),
        classes.count
    );
    println!(
        "trivialization at ({}, {}): chart {:?}, leaf {}, phase {}",
        num(p.x),
        num(p.y),
        c0.chart,
        num(c0.leaf_param),
        num(c0.phase)
    );
    report.print(false)
}

use std::fs;
use std::path::Path;

use anyhow::{Context, Result};
use flowleaf::flow::build_leaf_space;
use flowleaf::graph::{
    collapse_sequence, decide_equivalence, Branch, Equivalence, Isomorphism, LeafSpaceGraph,
};
use flowleaf::io::{parse_flowspec, parse_leafspace, serialize_leafspace, IoError};
use flowleaf::render::{render_collapse_frames, render_foliation, render_leafspace};
use serde_json::json;

use crate::output::{emit, load_flowspec, load_leafspace, print_json, read_text};
use crate::{demo, verify, Cli, Command, Verdict};

pub fn run(cli: &Cli) -> Result<Verdict> {
    let json = cli.json;
    match &cli.command {
        Command::Validate { file } => validate(file, json),
        Command::Compare { a, b } => compare(&load_leafspace(a)?, &load_leafspace(b)?, json),
        Command::Collapse { file, frames } => {
            collapse(&load_leafspace(file)?, frames.as_deref(), json)
        }
        Command::Build { flowspec, output } => {
            let spec = load_flowspec(flowspec)?;
            let g = build_leaf_space(&spec);
            emit(output.as_deref(), &serialize_leafspace(&g))?;
            if output.is_some() {
                eprintln!("{}", summary(&g));
            }
            Ok(Verdict::Yes)
        }
        Command::Reverse { file, output } => {
            let g = load_leafspace(file)?;
            emit(
                output.as_deref(),
                &serialize_leafspace(&g.reverse_orientation()),
            )?;
            Ok(Verdict::Yes)
        }
        Command::CountRegions { file } => {
            let g = load_leafspace(file)?;
            if json {
                print_json(
                    &json!({ "regions": g.region_count(), "ownRegionVertices": g.own_region_vertices() }),
                )?;
            } else {
                println!("{}", g.region_count());
            }
            Ok(Verdict::Yes)
        }
        Command::RenderFoliation {
            flowspec,
            region,
            density,
            output,
        } => {
            let spec = load_flowspec(flowspec)?;
            emit(
                output.as_deref(),
                &render_foliation(&spec, *region, *density)?,
            )?;
            Ok(Verdict::Yes)
        }
        Command::RenderLeafspace { file, output } => {
            let g = load_leafspace(file)?;
            emit(output.as_deref(), &render_leafspace(&g)?)?;
            Ok(Verdict::Yes)
        }
        Command::Verify { suite } => verify::run(suite, json),
        Command::Demo { flowspec } => demo::run(flowspec, json),
    }
}

fn summary(g: &LeafSpaceGraph) -> String {
    format!(
        "{} edges, {} vertices, {} regions",
        g.edges.len(),
        g.vertices.len(),
        g.region_count()
    )
}

fn validate(file: &Path, json: bool) -> Result<Verdict> {
    let text = read_text(file)?;
    let is_flow = file.to_string_lossy().ends_with(".flow.json");
    let parsed = if is_flow {
        parse_flowspec(&text).map(|_| None)
    } else {
        parse_leafspace(&text).map(Some)
    };
    match parsed {
        Ok(g) => {
            let kind = if is_flow { "flow spec" } else { "leaf space" };
            if json {
                let mut report = json!({ "valid": true, "kind": kind });
                if let Some(g) = &g {
                    report["regions"] = json!(g.region_count());
                }
                print_json(&report)?;
            } else {
                match &g {
                    Some(g) => println!("valid {kind}: {}", summary(g)),
                    None => println!("valid {kind}"),
                }
            }
            Ok(Verdict::Yes)
        }
        Err(e) => {
            if json {
                let violations = match &e {
                    IoError::InvalidGraph(v) => serde_json::to_value(v)?,
                    IoError::InvalidSpec(v) => serde_json::to_value(v)?,
                    other => json!([{ "code": "syntax", "message": other.to_string() }]),
                };
                print_json(&json!({ "valid": false, "violations": violations }))?;
            } else {
                match &e {
                    IoError::InvalidGraph(v) => v.iter().for_each(|v| println!("{v}")),
                    IoError::InvalidSpec(v) => v.iter().for_each(|v| println!("{v}")),
                    other => println!("{other}"),
                }
            }
            Err(e).with_context(|| format!("{} is not valid", file.display()))
        }
    }
}

fn print_witness(w: &Isomorphism) {
    println!("edges:");
    for (from, to) in &w.edge_map {
        let flip = if w.end_flip.get(from).copied().unwrap_or(false) {
            " (ends swapped)"
        } else {
            ""
        };
        println!("  {from} -> {to}{flip}");
    }
    println!("vertices:");
    for (from, to) in &w.vertex_map {
        println!("  {from} -> {to}");
    }
}

fn compare(a: &LeafSpaceGraph, b: &LeafSpaceGraph, json: bool) -> Result<Verdict> {
    let verdict = decide_equivalence(a, b)?;
    if json {
        print_json(&verdict)?;
    } else {
        match &verdict {
            Equivalence::ConjugateUpToInverse { branch, witness } => {
                let how = match branch {
                    Branch::Direct => "direct: A is isomorphic to B",
                    Branch::Reversed => "reversed: A is isomorphic to B with orientation reversed",
                };
                println!("ConjugateUpToInverse ({how})");
                print_witness(witness);
            }
            Equivalence::NotConjugate { regions } => {
                println!(
                    "NotConjugate (region counts {} vs {})",
                    regions.0, regions.1
                );
            }
        }
    }
    Ok(verdict.is_conjugate().into())
}

fn collapse(g: &LeafSpaceGraph, frames: Option<&Path>, json: bool) -> Result<Verdict> {
    let trace = collapse_sequence(g)?;
    if let Some(dir) = frames {
        fs::create_dir_all(dir).with_context(|| format!("creating {}", dir.display()))?;
        for (i, svg) in render_collapse_frames(&trace).iter().enumerate() {
            let path = dir.join(format!("frame-{i:03}.svg"));
            fs::write(&path, svg).with_context(|| format!("writing {}", path.display()))?;
        }
    }
    if json {
        print_json(&json!({ "steps": trace.steps, "edgeCounts": trace.edge_counts() }))?;
        return Ok(Verdict::Yes);
    }
    let counts = trace.edge_counts();
    println!(
        "{:<6} {:<12} {:<10} {:<10} {:<12} edges after round",
        "round", "kind", "edge", "through", "absorbed by"
    );
    for s in &trace.steps {
        println!(
            "{:<6} {:<12} {:<10} {:<10} {:<12} {}",
            s.round,
            format!("{:?}", s.kind),
            s.collapsed_edge,
            s.through_vertex.as_deref().unwrap_or("-"),
            s.absorbing_edge.as_deref().unwrap_or("-"),
            counts
                .get(s.round)
                .map_or("-".to_string(), |c| c.to_string())
        );
    }
    Ok(Verdict::Yes)
}

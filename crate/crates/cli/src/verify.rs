use anyhow::{Context, Result};
use clap::{Args, Subcommand};
use flowleaf::flow::generate::random_band_spec;
use flowleaf::flow::{
    build_leaf_space, build_leaf_space_detailed, codivergence_classes, codivergence_numeric,
    nonseparable_numeric, segment, CodivergenceParams, CodivergenceVerdict, IntegratedFlow,
    LeafWindow, DEFAULT_SCHEDULE,
};
use flowleaf::graph::{is_isomorphic, Side};
use flowleaf::io::parse_plane_map;
use flowleaf::maps::{leaf_transport_check, verify_affine_identities};
use flowleaf::{Flow, FlowSpec, PlaneMap, Point, Rect};
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use serde::Serialize;

use crate::output::{load_flowspec, num, print_json, read_text};
use crate::{parse_rect, parse_segment, Method, UsageError, Verdict};

#[derive(Debug, Args)]
pub struct FlowArgs {
    /// Flow-spec file or built-in name.
    #[arg(long, default_value = "reeb")]
    pub flow: String,
    #[arg(long, value_enum, default_value_t)]
    pub method: Method,
}

impl FlowArgs {
    pub fn load(&self) -> Result<(FlowSpec, Box<dyn Flow>)> {
        let spec = load_flowspec(&self.flow)?;
        Ok((spec.clone(), make_flow(spec, self.method)))
    }
}

pub fn make_flow(spec: FlowSpec, method: Method) -> Box<dyn Flow> {
    match method {
        Method::Exact => Box::new(spec),
        Method::Rk4 => Box::new(IntegratedFlow::new(spec)),
    }
}

#[derive(Debug, Subcommand)]
pub enum Suite {
    /// Translation conjugacies and the antipodal reversal on a 10x10 grid.
    AffineIdentities {
        #[arg(long, default_value_t = 0)]
        seed: u64,
        #[arg(long, default_value_t = 20)]
        draws: usize,
        #[arg(long, default_value_t = 1e-12)]
        tol: f64,
    },
    /// phi_{s+t} = phi_s o phi_t at random times and points.
    GroupLaw {
        #[command(flatten)]
        flow: FlowArgs,
        #[arg(long, default_value_t = 0)]
        seed: u64,
        #[arg(long, default_value_t = 100)]
        draws: usize,
        #[arg(long, default_value_t = 1e-6)]
        tol: f64,
    },
    /// Images of leaves under a plane map against leaves of the conjugated flow.
    Transport {
        #[command(flatten)]
        flow: FlowArgs,
        /// Plane map as JSON or a file; default runs a translation, the
        /// reflection (x, y) -> (x, -y) and a quarter turn.
        #[arg(long)]
        map: Option<String>,
        #[arg(long, default_value_t = 10)]
        points: usize,
        /// Largest chord between leaf samples.
        #[arg(long, default_value_t = 0.01)]
        step: f64,
        #[arg(long, default_value_t = 0)]
        seed: u64,
        #[arg(long, default_value_t = 1e-3)]
        tol: f64,
    },
    /// Codivergence classes against the leaf space, or one curve against K.
    Codivergence {
        #[command(flatten)]
        flow: FlowArgs,
        /// Iteration horizon.
        #[arg(long, default_value_t = 30)]
        n: u32,
        /// Compact set as "xmin,xmax,ymin,ymax" (with --curve).
        #[arg(long, value_parser = parse_rect)]
        k: Option<Rect>,
        /// Segment "x0,y0,x1,y1" to test instead of the class check.
        #[arg(long, value_parser = parse_segment)]
        curve: Option<(Point, Point)>,
    },
    /// Leaf spaces of random band flows against their reversals.
    ReversalSymmetry {
        /// Check one flow instead of random draws.
        #[arg(long)]
        flow: Option<String>,
        #[arg(long, default_value_t = 0)]
        seed: u64,
        #[arg(long, default_value_t = 20)]
        draws: usize,
        #[arg(long, default_value_t = 6)]
        max_lines: usize,
    },
}

#[derive(Debug, Serialize)]
pub struct Check {
    pub name: String,
    pub detail: String,
    pub passed: bool,
}

impl Check {
    pub fn new(name: impl Into<String>, passed: bool, detail: impl Into<String>) -> Self {
        Self {
            name: name.into(),
            detail: detail.into(),
            passed,
        }
    }

    pub fn below(name: impl Into<String>, value: f64, tol: f64) -> Self {
        let passed = value < tol;
        let rel = if passed { "<" } else { ">=" };
        Self::new(
            name,
            passed,
            format!("max error {} {rel} {tol:e}", num(value)),
        )
    }
}

#[derive(Debug, Serialize)]
pub struct SuiteReport {
    pub suite: &'static str,
    pub passed: bool,
    pub checks: Vec<Check>,
}

impl SuiteReport {
    pub fn new(suite: &'static str, checks: Vec<Check>) -> Self {
        Self {
            suite,
            passed: checks.iter().all(|c| c.passed),
            checks,
        }
    }

    pub fn print(&self, json: bool) -> Result<Verdict> {
        if json {
            print_json(self)?;
        } else {
            for c in &self.checks {
                println!(
                    "{} {}: {}",
                    if c.passed { "PASS" } else { "FAIL" },
                    c.name,
                    c.detail
                );
            }
            println!(
                "{}: {}",
                self.suite,
                if self.passed { "passed" } else { "FAILED" }
            );
        }
        Ok(self.passed.into())
    }
}

pub fn run(suite: &Suite, json: bool) -> Result<Verdict> {
    let report = match suite {
        Suite::AffineIdentities { seed, draws, tol } => affine(*seed, *draws, *tol)?,
        Suite::GroupLaw {
            flow,
            seed,
            draws,
            tol,
        } => {
            let (_, f) = flow.load()?;
            SuiteReport::new("group-law", vec![group_law(&*f, *seed, *draws, *tol)?])
        }
        Suite::Transport {
            flow,
            map,
            points,
            step,
            seed,
            tol,
        } => {
            let maps = match map {
                Some(m) => vec![("map".to_string(), load_map(m)?)],
                None => default_maps(),
            };
            let (_, f) = flow.load()?;
            let mut rng = ChaCha8Rng::seed_from_u64(*seed);
            let base: Vec<Point> = (0..*points)
                .map(|_| Point::new(rng.gen_range(-4.0..4.0), rng.gen_range(-4.0..4.0)))
                .collect();
            SuiteReport::new("transport", transport(&*f, &maps, &base, *step, *tol)?)
        }
        Suite::Codivergence { flow, n, k, curve } => match curve {
            Some(c) => return single_curve(flow, *n, *k, *c, json),
            None => SuiteReport::new(
                "codivergence",
                class_checks(&load_flowspec(&flow.flow)?, *n)?,
            ),
        },
        Suite::ReversalSymmetry {
            flow,
            seed,
            draws,
            max_lines,
        } => {
            let specs = match flow {
                Some(f) => vec![load_flowspec(f)?],
                None => {
                    let mut rng = ChaCha8Rng::seed_from_u64(*seed);
                    (0..*draws)
                        .map(|_| random_band_spec(&mut rng, *max_lines))
                        .collect()
                }
            };
            SuiteReport::new("reversal-symmetry", reversal(&specs)?)
        }
    };
    report.print(json)
}

fn load_map(arg: &str) -> Result<PlaneMap> {
    let path = std::path::Path::new(arg);
    let text = if path.is_file() {
        read_text(path)?
    } else {
        arg.to_string()
    };
    parse_plane_map(&text).context("parsing --map")
}

pub fn default_maps() -> Vec<(String, PlaneMap)> {
    vec![
        ("translation (5, 0)".into(), PlaneMap::translation(5.0, 0.0)),
        ("reflection y -> -y".into(), PlaneMap::ReflectionY {}),
        ("quarter turn".into(), PlaneMap::quarter_turn()),
    ]
}

fn affine(seed: u64, draws: usize, tol: f64) -> Result<SuiteReport> {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let grid: Vec<Point> = (0..10)
        .flat_map(|i| {
            (0..10).map(move |j| {
                Point::new(-5.0 + i as f64 * 10.0 / 9.0, -5.0 + j as f64 * 10.0 / 9.0)
            })
        })
        .collect();
    let mut coef = move || {
        let v: f64 = rng.gen_range(0.2..5.0);
        if rng.gen_bool(0.5) {
            v
        } else {
            -v
        }
    };
    let mut checks = Vec::new();
    for _ in 0..draws {
        let (a, b, c, d) = (coef(), coef(), coef(), coef());
        let r = verify_affine_identities(a, b, c, d, &grid)?;
        checks.push(Check::below(
            format!("a={a:.3} b={b:.3} c={c:.3} d={d:.3}"),
            r.max_error(),
            tol,
        ));
    }
    Ok(SuiteReport::new("affine-identities", checks))
}

pub fn group_law(f: &dyn Flow, seed: u64, draws: usize, tol: f64) -> Result<Check> {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let mut worst: f64 = 0.0;
    for _ in 0..draws {
        let (s, t) = (rng.gen_range(-3.0..3.0), rng.gen_range(-3.0..3.0));
        let p = Point::new(rng.gen_range(-5.0..5.0), rng.gen_range(-5.0..5.0));
        let a = f.flow_map(s + t, p)?;
        let b = f.flow_map(s, f.flow_map(t, p)?)?;
        worst = worst.max(a.dist(b));
    }
    Ok(Check::below(
        format!("group law over {draws} draws"),
        worst,
        tol,
    ))
}

pub fn transport(
    f: &dyn Flow,
    maps: &[(String, PlaneMap)],
    base: &[Point],
    step: f64,
    tol: f64,
) -> Result<Vec<Check>> {
    let window = LeafWindow::new(-3.0, 3.0, step);
    maps.iter()
        .map(|(name, h)| {
            let r = leaf_transport_check(h, &f, base, window, tol)?;
            Ok(Check::new(
                format!("{name}, {} leaves", base.len()),
                r.passed,
                format!(
                    "max Hausdorff distance {} (tol {tol:e})",
                    num(r.max_distance)
                ),
            ))
        })
        .collect()
}

/// Region count against codivergence classes, and symbolic against numeric
/// non-separability of every pair of vertical lines.
pub fn class_checks(spec: &FlowSpec, n: u32) -> Result<Vec<Check>> {
    let built = build_leaf_space_detailed(spec);
    let classes = codivergence_classes(spec, n)?;
    let regions = built.graph.region_count();
    let mut checks = vec![Check::new(
        "codivergence classes",
        classes.count == regions,
        format!("{} classes, {regions} regions", classes.count),
    )];
    if let Some(b) = spec.as_bands() {
        let lines = b.lines();
        for i in 0..lines.len() {
            for j in i + 1..lines.len() {
                let symbolic = match (&built.line_vertex[i], &built.line_vertex[j]) {
                    (Some(u), Some(v)) => built.graph.edges.iter().any(|e| {
                        Side::BOTH
                            .into_iter()
                            .any(|s| e.end(s).contains(u) && e.end(s).contains(v))
                    }),
                    _ => false,
                };
                let numeric = nonseparable_numeric(spec, lines[i].x, lines[j].x, DEFAULT_SCHEDULE)?;
                checks.push(Check::new(
                    format!("x = {} and x = {}", lines[i].x, lines[j].x),
                    symbolic == numeric,
                    format!("non-separable: leaf space {symbolic}, numeric {numeric}"),
                ));
            }
        }
    }
    Ok(checks)
}

fn single_curve(
    flow: &FlowArgs,
    n: u32,
    k: Option<Rect>,
    (a, b): (Point, Point),
    json: bool,
) -> Result<Verdict> {
    let k = k.ok_or_else(|| UsageError("--curve needs --k".into()))?;
    let (_, f) = flow.load()?;
    let verdict = codivergence_numeric(
        &f.as_ref(),
        &segment(a, b, 1),
        &CodivergenceParams::new(n, k),
    )?;
    if json {
        print_json(&verdict)?;
    } else {
        match verdict {
            CodivergenceVerdict::CoDivergentEvidence => {
                println!("CoDivergentEvidence (images leave K for good within N = {n})")
            }
            CodivergenceVerdict::NotCoDivergent { n, witness } => {
                println!(
                    "NotCoDivergent: image {n} meets K at ({}, {})",
                    num(witness.x),
                    num(witness.y)
                )
            }
        }
    }
    Ok(verdict.is_codivergent().into())
}

pub fn reversal(specs: &[FlowSpec]) -> Result<Vec<Check>> {
    let mut checks = Vec::new();
    for (i, spec) in specs.iter().enumerate() {
        let g = build_leaf_space(spec);
        let r = g.reverse_orientation();
        let consistent = build_leaf_space(&spec.reversed()) == r;
        let symmetric = is_isomorphic(&g, &r)?.is_some();
        checks.push(Check::new(
            format!("spec {i} ({} edges)", g.edges.len()),
            consistent && symmetric,
            format!("reversed flow gives reversed graph: {consistent}; isomorphic to its reversal: {symmetric}"),
        ));
    }
    Ok(checks)
}

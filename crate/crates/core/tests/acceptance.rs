//! Acceptance suite: one line per criterion, non-zero exit if any fails.

mod common;

use std::process::ExitCode;
use std::time::{Duration, Instant};

use flowleaf::flow::fixtures::{chain5_flow, double_reeb_flow, reeb_flow, translation_flow};
use flowleaf::flow::generate::random_band_spec;
use flowleaf::flow::{
    build_leaf_space, build_leaf_space_detailed, codivergence_classes, codivergence_numeric,
    nonseparable_numeric, orbit_separation, sample_leaf, segment, trivialization_coord,
    CodivergenceParams, CodivergenceVerdict, Flow, FlowSpec, LeafWindow, DEFAULT_SCHEDULE,
};
use flowleaf::geom::one_sided_hausdorff;
use flowleaf::graph::generate::{random_graph, scramble};
use flowleaf::graph::{
    canonical_form, collapse_sequence, decide_equivalence, fixtures, is_isomorphic, Equivalence,
    Side, StepKind,
};
use flowleaf::maps::{leaf_transport_check, transport_band_spec, verify_affine_identities};
use flowleaf::{PlaneMap, Point, Rect};
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

struct Outcome {
    passed: bool,
    detail: String,
}

type Criterion = (&'static str, Duration, fn() -> Outcome);

fn outcome(passed: bool, detail: impl Into<String>) -> Outcome {
    Outcome {
        passed,
        detail: detail.into(),
    }
}

fn reeb_construction() -> Outcome {
    let g = build_leaf_space(&reeb_flow());
    let iso = is_isomorphic(&g, &fixtures::reeb()).unwrap().is_some();
    let paired = g
        .edges
        .iter()
        .flat_map(|e| Side::BOTH.into_iter().map(move |s| e.end(s).len()))
        .filter(|&n| n >= 2)
        .count();
    let ok =
        iso && g.edges.len() == 3 && g.vertices.len() == 2 && paired == 1 && g.region_count() == 3;
    outcome(
        ok,
        format!(
            "isomorphic={iso} edges={} vertices={} paired ends={paired} regions={}",
            g.edges.len(),
            g.vertices.len(),
            g.region_count()
        ),
    )
}

fn conjugacy_decision() -> Outcome {
    let a = decide_equivalence(&fixtures::translation(), &fixtures::reeb()).unwrap();
    let b = decide_equivalence(&fixtures::reeb(), &fixtures::mirror_reeb()).unwrap();
    let c = decide_equivalence(&fixtures::double_reeb(), &fixtures::chain5()).unwrap();
    let counts = (
        fixtures::double_reeb().region_count(),
        fixtures::chain5().region_count(),
    );
    let ok = matches!(a, Equivalence::NotConjugate { .. })
        && b.is_conjugate()
        && matches!(c, Equivalence::NotConjugate { .. })
        && counts == (5, 5);
    outcome(
        ok,
        format!(
            "trans/reeb conjugate={} reeb/mirror conjugate={} double/chain5 conjugate={} counts {}={}",
            a.is_conjugate(),
            b.is_conjugate(),
            c.is_conjugate(),
            counts.0,
            counts.1
        ),
    )
}

fn reversal_symmetry() -> Outcome {
    let mut rng = ChaCha8Rng::seed_from_u64(2024);
    let total = 24;
    let mut failures = Vec::new();
    for i in 0..total {
        let spec = random_band_spec(&mut rng, 6);
        let g = build_leaf_space(&spec);
        if !g.is_valid()
            || is_isomorphic(&g, &g.reverse_orientation())
                .unwrap()
                .is_none()
        {
            failures.push(i);
        }
    }
    outcome(
        failures.is_empty(),
        format!(
            "{}/{total} generated specs symmetric; failing draws {failures:?}",
            total - failures.len()
        ),
    )
}

fn collapse_procedure() -> Outcome {
    let mut rng = ChaCha8Rng::seed_from_u64(4);
    let sizes = [1usize, 3, 4, 5, 6, 7, 8, 9, 10, 11, 12];
    let mut cases = 0;
    let mut bad = 0;
    for _ in 0..20 {
        for &n in &sizes {
            let g = random_graph(&mut rng, n);
            cases += 1;
            let t = match collapse_sequence(&g) {
                Ok(t) => t,
                Err(_) => {
                    bad += 1;
                    continue;
                }
            };
            let ends_at_point = t.steps.last().map(|s| s.kind) == Some(StepKind::FinalPoint)
                && t.states.last().map(|s| s.edges.len()) == Some(1);
            let decreasing = t.edge_counts().windows(2).all(|w| w[1] < w[0]);
            let ordered = (1..=t.rounds()).all(|r| {
                let kinds: Vec<StepKind> = t
                    .steps
                    .iter()
                    .filter(|s| s.round == r)
                    .map(|s| s.kind)
                    .collect();
                let last_first = kinds.iter().rposition(|k| *k == StepKind::FirstOrder);
                let first_second = kinds.iter().position(|k| *k == StepKind::SecondOrder);
                !matches!((last_first, first_second), (Some(f), Some(s)) if f > s)
            });
            if !(ends_at_point && decreasing && ordered) {
                bad += 1;
            }
        }
    }
    outcome(
        bad == 0 && cases >= 200,
        format!("{cases} graphs, {bad} violations"),
    )
}

fn isomorphism_oracle() -> Outcome {
    let mut rng = ChaCha8Rng::seed_from_u64(5);
    let sizes = [1usize, 3, 4, 5, 6, 7];
    let (mut cases, mut agree, mut positive) = (0, 0, 0);
    for i in 0..240 {
        let n = sizes[i % sizes.len()];
        let g = random_graph(&mut rng, n);
        let h = match i % 3 {
            0 => scramble(&mut rng, &g),
            1 => scramble(&mut rng, &g.reverse_orientation()),
            _ => random_graph(&mut rng, n),
        };
        let canon = canonical_form(&g).unwrap() == canonical_form(&h).unwrap();
        let oracle = common::brute_force_isomorphic(&g, &h);
        cases += 1;
        positive += usize::from(oracle);
        agree += usize::from(canon == oracle);
    }
    outcome(
        agree == cases,
        format!("{agree}/{cases} pairs agree ({positive} isomorphic)"),
    )
}

fn grid(n: usize, lo: f64, hi: f64) -> Vec<Point> {
    let step = (hi - lo) / (n - 1) as f64;
    (0..n)
        .flat_map(|i| (0..n).map(move |j| Point::new(lo + i as f64 * step, lo + j as f64 * step)))
        .collect()
}

fn affine_identities() -> Outcome {
    let mut rng = ChaCha8Rng::seed_from_u64(6);
    let pts = grid(10, -5.0, 5.0);
    let mut worst: f64 = 0.0;
    let mut missing = 0;
    let coef = |rng: &mut ChaCha8Rng| {
        let v: f64 = rng.gen_range(0.2..5.0);
        if rng.gen_bool(0.5) {
            v
        } else {
            -v
        }
    };
    for _ in 0..20 {
        let (a, b, c, d) = (
            coef(&mut rng),
            coef(&mut rng),
            coef(&mut rng),
            coef(&mut rng),
        );
        let r = verify_affine_identities(a, b, c, d, &pts).unwrap();
        missing += usize::from(r.conjugacy.is_none());
        worst = worst.max(r.max_error());
    }
    outcome(
        worst < 1e-12 && missing == 0,
        format!("max error {worst:.3e} over 20 draws"),
    )
}

fn flow_axioms() -> Outcome {
    let f = reeb_flow();
    let mut rng = ChaCha8Rng::seed_from_u64(7);
    let mut group: f64 = 0.0;
    for _ in 0..100 {
        let (s, t) = (rng.gen_range(-3.0..3.0), rng.gen_range(-3.0..3.0));
        let p = Point::new(rng.gen_range(-5.0..5.0), rng.gen_range(-5.0..5.0));
        let a = f.flow_map(s + t, p).unwrap();
        let b = f.flow_map(s, f.flow_map(t, p).unwrap()).unwrap();
        group = group.max(a.dist(b));
    }
    let pts = grid(41, -5.0, 5.0);
    let identity = pts.iter().all(|&p| f.flow_map(0.0, p).unwrap() == p);
    let sep = pts
        .iter()
        .map(|&p| orbit_separation(&f, p, 10).unwrap())
        .fold(f64::INFINITY, f64::min);
    outcome(
        group < 1e-6 && identity && sep > 0.05,
        format!("group law error {group:.3e}, time zero exact={identity}, min orbit separation {sep:.4}"),
    )
}

fn leaf_transport() -> Outcome {
    let maps = [
        ("translation", PlaneMap::translation(5.0, 0.0)),
        ("reflection", PlaneMap::ReflectionY {}),
        ("rotation", PlaneMap::quarter_turn()),
    ];
    let flows: [(&str, FlowSpec); 4] = [
        ("reeb", reeb_flow()),
        ("double-reeb", double_reeb_flow()),
        ("chain5", chain5_flow()),
        ("translation", translation_flow(1.0, 0.0)),
    ];
    let window = LeafWindow::new(-3.0, 3.0, 0.01);
    let mut worst: f64 = 0.0;
    let (mut runs, mut explicit) = (0, 0);
    for (_, spec) in &flows {
        let base: Vec<Point> = (0..10)
            .map(|i| Point::new(-4.5 + i as f64, 0.3 * i as f64 - 1.0))
            .collect();
        for (_, h) in &maps {
            let r = leaf_transport_check(h, spec, &base, window, 1e-3).unwrap();
            worst = worst.max(r.max_distance);
            runs += 1;
            // where the image flow has a closed-form spec, compare against it too
            if let Some(moved_spec) = transport_band_spec(h, spec) {
                for &x in &base {
                    let leaf = sample_leaf(spec, x, window).unwrap();
                    let moved: Vec<Point> = leaf.points.iter().map(|&p| h.eval(p)).collect();
                    let image = sample_leaf(&moved_spec, h.eval(x), window).unwrap();
                    worst = worst.max(one_sided_hausdorff(&moved, &image.points));
                }
                explicit += 1;
            }
        }
    }
    outcome(worst < 1e-3, format!("{runs} map/flow runs x 10 base points ({explicit} also against a transported spec), max distance {worst:.3e}"))
}

fn trivialization() -> Outcome {
    let f = reeb_flow();
    let mut rng = ChaCha8Rng::seed_from_u64(9);
    let (mut phase_err, mut leaf_err): (f64, f64) = (0.0, 0.0);
    for _ in 0..100 {
        let p = Point::new(rng.gen_range(-5.0..5.0), rng.gen_range(-5.0..5.0));
        let t = rng.gen_range(-3.0..3.0);
        let c = trivialization_coord(&f, p).unwrap();
        let c1 = trivialization_coord(&f, f.time_one_map(p).unwrap()).unwrap();
        let ct = trivialization_coord(&f, f.flow_map(t, p).unwrap()).unwrap();
        let d = (c1.phase - c.phase).rem_euclid(1.0);
        phase_err = phase_err.max(d.min(1.0 - d));
        let rel = |a: f64, b: f64| (a - b).abs() / (1.0 + a.abs());
        leaf_err = leaf_err
            .max(rel(c.leaf_param, c1.leaf_param))
            .max(rel(c.leaf_param, ct.leaf_param));
    }
    outcome(
        phase_err < 1e-6 && leaf_err < 1e-6,
        format!("phase drift {phase_err:.3e}, leaf parameter drift {leaf_err:.3e}"),
    )
}

fn codivergence_and_separation() -> Outcome {
    let f = reeb_flow();
    let p1 = CodivergenceParams::new(50, Rect::new(-4.0, -1.0, -1.0, 1.0));
    let same = codivergence_numeric(
        &f,
        &segment(Point::new(-2.0, 0.0), Point::new(-3.0, 5.0), 1),
        &p1,
    )
    .unwrap();
    let p2 = CodivergenceParams::new(50, Rect::new(-2.0, 1.0, -1.0, 1.0));
    let cross = codivergence_numeric(
        &f,
        &segment(Point::new(-2.0, 0.0), Point::new(0.0, 0.0), 1),
        &p2,
    )
    .unwrap();
    let ns_lines = nonseparable_numeric(&f, -1.0, 1.0, DEFAULT_SCHEDULE).unwrap();
    let ns_inner = nonseparable_numeric(&f, -1.0, -2.0, DEFAULT_SCHEDULE).unwrap();

    let mut agree = true;
    let mut counts = Vec::new();
    for spec in [reeb_flow(), double_reeb_flow(), chain5_flow()] {
        let built = build_leaf_space_detailed(&spec);
        let lines = spec.as_bands().unwrap().lines().to_vec();
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
                agree &= symbolic
                    == nonseparable_numeric(&spec, lines[i].x, lines[j].x, DEFAULT_SCHEDULE)
                        .unwrap();
            }
        }
        let classes = codivergence_classes(&spec, 30).unwrap().count;
        agree &= classes == built.graph.region_count();
        counts.push((classes, built.graph.region_count()));
    }
    let ok = same == CodivergenceVerdict::CoDivergentEvidence
        && matches!(cross, CodivergenceVerdict::NotCoDivergent { .. })
        && ns_lines
        && !ns_inner
        && agree;
    outcome(
        ok,
        format!(
            "same-band codivergent={} crossing codivergent={} nonseparable(-1,1)={ns_lines} nonseparable(-1,-2)={ns_inner} classes/regions {counts:?}",
            same.is_codivergent(),
            cross.is_codivergent()
        ),
    )
}

fn main() -> ExitCode {
    let criteria: [Criterion; 10] = [
        (
            "reeb construction",
            Duration::from_secs(1),
            reeb_construction,
        ),
        (
            "conjugacy decision",
            Duration::from_secs(1),
            conjugacy_decision,
        ),
        (
            "reversal symmetry of built leaf spaces",
            Duration::from_secs(5),
            reversal_symmetry,
        ),
        (
            "collapse procedure",
            Duration::from_secs(10),
            collapse_procedure,
        ),
        (
            "canonical form vs exhaustive search",
            Duration::from_secs(30),
            isomorphism_oracle,
        ),
        (
            "affine identities",
            Duration::from_secs(1),
            affine_identities,
        ),
        ("flow axioms", Duration::from_secs(5), flow_axioms),
        ("leaf transport", Duration::from_secs(30), leaf_transport),
        ("trivialization", Duration::from_secs(5), trivialization),
        (
            "codivergence and non-separability",
            Duration::from_secs(30),
            codivergence_and_separation,
        ),
    ];
    let mut failed = 0;
    for (i, (name, budget, run)) in criteria.iter().enumerate() {
        let start = Instant::now();
        let out = run();
        let elapsed = start.elapsed();
        let passed = out.passed && elapsed < *budget;
        failed += usize::from(!passed);
        println!(
            "[{}] {:>2}. {name}: {} ({:.3}s, budget {}s)",
            if passed { "PASS" } else { "FAIL" },
            i + 1,
            out.detail,
            elapsed.as_secs_f64(),
            budget.as_secs()
        );
    }
    println!(
        "acceptance: {}/{} criteria passed",
        criteria.len() - failed,
        criteria.len()
    );
    if failed == 0 {
        ExitCode::SUCCESS
    } else {
        ExitCode::FAILURE
    }
}

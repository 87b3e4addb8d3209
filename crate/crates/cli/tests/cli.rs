use std::path::PathBuf;
use std::process::{Command, Output};

fn fixture(name: &str) -> String {
    let p = PathBuf::from(env!("CARGO_MANIFEST_DIR"))
        .join("../../fixtures")
        .join(name);
    p.to_string_lossy().into_owned()
}

fn run(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_flowleaf"))
        .args(args)
        .output()
        .unwrap()
}

fn stdout(o: &Output) -> String {
    String::from_utf8(o.stdout.clone()).unwrap()
}

fn tmp(name: &str) -> String {
    PathBuf::from(env!("CARGO_TARGET_TMPDIR"))
        .join(name)
        .to_string_lossy()
        .into_owned()
}

#[test]
fn compare_mirror_images_is_affirmative() {
    let o = run(&[
        "compare",
        &fixture("reeb.leafspace.json"),
        &fixture("mirror_reeb.leafspace.json"),
    ]);
    assert_eq!(o.status.code(), Some(0));
    let out = stdout(&o);
    assert!(out.starts_with("ConjugateUpToInverse"), "{out}");
    assert!(out.contains("vL -> vR"), "{out}");
}

#[test]
fn compare_by_region_count_is_negative() {
    let o = run(&[
        "compare",
        &fixture("translation.leafspace.json"),
        &fixture("reeb.leafspace.json"),
    ]);
    assert_eq!(o.status.code(), Some(1));
    assert_eq!(stdout(&o).trim(), "NotConjugate (region counts 1 vs 3)");
}

#[test]
fn compare_json_is_tagged() {
    let o = run(&[
        "--json",
        "compare",
        &fixture("double_reeb.leafspace.json"),
        &fixture("chain5.leafspace.json"),
    ]);
    assert_eq!(o.status.code(), Some(1));
    let v: serde_json::Value = serde_json::from_str(&stdout(&o)).unwrap();
    assert_eq!(v["verdict"], "NotConjugate");
}

#[test]
fn collapse_reeb_has_three_rows() {
    let o = run(&["collapse", &fixture("reeb.leafspace.json")]);
    assert_eq!(o.status.code(), Some(0));
    let out = stdout(&o);
    let rows: Vec<&str> = out.lines().skip(1).collect();
    assert_eq!(rows.len(), 3, "{out}");
    assert!(rows[2].contains("FinalPoint"));
}

#[test]
fn collapse_writes_frames() {
    let dir = tmp("frames-double");
    let o = run(&[
        "collapse",
        &fixture("double_reeb.leafspace.json"),
        "--frames",
        &dir,
    ]);
    assert_eq!(o.status.code(), Some(0));
    let frames = std::fs::read_dir(&dir).unwrap().count();
    assert!(frames >= 2);
}

#[test]
fn build_matches_fixture_up_to_isomorphism() {
    let out = tmp("built-reeb.leafspace.json");
    let o = run(&["build", &fixture("reeb.flow.json"), "-o", &out]);
    assert_eq!(o.status.code(), Some(0));
    let o = run(&["compare", &out, &fixture("reeb.leafspace.json")]);
    assert_eq!(o.status.code(), Some(0));
    assert!(stdout(&o).contains("direct"));
}

#[test]
fn reverse_then_count() {
    let out = tmp("reversed-double.leafspace.json");
    let o = run(&[
        "reverse",
        &fixture("double_reeb.leafspace.json"),
        "-o",
        &out,
    ]);
    assert_eq!(o.status.code(), Some(0));
    let o = run(&["count-regions", &out]);
    assert_eq!(stdout(&o).trim(), "5");
}

#[test]
fn invalid_inputs_exit_with_validation_code() {
    let bad = tmp("cycle.leafspace.json");
    std::fs::write(
        &bad,
        r#"{"vertices":["v","w"],"edges":[{"id":"e0","endA":["v"],"endB":["v","w"]},{"id":"e1","endA":[],"endB":["w"]}]}"#,
    )
    .unwrap();
    let o = run(&["validate", &bad]);
    assert_eq!(o.status.code(), Some(3));
    assert!(
        stdout(&o).to_lowercase().contains("cycle"),
        "{}",
        stdout(&o)
    );

    let spec = tmp("bad.flow.json");
    std::fs::write(&spec, r#"{"lines":[{"x":1.0,"dir":1},{"x":-1.0,"dir":-1}],"bands":["invariant","invariant","invariant"]}"#)
        .unwrap();
    assert_eq!(run(&["build", &spec]).status.code(), Some(3));
    assert_eq!(run(&["build", "no-such-flow"]).status.code(), Some(3));
}

#[test]
fn usage_errors_exit_with_two() {
    assert_eq!(run(&["compare", "--bogus"]).status.code(), Some(2));
    assert_eq!(
        run(&["render-foliation", "reeb", "--region", "1,2,3"])
            .status
            .code(),
        Some(2)
    );
    assert_eq!(
        run(&["verify", "codivergence", "--curve=-2,0,0,0"])
            .status
            .code(),
        Some(2)
    );
    assert_eq!(
        run(&["validate", &tmp("missing.leafspace.json")])
            .status
            .code(),
        Some(2)
    );
}

#[test]
fn overflow_is_a_numeric_failure() {
    let o = run(&["verify", "group-law", "--flow", "translation:1e308,0"]);
    assert_eq!(o.status.code(), Some(4));
}

#[test]
fn verify_suites_report_json() {
    for suite in [
        vec!["verify", "affine-identities"],
        vec!["verify", "group-law", "--method", "rk4"],
        vec![
            "verify",
            "transport",
            "--flow",
            "double-reeb",
            "--points",
            "3",
        ],
        vec!["verify", "codivergence", "--flow", "chain5"],
        vec!["verify", "reversal-symmetry", "--flow", "double-reeb"],
    ] {
        let mut args = vec!["--json"];
        args.extend(&suite);
        let o = run(&args);
        assert_eq!(o.status.code(), Some(0), "{suite:?}");
        let v: serde_json::Value = serde_json::from_str(&stdout(&o)).unwrap();
        assert_eq!(v["passed"], true, "{suite:?}");
    }
}

#[test]
fn single_curve_codivergence() {
    let crossing = run(&[
        "verify",
        "codivergence",
        "--curve=-2,0,0,0",
        "--k=-2,1,-1,1",
    ]);
    assert_eq!(crossing.status.code(), Some(1));
    assert!(stdout(&crossing).starts_with("NotCoDivergent"));
    let same = run(&[
        "verify",
        "codivergence",
        "--curve=-2,0,-3,5",
        "--k=-4,-1,-1,1",
    ]);
    assert_eq!(same.status.code(), Some(0));
}

#[test]
fn renders_are_deterministic() {
    let a = run(&["render-foliation", "reeb", "--density", "9"]);
    let b = run(&["render-foliation", "reeb", "--density", "9"]);
    assert_eq!(a.status.code(), Some(0));
    assert_eq!(a.stdout, b.stdout);
    assert_eq!(stdout(&a).matches("class=\"vertex-leaf\"").count(), 2);
    let g = run(&["render-leafspace", &fixture("double_reeb.leafspace.json")]);
    assert_eq!(stdout(&g).matches("class=\"vertex own-region\"").count(), 1);
}

#[test]
fn demo_runs_end_to_end() {
    let o = run(&["demo", "reeb"]);
    assert_eq!(o.status.code(), Some(0));
    let out = stdout(&o);
    assert!(out.contains("3 edges, 2 vertices, 3 regions"));
    assert!(out.trim_end().ends_with("demo: passed"));
}

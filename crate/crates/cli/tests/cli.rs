use std::fs;
use std::io::Write;
use std::path::Path;
use std::process::{Command, Output, Stdio};

use wulff_core::catalog::solve_star_equation;
use wulff_core::{Shape, ShapeRecord};

fn wulff(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_wulff"))
        .args(args)
        .output()
        .expect("binary runs")
}

fn wulff_stdin(args: &[&str], input: &str) -> Output {
    let mut child = Command::new(env!("CARGO_BIN_EXE_wulff"))
        .args(args)
        .stdin(Stdio::piped())
        .stdout(Stdio::piped())
        .stderr(Stdio::piped())
        .spawn()
        .expect("binary runs");
    child.stdin.take().unwrap().write_all(input.as_bytes()).unwrap();
    child.wait_with_output().unwrap()
}

fn code(o: &Output) -> i32 {
    o.status.code().expect("exited normally")
}

fn path_str(p: &Path) -> &str {
    p.to_str().unwrap()
}

#[test]
fn build_presets_and_round_trip() {
    let dir = tempfile::tempdir().unwrap();
    let out = dir.path().join("disc.json");
    let o = wulff(&["build", "--gamma", "disc", "--grid", "360", "-o", path_str(&out)]);
    assert_eq!(code(&o), 0, "{}", String::from_utf8_lossy(&o.stderr));
    let text = fs::read_to_string(&out).unwrap();
    let rec = ShapeRecord::from_json(&text).unwrap();
    match rec.to_shape().unwrap() {
        Shape::Wulff(w) => assert_eq!(w.len(), 360),
        other => panic!("unexpected {other:?}"),
    }
    // Writing the loaded record again reproduces the file byte for byte.
    assert_eq!(rec.to_json(), text);

    let o = wulff(&["build", "--gamma", "reuleaux:1.6"]);
    assert_eq!(code(&o), 0);
    assert!(String::from_utf8_lossy(&o.stdout).contains("\"polygon2\""));
}

#[test]
fn build_rejects_bad_gamma_naming_the_sample() {
    let dir = tempfile::tempdir().unwrap();
    let gamma = dir.path().join("gamma.json");
    fs::write(
        &gamma,
        r#"{"kind":"support","n_samples":8,"values":[1,1,1,1,0,1,1,1]}"#,
    )
    .unwrap();
    let o = wulff(&["build", "--gamma", path_str(&gamma)]);
    assert_eq!(code(&o), 2);
    let err = String::from_utf8_lossy(&o.stderr);
    assert!(err.contains("values[4]"), "{err}");

    let o = wulff(&["build", "--gamma", "no-such-file.json"]);
    assert_eq!(code(&o), 2);
}

#[test]
fn dual_prints_gap() {
    let dir = tempfile::tempdir().unwrap();
    let out = dir.path().join("dual.json");
    let o = wulff(&["dual", "catalog:disc", "-o", path_str(&out)]);
    assert_eq!(code(&o), 0);
    let gap: f64 = String::from_utf8_lossy(&o.stdout).trim().parse().unwrap();
    assert!(gap <= 5e-3);

    let o = wulff(&["dual", "catalog:square_a4", "-o", path_str(&out)]);
    let gap: f64 = String::from_utf8_lossy(&o.stdout).trim().parse().unwrap();
    let a = solve_star_equation(2).unwrap();
    assert!((gap - (a - 1.0 / a)).abs() <= 1e-3, "{gap}");

    // Origin close to an edge: still a Wulff shape, far from its dual.
    let shifted = r#"{"kind":"polygon2","vertices":[[-0.05,-1],[1.95,-1],[1.95,1],[-0.05,1]]}"#;
    let o = wulff_stdin(&["dual", "-", "-o", path_str(&out)], shifted);
    assert_eq!(code(&o), 0, "{}", String::from_utf8_lossy(&o.stderr));
    let gap: f64 = String::from_utf8_lossy(&o.stdout).trim().parse().unwrap();
    assert!(gap > 1.0);

    let outside = r#"{"kind":"polygon2","vertices":[[1,1],[2,1],[2,2],[1,2]]}"#;
    let o = wulff_stdin(&["dual", "-", "-o", path_str(&out)], outside);
    assert_eq!(code(&o), 2);
}

#[test]
fn check_exit_codes() {
    let o = wulff(&["check", "catalog:octant"]);
    assert_eq!(code(&o), 0);
    let report: serde_json::Value = serde_json::from_slice(&o.stdout).unwrap();
    assert_eq!(report["constant_width"], true);

    let o = wulff(&["check", "catalog:reuleaux"]);
    assert_eq!(code(&o), 1);

    let o = wulff(&["check", "catalog:square_a4"]);
    assert_eq!(code(&o), 1);
    let report: serde_json::Value = serde_json::from_slice(&o.stdout).unwrap();
    assert_eq!(report["congruent_dual"], true);
    assert_eq!(report["self_dual"], false);
    assert_eq!(report["provenance"]["kind"], "square_a4");

    let o = wulff_stdin(&["check", "-"], "{\"kind\": \"polygon2\", \"vertices\": [[0, 0]");
    assert_eq!(code(&o), 2);
    let o = wulff(&["check", "catalog:disc", "--tol", "-1"]);
    assert_eq!(code(&o), 2);
}

#[test]
fn render_is_deterministic() {
    let dir = tempfile::tempdir().unwrap();
    let sq = dir.path().join("sq.json");
    let dual = dir.path().join("dual.json");
    assert_eq!(code(&wulff(&["catalog", "square_a4", "-o", path_str(&sq)])), 0);
    assert_eq!(code(&wulff(&["dual", path_str(&sq), "-o", path_str(&dual)])), 0);
    let a = wulff(&["render", path_str(&sq), path_str(&dual), "--style", "overlay"]);
    let b = wulff(&["render", path_str(&sq), path_str(&dual), "--style", "overlay"]);
    assert_eq!(code(&a), 0);
    assert_eq!(a.stdout, b.stdout);
    let svg = String::from_utf8(a.stdout).unwrap();
    assert!(svg.contains("shape-0") && svg.contains("shape-1") && svg.contains("unit-circle"));

    let o = wulff(&[
        "render",
        "catalog:octant",
        "-o",
        path_str(&dir.path().join("t.svg")),
    ]);
    assert_eq!(code(&o), 0);
    assert_eq!(code(&wulff(&["render", "missing.json"])), 2);
}

#[test]
fn catalog_command() {
    let o = wulff(&["catalog", "regular_2m_gon", "m=2", "star=true"]);
    assert_eq!(code(&o), 0);
    let rec = ShapeRecord::from_json(&String::from_utf8_lossy(&o.stdout)).unwrap();
    let square =
        ShapeRecord::from_json(&String::from_utf8_lossy(&wulff(&["catalog", "square_a4"]).stdout)).unwrap();
    assert_eq!(rec.to_shape().unwrap(), square.to_shape().unwrap());

    assert_eq!(code(&wulff(&["catalog", "rotated_cap", "angle=0.3"])), 0);
    assert_eq!(code(&wulff(&["catalog", "rotated_cap", "angle=0.9"])), 2);
    assert_eq!(code(&wulff(&["catalog", "nonesuch"])), 2);

    let o = wulff(&["catalog", "list"]);
    let text = String::from_utf8_lossy(&o.stdout);
    for name in [
        "disc",
        "rotated_cap",
        "octant_triangle",
        "reuleaux",
        "regular_2m_gon",
        "square_a4",
    ] {
        assert!(text.contains(name));
    }
}

#[test]
fn usage_errors_exit_two() {
    assert_eq!(code(&wulff(&[])), 2);
    assert_eq!(code(&wulff(&["frobnicate"])), 2);
    assert_eq!(code(&wulff(&["check"])), 2);
}

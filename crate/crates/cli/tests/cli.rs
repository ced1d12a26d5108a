use std::path::{Path, PathBuf};
use std::process::{Command, Output};

fn data(name: &str) -> PathBuf {
    Path::new(env!("CARGO_MANIFEST_DIR")).join("tests/data").join(name)
}

fn scratch(name: &str) -> PathBuf {
    Path::new(env!("CARGO_TARGET_TMPDIR")).join(name)
}

fn stabflow(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_stabflow"))
        .args(args)
        .env_remove("STABFLOW_ORACLE_BOUND")
        .output()
        .expect("binary runs")
}

fn code(out: &Output) -> i32 {
    out.status.code().expect("exited normally")
}

fn stdout(out: &Output) -> String {
    String::from_utf8(out.stdout.clone()).unwrap()
}

fn path_str(p: &Path) -> &str {
    p.to_str().unwrap()
}

#[test]
fn gldim_of_regular_triangle() {
    let out = stabflow(&["gldim", path_str(&data("triangle.json"))]);
    assert_eq!(code(&out), 0);
    assert_eq!(stdout(&out).lines().next(), Some("0.333333333333"));
}

#[test]
fn gldim_machine_output_is_json() {
    let out = stabflow(&["--format", "machine", "gldim", path_str(&data("triangle.json"))]);
    let v: serde_json::Value = serde_json::from_str(&stdout(&out)).unwrap();
    assert!((v["gldim"].as_f64().unwrap() - 1.0 / 3.0).abs() < 1e-12);
    assert_eq!(v["argmax"].as_array().unwrap().len(), 3);
}

#[test]
fn gldim_exit_codes() {
    assert_eq!(code(&stabflow(&["gldim", path_str(&data("malformed.json"))])), 2);
    assert_eq!(code(&stabflow(&["gldim", path_str(&data("square.json"))])), 3);
    assert_eq!(code(&stabflow(&["gldim", path_str(&data("dart.json"))])), 3);
    assert_eq!(code(&stabflow(&["gldim", path_str(&data("missing.json"))])), 2);
    let any = stabflow(&["gldim", "--any-convex", path_str(&data("square.json"))]);
    assert_eq!(code(&any), 0);
    assert_eq!(stdout(&any).lines().next(), Some("0.500000000000"));
}

#[test]
fn flow_seed_42_reaches_three_fifths() {
    let out = stabflow(&["--format", "machine", "flow", "--n", "4", "--seed", "42"]);
    assert_eq!(code(&out), 0);
    let v: serde_json::Value = serde_json::from_str(&stdout(&out)).unwrap();
    assert!((v["gldim"].as_f64().unwrap() - 0.6).abs() < 1e-6, "{v}");
}

#[test]
fn flow_traces_are_deterministic() {
    let (a, b) = (scratch("det-a.json"), scratch("det-b.json"));
    for p in [&a, &b] {
        let out = stabflow(&["flow", "--n", "3", "--seed", "7", "--trace", path_str(p)]);
        assert_eq!(code(&out), 0);
    }
    assert_eq!(std::fs::read(&a).unwrap(), std::fs::read(&b).unwrap());
}

#[test]
fn flow_stops_at_target() {
    let trace = scratch("target.json");
    let out = stabflow(&[
        "flow", "--n", "4", "--seed", "42", "--target", "0.9", "--trace", path_str(&trace),
    ]);
    assert_eq!(code(&out), 0);
    let t = stabflow_core::formats::parse_trace(&std::fs::read_to_string(&trace).unwrap()).unwrap();
    let g: Vec<f64> = t.records.iter().map(|r| r.gldim).collect();
    assert!(g[g.len() - 1] <= 0.9);
    assert!(g[..g.len() - 1].iter().all(|&x| x > 0.9));
}

#[test]
fn flow_out_of_steps_keeps_partial_trace() {
    let trace = scratch("partial.json");
    let out = stabflow(&["flow", "--n", "4", "--seed", "42", "--steps", "3", "--trace", path_str(&trace)]);
    assert_eq!(code(&out), 4);
    let t = stabflow_core::formats::parse_trace(&std::fs::read_to_string(&trace).unwrap()).unwrap();
    assert_eq!(t.records.len(), 4);
    assert_eq!(t.seed, Some(42));
}

#[test]
fn flow_rejects_bad_config_and_nonconvex_start() {
    assert_eq!(code(&stabflow(&["flow", "--shrink", "1.5"])), 2);
    assert_eq!(code(&stabflow(&["flow", path_str(&data("dart.json"))])), 3);
}

#[test]
fn batch_matches_sequential_draws() {
    let base = scratch("batch.json");
    let out = stabflow(&["flow", "--n", "3", "--seed", "5", "--batch", "4", "--trace", path_str(&base)]);
    assert_eq!(code(&out), 0);
    for k in 0..4 {
        assert!(scratch(&format!("batch-{k}.json")).exists());
    }
    assert_eq!(stdout(&out).lines().count(), 4);
}

#[test]
fn svg_is_well_formed_and_shows_every_snapshot() {
    let (trace, svg) = (scratch("svg-trace.json"), scratch("flow.svg"));
    let out = stabflow(&[
        "flow", "--n", "5", "--seed", "3", "--trace", path_str(&trace), "--svg", path_str(&svg),
    ]);
    assert_eq!(code(&out), 0);
    let text = std::fs::read_to_string(&svg).unwrap();
    let doc = roxmltree::Document::parse(&text).expect("well-formed XML");
    assert_eq!(doc.root_element().tag_name().name(), "svg");
    let t = stabflow_core::formats::parse_trace(&std::fs::read_to_string(&trace).unwrap()).unwrap();
    let steps: Vec<usize> = doc
        .descendants()
        .filter(|n| n.attribute("class") == Some("snapshot"))
        .map(|n| n.attribute("data-step").unwrap().parse().unwrap())
        .collect();
    assert_eq!(steps.first(), Some(&0));
    assert_eq!(steps.last(), Some(&t.records[t.records.len() - 1].step));
    // n = 5 hexagon: 9 diagonals
    let diagonals = doc.descendants().filter(|n| n.has_tag_name("line")).count();
    assert_eq!(diagonals, 9);
}

#[test]
fn annulus_reports() {
    let gd = |args: &[&str]| {
        let out = stabflow(args);
        assert_eq!(code(&out), 0);
        stdout(&out).lines().last().unwrap().to_string()
    };
    assert_eq!(gd(&["annulus", "--m", "3", "--r", "2", "--w", "2"]), "Gd 5/3");
    assert_eq!(gd(&["annulus", "--m", "2", "--r", "2", "--w", "0"]), "Gd 1");
    assert_eq!(gd(&["annulus", "--m", "1", "--r", "1", "--w", "3"]), "Gd 4");
    assert_eq!(
        gd(&["annulus", "--m", "3", "--r", "2", "--w", "2", "--ceiling-indices"]),
        "Gd 5/3"
    );
    assert_eq!(code(&stabflow(&["annulus", "--m", "0", "--r", "2", "--w", "2"])), 2);
    assert_eq!(code(&stabflow(&["annulus", "--m", "2", "--r", "2", "--w", "-1"])), 2);
    assert_eq!(code(&stabflow(&["annulus", "--m", "2"])), 2);
}

#[test]
fn oracle_check_codes() {
    let ok = stabflow(&["oracle-check", "--n", "6"]);
    assert_eq!(code(&ok), 0);
    assert!(stdout(&ok).lines().all(|l| l.starts_with("PASS")));
    let bad = stabflow(&["oracle-check", "--n", "3", "--inject-fault"]);
    assert_eq!(code(&bad), 1);
    assert!(stdout(&bad).contains("M[2,2] -> M[1,1]"));
    assert_eq!(code(&stabflow(&["oracle-check", "--n", "9"])), 2);
}

#[test]
fn oracle_bound_from_environment() {
    let run = |bound: &str| {
        Command::new(env!("CARGO_BIN_EXE_stabflow"))
            .args(["oracle-check", "--n", "6", "--charts", "5"])
            .env("STABFLOW_ORACLE_BOUND", bound)
            .output()
            .unwrap()
    };
    assert_eq!(code(&run("5")), 2);
    assert_eq!(code(&run("6")), 0);
}

#[test]
fn critical_values_from_files() {
    let cv = |args: &[&str]| {
        let out = stabflow(args);
        (code(&out), stdout(&out).trim().to_string())
    };
    assert_eq!(cv(&["critical-values", path_str(&data("annulus.json"))]), (0, "{1, 5/3}".into()));
    assert_eq!(
        cv(&["critical-values", "--flag-negative-windings", path_str(&data("disk.json"))]),
        (0, "{3/5, 1}".into())
    );
    assert_eq!(cv(&["critical-values", path_str(&data("bad_winding.json"))]).0, 3);
}

#[test]
fn distance_and_hn() {
    let out = stabflow(&[
        "distance",
        path_str(&data("chart_a2.json")),
        path_str(&data("chart_a2_scaled.json")),
    ]);
    assert_eq!(stdout(&out).trim(), "0.693147180560");
    let out = stabflow(&["--format", "machine", "hn", path_str(&data("chart_a2.json")), "1,2"]);
    let v: serde_json::Value = serde_json::from_str(&stdout(&out)).unwrap();
    assert_eq!(v["factors"].as_array().unwrap().len(), 1);
    assert_eq!(code(&stabflow(&["hn", path_str(&data("chart_a2.json")), "1,3"])), 2);
}

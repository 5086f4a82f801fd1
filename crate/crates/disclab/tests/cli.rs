//! End-to-end runs of the installed binary: generate, measure, separate,
//! extract, and round-trip through real files, checking exit codes as the
//! contract pins them (0 ok, 1 domain error, 2 budget exceeded).

use std::path::Path;
use std::process::{Command, Output};

use serde_json::Value;

fn disclab(args: &[&str], dir: &Path) -> Output {
    Command::new(env!("CARGO_BIN_EXE_disclab"))
        .args(args)
        .current_dir(dir)
        .output()
        .expect("binary runs")
}

fn stdout_json(out: &Output) -> Value {
    assert!(
        out.status.success(),
        "exit {:?}, stderr: {}",
        out.status.code(),
        String::from_utf8_lossy(&out.stderr)
    );
    serde_json::from_slice(&out.stdout).unwrap_or_else(|e| {
        panic!(
            "stdout is not JSON ({e}): {}",
            String::from_utf8_lossy(&out.stdout)
        )
    })
}

#[test]
fn generate_measure_separate_extract_pipeline() {
    let tmp = tempfile::tempdir().unwrap();
    let dir = tmp.path();

    let out = disclab(
        &["gen", "grid", "-k", "3", "-d", "2", "--out", "g.json"],
        dir,
    );
    assert!(out.status.success());
    let g: Value = serde_json::from_str(&std::fs::read_to_string(dir.join("g.json")).unwrap())
        .unwrap();
    assert_eq!(g["n"], 9);
    assert_eq!(g["edges"].as_array().unwrap().len(), 12);

    let out = disclab(
        &[
            "--json",
            "gen",
            "hedgehog",
            "-n",
            "6",
            "-r",
            "2",
            "--out",
            "h.json",
            "--colouring-out",
            "hc.json",
        ],
        dir,
    );
    let v = stdout_json(&out);
    assert_eq!(v["family"], "hedgehog");
    assert_eq!(v["colouring"], 2);

    let out = disclab(
        &[
            "--json",
            "disc",
            "tree",
            "--graph",
            "h.json",
            "--colouring",
            "hc.json",
        ],
        dir,
    );
    assert_eq!(stdout_json(&out)["value"], 1);

    let out = disclab(
        &["--json", "disc", "tree", "--graph", "h.json", "--exact-min", "-r", "2"],
        dir,
    );
    assert_eq!(stdout_json(&out)["value"], 1);

    let out = disclab(&["--json", "sep", "--graph", "g.json", "-r", "2"], dir);
    let v = stdout_json(&out);
    assert_eq!(v["s_r"], 3, "3x3 grid separates at 3 vertices");
    assert!(v["bounds"]["kappa"].as_i64().unwrap() >= 1);
    let witness_parts = v["witness"]["parts"].as_array().unwrap();
    assert_eq!(witness_parts.len(), 2);

    let out = disclab(
        &[
            "--json",
            "extract",
            "--graph",
            "h.json",
            "--colouring",
            "hc.json",
            "--trace",
            "t.json",
        ],
        dir,
    );
    let v = stdout_json(&out);
    assert_eq!(v["violations"], 0);
    assert!(v["separator-size"].as_u64().unwrap() >= 1);
    let trace: Value =
        serde_json::from_str(&std::fs::read_to_string(dir.join("t.json")).unwrap()).unwrap();
    let stages: Vec<&str> = trace["trace"]["stages"]
        .as_array()
        .unwrap()
        .iter()
        .map(|s| s["stage"].as_str().unwrap())
        .collect();
    assert_eq!(stages, ["dual", "trimmed", "cleaned"]);
}

#[test]
fn plain_gen_prints_the_graph_itself() {
    let tmp = tempfile::tempdir().unwrap();
    let out = disclab(&["gen", "complete", "-n", "4"], tmp.path());
    let v = stdout_json(&out);
    assert_eq!(v["n"], 4);
    assert_eq!(v["edges"].as_array().unwrap().len(), 6);
}

#[test]
fn missing_input_exits_one() {
    let tmp = tempfile::tempdir().unwrap();
    let out = disclab(&["disc", "tree", "--graph", "nope.json", "--exact-min"], tmp.path());
    assert_eq!(out.status.code(), Some(1));
    assert!(!out.stderr.is_empty());
}

#[test]
fn exhausted_budget_exits_two() {
    let tmp = tempfile::tempdir().unwrap();
    let dir = tmp.path();
    let out = disclab(&["gen", "complete", "-n", "6", "--out", "k6.json"], dir);
    assert!(out.status.success());
    let out = disclab(
        &[
            "--budget",
            "10",
            "disc",
            "tree",
            "--graph",
            "k6.json",
            "--exact-min",
            "-r",
            "3",
        ],
        dir,
    );
    assert_eq!(out.status.code(), Some(2));
}

#[test]
fn dc_scan_reports_nonnegative_slack() {
    let tmp = tempfile::tempdir().unwrap();
    let out = disclab(
        &["--json", "extremal", "dc-scan", "-r", "2", "-k", "4", "--x", "0,1"],
        tmp.path(),
    );
    let v = stdout_json(&out);
    assert_eq!(v["nonnegative"], true);
    assert!(v["min-slack"].is_string());
}

#[test]
fn dot_export_is_well_formed() {
    let tmp = tempfile::tempdir().unwrap();
    let dir = tmp.path();
    disclab(&["gen", "hypercube", "-d", "2", "--out", "q2.json"], dir);
    let out = disclab(&["io", "dot", "--graph", "q2.json"], dir);
    assert!(out.status.success());
    let text = String::from_utf8_lossy(&out.stdout);
    assert!(text.starts_with("graph"));
    assert_eq!(text.matches("--").count(), 4);
}

#[test]
fn inline_experiment_writes_complete_report() {
    let tmp = tempfile::tempdir().unwrap();
    let dir = tmp.path();
    let out = disclab(
        &[
            "--out",
            "rep.json",
            "experiment",
            "--id",
            "phi-tightness",
            "-r",
            "2",
            "--seeds",
            "1",
            "--param",
            "n-min=3",
            "--param",
            "n-max=4",
        ],
        dir,
    );
    assert!(
        out.status.success(),
        "stderr: {}",
        String::from_utf8_lossy(&out.stderr)
    );
    let rep: Value =
        serde_json::from_str(&std::fs::read_to_string(dir.join("rep.json")).unwrap()).unwrap();
    assert_eq!(rep["complete"], true);
    assert_eq!(rep["experiment"], "phi-tightness");
    assert_eq!(rep["summary"]["phi-values"], serde_json::json!([3, 4]));
}

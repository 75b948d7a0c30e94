use std::collections::HashMap;
use std::fs;
use std::path::Path;
use std::process::{Command, Output};

fn run(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_robustnet"))
        .args(args)
        .env_remove("ROBUSTNET_BUDGET")
        .output()
        .expect("binary runs")
}

fn code(out: &Output) -> i32 {
    out.status.code().expect("exit code")
}

/// key=value pairs from the last stdout line containing `key`.
fn summary(out: &Output, key: &str) -> HashMap<String, String> {
    let stdout = String::from_utf8_lossy(&out.stdout);
    let line = stdout
        .lines()
        .rev()
        .find(|l| l.contains(&format!("{key}=")))
        .unwrap_or_else(|| panic!("no {key}= in {stdout}"));
    line.split_whitespace()
        .filter_map(|kv| kv.split_once('='))
        .map(|(k, v)| (k.to_string(), v.to_string()))
        .collect()
}

fn path_str(p: &Path) -> &str {
    p.to_str().unwrap()
}

#[test]
fn static_halves_f_twelve() {
    let out = run(&[
        "static", "--n", "12", "--nf", "3", "--method", "halves-f", "--f", "2",
    ]);
    assert_eq!(code(&out), 0);
    let s = summary(&out, "links");
    assert_eq!(s["links"], "24");
    assert_eq!(s["optimal_links"], "24");
}

#[test]
fn static_rejects_zero_nf() {
    assert_eq!(code(&run(&["static", "--n", "9", "--nf", "0"])), 2);
}

#[test]
fn static_halves_f1_writes_files() {
    let dir = tempfile::tempdir().unwrap();
    let json = dir.path().join("g.json");
    let dot = dir.path().join("g.dot");
    let out = run(&[
        "static",
        "--n",
        "8",
        "--method",
        "halves-f1",
        "--out",
        path_str(&json),
        "--dot",
        path_str(&dot),
    ]);
    assert_eq!(code(&out), 0);
    let s = summary(&out, "kappa");
    assert_eq!(s["links"], "20");
    assert_eq!(s["kappa"], "5");
    let doc: serde_json::Value = serde_json::from_str(&fs::read_to_string(&json).unwrap()).unwrap();
    assert_eq!(doc["n"], 8);
    assert_eq!(doc["edges"].as_array().unwrap().len(), 20);
    assert_eq!(doc["meta"]["method"], "halves-f1");
    let dot = fs::read_to_string(&dot).unwrap();
    assert_eq!(dot.matches("[color=red]").count(), 4);
    assert_eq!(dot.matches(" -- ").count(), 20);
}

#[test]
fn grow_half_to_twenty() {
    let out = run(&["grow", "--policy", "half", "--to", "20", "--verify-each"]);
    assert_eq!(code(&out), 0);
    let s = summary(&out, "links");
    assert_eq!(s["links"], "118");
    assert_eq!(s["n"], "20");
    assert_eq!(s["bound_ok"], "true");
}

#[test]
fn grow_fixed_nf_stays_under_bound() {
    let out = run(&[
        "grow", "--policy", "fixed-nf", "--nf", "3", "--from", "6", "--to", "30",
    ]);
    assert_eq!(code(&out), 0);
    let links: usize = summary(&out, "links")["links"].parse().unwrap();
    assert!(links <= 120);
}

#[test]
fn grow_rejects_indivisible_target() {
    assert_eq!(
        code(&run(&[
            "grow",
            "--policy",
            "fraction-2mf",
            "--m",
            "2",
            "--to",
            "15"
        ])),
        2
    );
    assert_eq!(code(&run(&["grow", "--policy", "half", "--to", "9"])), 2);
    assert_eq!(code(&run(&["grow", "--policy", "fraction-2f", "--to", "8"])), 2);
}

#[test]
fn grow_then_verify_agree() {
    let dir = tempfile::tempdir().unwrap();
    let json = dir.path().join("g.json");
    let out = run(&[
        "grow",
        "--policy",
        "fixed-nf",
        "--nf",
        "2",
        "--to",
        "13",
        "--insert",
        "random",
        "--seed",
        "4",
        "--verify-each",
        "--out",
        path_str(&json),
    ]);
    assert_eq!(code(&out), 0);
    let out = run(&["verify", path_str(&json), "--nf", "2"]);
    assert_eq!(code(&out), 0);
    assert_eq!(summary(&out, "robust")["robust"], "true");
}

#[test]
fn verify_fixture_ten() {
    let dir = tempfile::tempdir().unwrap();
    let json = dir.path().join("f10.json");
    assert_eq!(
        code(&run(&["export", "--fixture", "10", "--out", path_str(&json)])),
        0
    );
    let out = run(&["verify", path_str(&json), "--nf", "5"]);
    assert_eq!(code(&out), 0);
    assert_eq!(summary(&out, "checked_subsets")["checked_subsets"], "252");
}

#[test]
fn verify_cycle_prints_witness() {
    let dir = tempfile::tempdir().unwrap();
    let json = dir.path().join("c8.json");
    let edges: Vec<String> = (0..8)
        .map(|i| format!("[{},{}]", i.min((i + 1) % 8), i.max((i + 1) % 8)))
        .collect();
    fs::write(
        &json,
        format!("{{\"n\":8,\"edges\":[{}],\"meta\":{{}}}}", edges.join(",")),
    )
    .unwrap();
    let out = run(&["verify", path_str(&json), "--nf", "2"]);
    assert_eq!(code(&out), 1);
    assert_eq!(summary(&out, "witness")["witness"], "0,2");
}

#[test]
fn verify_complete_graph_link_constraint() {
    let dir = tempfile::tempdir().unwrap();
    let json = dir.path().join("k8.json");
    let edges: Vec<String> = (0..8)
        .flat_map(|i| (i + 1..8).map(move |j| format!("[{i},{j}]")))
        .collect();
    fs::write(
        &json,
        format!("{{\"n\":8,\"edges\":[{}],\"meta\":{{}}}}", edges.join(",")),
    )
    .unwrap();
    let out = run(&["verify", path_str(&json), "--nf", "3", "--check-lg"]);
    assert_eq!(code(&out), 1);
    let s = summary(&out, "lg_ok");
    assert_eq!(s["lg_ok"], "false");
    assert_eq!(s["links"], "28");
    assert_eq!(s["lg_limit"], "22");
}

#[test]
fn verify_budget_and_parse_errors() {
    let dir = tempfile::tempdir().unwrap();
    let json = dir.path().join("f12.json");
    run(&["export", "--fixture", "12", "--out", path_str(&json)]);
    let out = Command::new(env!("CARGO_BIN_EXE_robustnet"))
        .args(["verify", path_str(&json), "--nf", "6"])
        .env("ROBUSTNET_BUDGET", "100")
        .output()
        .unwrap();
    assert_eq!(code(&out), 3);
    let out = run(&[
        "verify",
        path_str(&json),
        "--nf",
        "6",
        "--budget",
        "100",
        "--method",
        "kappa",
    ]);
    assert_eq!(code(&out), 0);
    assert_eq!(summary(&out, "kappa")["kappa"], "7");

    let bad = dir.path().join("bad.json");
    fs::write(&bad, "{\"n\":3,\"edges\":[[3,3]],\"meta\":{}}").unwrap();
    assert_eq!(code(&run(&["verify", path_str(&bad), "--nf", "1"])), 2);
}

#[test]
fn report_half_trace() {
    let dir = tempfile::tempdir().unwrap();
    let trace = dir.path().join("t.jsonl");
    let csv = dir.path().join("t.csv");
    assert_eq!(
        code(&run(&[
            "grow",
            "--policy",
            "half",
            "--to",
            "100",
            "--trace",
            path_str(&trace)
        ])),
        0
    );
    let out = run(&["report", path_str(&trace), "--csv", path_str(&csv)]);
    assert_eq!(code(&out), 0);
    let s = summary(&out, "final_n");
    assert_eq!(s["links"], "2598");
    let savings: f64 = s["savings"].parse().unwrap();
    assert!((savings - (1.0 - 2598.0 / 4950.0)).abs() < 1e-9);
    let csv = fs::read_to_string(&csv).unwrap();
    assert_eq!(csv.lines().count(), 1 + 50);
    assert!(csv.starts_with("step,n,nf,links,bound,savings\n"));
}

#[test]
fn report_rejects_tampered_trace() {
    let dir = tempfile::tempdir().unwrap();
    let trace = dir.path().join("t.jsonl");
    run(&[
        "grow",
        "--policy",
        "half",
        "--to",
        "6",
        "--trace",
        path_str(&trace),
    ]);
    let text = fs::read_to_string(&trace).unwrap().replacen("[[0,2],", "[", 1);
    fs::write(&trace, text).unwrap();
    let out = run(&["report", path_str(&trace)]);
    assert_eq!(code(&out), 2);
    assert!(String::from_utf8_lossy(&out.stderr).contains("line 2"));
}

#[test]
fn export_trace_round_trip() {
    let dir = tempfile::tempdir().unwrap();
    let trace = dir.path().join("t.jsonl");
    let from_grow = dir.path().join("a.json");
    let from_trace = dir.path().join("b.json");
    let dot = dir.path().join("b.dot");
    run(&[
        "grow",
        "--policy",
        "fraction-2f",
        "--f",
        "2",
        "--to",
        "16",
        "--trace",
        path_str(&trace),
        "--out",
        path_str(&from_grow),
    ]);
    let out = run(&[
        "export",
        "--trace",
        path_str(&trace),
        "--out",
        path_str(&from_trace),
        "--dot",
        path_str(&dot),
    ]);
    assert_eq!(code(&out), 0);
    let a: serde_json::Value = serde_json::from_str(&fs::read_to_string(&from_grow).unwrap()).unwrap();
    let b: serde_json::Value = serde_json::from_str(&fs::read_to_string(&from_trace).unwrap()).unwrap();
    assert_eq!(a["edges"], b["edges"]);

    let again = dir.path().join("c.json");
    run(&[
        "export",
        "--graph",
        path_str(&from_trace),
        "--out",
        path_str(&again),
    ]);
    assert_eq!(fs::read(&from_trace).unwrap(), fs::read(&again).unwrap());
}

#[test]
fn export_needs_exactly_one_input() {
    assert_eq!(code(&run(&["export"])), 2);
    assert_eq!(code(&run(&["export", "--fixture", "8", "--graph", "x.json"])), 2);
    assert_eq!(code(&run(&["export", "--fixture", "9"])), 2);
}

#[test]
fn variable_schedule_runs() {
    let out = run(&[
        "grow",
        "--policy",
        "variable-nf",
        "--nf-schedule",
        "2,3,5",
        "--to",
        "14",
        "--verify-each",
    ]);
    assert_eq!(code(&out), 0);
    let s = summary(&out, "links");
    assert_eq!(s["nf"], "5");
    assert_eq!(s["bound"], "none");
}

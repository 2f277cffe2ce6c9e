use std::path::PathBuf;
use std::process::{Command, Output};

use serde_json::Value;

fn critid(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_critid"))
        .args(args)
        .output()
        .expect("binary runs")
}

fn json(args: &[&str]) -> Value {
    let out = critid(args);
    assert!(
        out.status.success(),
        "{args:?}: {}",
        String::from_utf8_lossy(&out.stderr)
    );
    serde_json::from_slice(&out.stdout).expect("valid JSON")
}

fn scratch(name: &str, contents: &str) -> PathBuf {
    let dir = std::env::temp_dir().join(format!("critid-cli-{}", std::process::id()));
    std::fs::create_dir_all(&dir).unwrap();
    let p = dir.join(name);
    std::fs::write(&p, contents).unwrap();
    p
}

fn factors(v: &Value) -> Vec<u64> {
    v["invariant_factors"]
        .as_array()
        .unwrap()
        .iter()
        .map(|x| x.as_u64().unwrap())
        .collect()
}

#[test]
fn gamma_of_paths_and_k1() {
    let v = json(&["gamma", "--family", "path:7"]);
    assert_eq!(v["result"]["gamma"], 6);
    let v = json(&["gamma", "@"]);
    assert_eq!(v["result"]["gamma"], 0);
    assert_eq!(v["result"]["indices"][0]["trivial"], false);
}

#[test]
fn gamma_of_example_needs_groebner() {
    let v = json(&["gamma", "--family", "example"]);
    assert_eq!(v["result"]["gamma"], 5);
    assert_eq!(v["result"]["witness"]["kind"], "groebner_unit");
    assert_eq!(v["result"]["witness"]["k"], 5);
}

#[test]
fn groups() {
    let v = json(&["group", "C~"]);
    assert_eq!(factors(&v), [1, 4, 4]);
    assert_eq!(v["spanning_trees"], "16");
    let v = json(&["group", "--family", "matching:6,2"]);
    assert_eq!(factors(&v), [1, 1, 1, 24, 24]);
    let v = json(&["group", "--family", "complete:1"]);
    assert!(factors(&v).is_empty());
}

#[test]
fn group_of_disconnected_graph_is_an_error() {
    let out = critid(&["group", "--family", "trivial:2"]);
    assert_eq!(out.status.code(), Some(2));
}

#[test]
fn classify_examples() {
    let v = json(&["classify", "--family", "multipartite:2,2,2"]);
    assert_eq!(v["family"], "tripartite");
    assert_eq!(v["parameters"], serde_json::json!([2, 2, 2]));
    assert_eq!(v["g2"], true);
    assert_eq!(v["gamma"], 2);

    let v = json(&["classify", "--family", "path:4"]);
    assert_eq!(v["gamma_le2"], false);
    assert_eq!(v["forbidden_hit"], "P4");

    // K4 plus five isolated vertices
    let mut edges = String::from("9\n");
    for u in 0..4 {
        for w in u + 1..4 {
            edges += &format!("{u} {w}\n");
        }
    }
    let p = scratch("k4_t5.txt", &edges);
    let v = json(&["classify", "--edges", p.to_str().unwrap()]);
    assert_eq!(v["connected"], false);
    assert_eq!(v["gamma_le2"], true);
    assert_eq!(v["gamma"], 1);
}

#[test]
fn g6_file_gives_one_report_per_line() {
    let p = scratch("two.g6", "C~\n\nCh\n");
    let v = json(&["group", p.to_str().unwrap()]);
    let a = v.as_array().unwrap();
    assert_eq!(a.len(), 2);
    assert_eq!(factors(&a[1]), [1, 1, 1]);
}

#[test]
fn ideal_with_groebner_basis() {
    let v = json(&["ideal", "-k", "2", "--groebner", "--family", "path:3"]);
    assert_eq!(v["groebner_basis"], serde_json::json!(["1"]));
    let v = json(&["ideal", "-k", "1", "@"]);
    assert_eq!(v["generators"], serde_json::json!(["x1"]));
}

#[test]
fn forb_search_small() {
    let v = json(&["forb-search", "-k", "1", "--n-max", "5"]);
    assert_eq!(v["graphs"], serde_json::json!(["BW"]));
}

#[test]
fn bad_input_exits_2() {
    for args in [
        &["gamma", "not-graph6!"][..],
        &["gamma", "--family", "bogus:1"],
        &["gamma"],
    ] {
        let out = critid(args);
        assert_eq!(out.status.code(), Some(2), "{args:?}");
    }
}

#[test]
fn verify_is_deterministic_and_reports_the_known_failures() {
    let a = critid(&["verify", "--n-max", "3", "--sweep-bound", "4", "--jobs", "1"]);
    let b = critid(&["verify", "--n-max", "3", "--sweep-bound", "4", "--jobs", "4"]);
    assert_eq!(a.stdout, b.stdout);
    assert_eq!(a.status.code(), Some(1));
    let v: Value = serde_json::from_slice(&a.stdout).unwrap();
    let red: Vec<&str> = v["suites"]
        .as_array()
        .unwrap()
        .iter()
        .filter(|s| s["pass"] == false)
        .map(|s| s["suite"].as_str().unwrap())
        .collect();
    assert_eq!(red, ["V6", "V7", "V8"]);
}

#[test]
fn verify_rejects_large_bounds() {
    assert_eq!(critid(&["verify", "--n-max", "8"]).status.code(), Some(2));
}

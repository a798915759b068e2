use std::fs;
use std::path::Path;
use std::process::{Command, Output};

use serde_json::Value;

fn leibniz(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_leibniz")).args(args).output().expect("binary runs")
}

fn stdout(o: &Output) -> String {
    String::from_utf8_lossy(&o.stdout).into_owned()
}

fn path_str(p: &Path) -> &str {
    p.to_str().unwrap()
}

const ENTRY_3: &str = r#"{"n":4,"f":1,
  "A":[[[1,0,0,0,0,0],[0,-1,0,0,0,0],[0,0,0,0,0,0],[0,0,0,0,0,0],[0,0,0,0,-1,0],[0,0,0,0,0,0]]],
  "B":[[[-1,0,0,0,0,0],[0,1,0,0,0,0],[0,0,0,0,0,1],[0,0,0,0,0,0],[0,0,0,0,1,0],[0,0,0,0,0,0]]],
  "sigma":{"1,1":{"14":"2"}}}"#;

#[test]
fn build_t_then_verify() {
    let dir = tempfile::tempdir().unwrap();
    let t4 = dir.path().join("t4.json");
    assert_eq!(leibniz(&["build-t", "--n", "4", "-o", path_str(&t4)]).status.code(), Some(0));
    let out = leibniz(&["verify", path_str(&t4), "--format", "json"]);
    assert_eq!(out.status.code(), Some(0));
    let v: Value = serde_json::from_str(&stdout(&out)).unwrap();
    assert_eq!(v["leibniz"], true);
    assert_eq!(v["lie"], true);
    let series = leibniz(&["series", path_str(&t4), "--format", "json"]);
    let v: Value = serde_json::from_str(&stdout(&series)).unwrap();
    assert_eq!(v["lower_central"], serde_json::json!([6, 3, 1, 0]));
    assert_eq!(v["derived"], serde_json::json!([3, 0]));
}

#[test]
fn catalog_verify_summary() {
    let out = leibniz(&["catalog", "verify"]);
    assert_eq!(out.status.code(), Some(0));
    assert!(stdout(&out).contains("12/12 entries pass, 0 Lie leakage"));
    let one = leibniz(&["catalog", "verify", "--entry", "T1-3", "--samples", "default", "--format", "json"]);
    assert_eq!(one.status.code(), Some(0));
    let v: Value = serde_json::from_str(&stdout(&one)).unwrap();
    assert_eq!(v["passed"], 1);
}

#[test]
fn condition_violation_exits_one() {
    let out = leibniz(&["catalog", "verify", "--entry", "T1-1", "--samples", "a=-1,s11=1"]);
    assert_eq!(out.status.code(), Some(1));
    assert!(String::from_utf8_lossy(&out.stderr).contains("a != -1"));
}

#[test]
fn input_errors_exit_two() {
    let dir = tempfile::tempdir().unwrap();
    let bad = dir.path().join("bad.json");
    fs::write(&bad, "{\"n\": 4,\n \"f\": }").unwrap();
    let out = leibniz(&["verify", path_str(&bad)]);
    assert_eq!(out.status.code(), Some(2));
    assert!(String::from_utf8_lossy(&out.stderr).contains("line 2"));
    assert_eq!(leibniz(&["verify", "/nonexistent/spec.json"]).status.code(), Some(2));
    assert_eq!(leibniz(&["catalog", "verify", "--entry", "T9-9"]).status.code(), Some(2));
    assert_eq!(leibniz(&["frobnicate"]).status.code(), Some(2));
}

#[test]
fn failing_spec_exits_one() {
    let dir = tempfile::tempdir().unwrap();
    let spec = dir.path().join("spec.json");
    fs::write(&spec, ENTRY_3.replace("[[-1,0,0,0,0,0]", "[[-2,0,0,0,0,0]")).unwrap();
    let out = leibniz(&["verify", path_str(&spec)]);
    assert_eq!(out.status.code(), Some(1), "{}", stdout(&out));
    assert!(stdout(&out).contains("FAIL"));
}

#[test]
fn transform_round_trip() {
    let dir = tempfile::tempdir().unwrap();
    let file = |name: &str, body: &str| {
        let p = dir.path().join(name);
        fs::write(&p, body).unwrap();
        p
    };
    let spec = file("spec.json", ENTRY_3);
    let mu = file("mu.json", r#"{"mu":[{"12":"1","23":"-2","14":"1/3"}]}"#);
    let zero = file("zero.json", r#"{"mu":[{}]}"#);
    let g = file(
        "g.json",
        r#"{"G":[[2,0,0,0,0,0],[0,1,0,0,0,0],[0,0,3,0,0,0],[0,0,0,2,0,0],[0,0,0,0,3,0],[0,0,0,0,0,6]]}"#,
    );
    let m = file("m.json", r#"{"M":[["-1/2"]]}"#);
    let json = |args: &[&str]| -> Value {
        let out = leibniz(args);
        assert_eq!(out.status.code(), Some(0), "{args:?}");
        serde_json::from_str(&stdout(&out)).unwrap()
    };
    let original = json(&["transform", path_str(&spec), "--shift", path_str(&zero)]);
    for (flag, param) in [("--shift", &mu), ("--basis", &g), ("--recombine", &m)] {
        let moved = dir.path().join("moved.json");
        let out = leibniz(&["transform", path_str(&spec), flag, path_str(param), "-o", path_str(&moved)]);
        assert_eq!(out.status.code(), Some(0));
        assert_eq!(leibniz(&["verify", path_str(&moved)]).status.code(), Some(0));
        let back = json(&["transform", path_str(&moved), flag, path_str(param), "--inverse"]);
        assert_eq!(back, original, "{flag}");
    }
}

#[test]
fn transform_rejects_bad_g() {
    let dir = tempfile::tempdir().unwrap();
    let spec = dir.path().join("spec.json");
    let g = dir.path().join("g.json");
    fs::write(&spec, ENTRY_3).unwrap();
    fs::write(&g, r#"{"G":[[0,1,0,0,0,0],[1,0,0,0,0,0],[0,0,1,0,0,0],[0,0,0,1,0,0],[0,0,0,0,1,0],[0,0,0,0,0,1]]}"#).unwrap();
    assert_eq!(leibniz(&["transform", path_str(&spec), "--basis", path_str(&g)]).status.code(), Some(1));
    assert_eq!(leibniz(&["transform", path_str(&spec)]).status.code(), Some(2));
}

#[test]
fn constraints_report_names_forced_zeros() {
    let out = leibniz(&["constraints", "derive", "--n", "4", "--f", "1", "--format", "json"]);
    assert_eq!(out.status.code(), Some(0));
    let v: Value = serde_json::from_str(&stdout(&out)).unwrap();
    let zeros: Vec<&str> = v["forced_zero"].as_array().unwrap().iter().map(|x| x.as_str().unwrap()).collect();
    assert!(zeros.contains(&"A1_34_23"));
    assert!(zeros.contains(&"A1_12_23"));
    assert_eq!(v["support_mismatches"].as_array().unwrap().len(), 0);
    assert_eq!(v["counts_by_family"]["7"], serde_json::json!([0, 6]));
}

#[test]
fn invariants_and_normalize() {
    let dir = tempfile::tempdir().unwrap();
    let spec = dir.path().join("spec.json");
    fs::write(&spec, ENTRY_3).unwrap();
    let out = leibniz(&["invariants", path_str(&spec), "--format", "json"]);
    let v: Value = serde_json::from_str(&stdout(&out)).unwrap();
    assert_eq!(v["is_lie"], false);
    assert_eq!(v["dim"], 7);
    let norm = dir.path().join("norm.json");
    assert_eq!(leibniz(&["normalize", path_str(&spec), "-o", path_str(&norm)]).status.code(), Some(0));
    assert_eq!(leibniz(&["verify", path_str(&norm)]).status.code(), Some(0));
}

#[test]
fn reports_are_deterministic() {
    let a = stdout(&leibniz(&["catalog", "distinctness", "--format", "json"]));
    let b = stdout(&leibniz(&["catalog", "distinctness", "--format", "json"]));
    assert_eq!(a, b);
    assert!(stdout(&leibniz(&["catalog", "list"])).contains("T2-11"));
}

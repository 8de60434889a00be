use std::path::PathBuf;
use std::process::{Command, Output};

use serde_json::Value;

fn bin(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_bsideal"))
        .args(args)
        .env_remove("BSIDEAL_CACHE_DIR")
        .output()
        .expect("binary runs")
}

fn data(name: &str) -> String {
    PathBuf::from(env!("CARGO_MANIFEST_DIR"))
        .join("examples/data")
        .join(name)
        .to_string_lossy()
        .into_owned()
}

fn schema() -> jsonschema::JSONSchema {
    let path = PathBuf::from(env!("CARGO_MANIFEST_DIR")).join("../../docs/result.schema.json");
    let schema: Value = serde_json::from_str(&std::fs::read_to_string(path).unwrap()).unwrap();
    jsonschema::JSONSchema::compile(&schema).expect("schema compiles")
}

/// Runs, checks exit 0, validates against the schema and returns the document.
fn document(args: &[&str]) -> Value {
    let out = bin(args);
    assert!(out.status.success(), "{args:?}: {}", String::from_utf8_lossy(&out.stderr));
    let doc: Value = serde_json::from_slice(&out.stdout).unwrap();
    let schema = schema();
    if let Err(errors) = schema.validate(&doc) {
        let msgs: Vec<String> = errors.map(|e| format!("{e} at {}", e.instance_path)).collect();
        panic!("{args:?} violates the schema: {msgs:?}");
    }
    doc
}

#[test]
fn bfun_of_square() {
    let doc = document(&["bfun", "-f", "x^2"]);
    assert_eq!(doc["generators"], serde_json::json!(["(s+1)*(s+1/2)"]));
    assert_eq!(doc["roots"], serde_json::json!([[-1, 1, 1], [-1, 2, 1]]));
    assert_eq!(doc["reports"]["lct"], serde_json::json!([1, 2]));
}

#[test]
fn tuple_of_coordinates() {
    let doc = document(&["tuple", "-F", "x", "-F", "y", "-m", "1,1"]);
    assert_eq!(doc["generators"], serde_json::json!(["(s1+1)*(s2+1)"]));
    assert_eq!(doc["exp_locus"].as_array().unwrap().len(), 2);
    assert_eq!(doc["reports"]["structure"]["passes"], Value::Bool(true));
}

#[test]
fn verify_finds_mixed_derivative() {
    let doc = document(&["verify", "-b", "(s1+1)*(s2+1)", "-F", "x", "-F", "y", "-m", "1,1", "--max-order", "2"]);
    assert_eq!(doc["reports"]["witness"], "d_x*d_y");
    let doc = document(&["verify", "-b", "s+1", "-F", "x^2", "--max-order", "3"]);
    assert_eq!(doc["reports"]["verified"], Value::Bool(false));
}

#[test]
fn every_command_validates() {
    let cusp = data("cusp_resolution.json");
    let nc = data("normal_crossings.json");
    document(&["ann", "-F", "x^2+y^3"]);
    let doc = document(&["oracle-bfun", "-f", "x^2+y^3", "--ansatz-s-degree", "1", "--max-order", "3"]);
    assert_eq!(doc["generators"], serde_json::json!(["(s+7/6)*(s+1)*(s+5/6)"]));
    let doc = document(&["exp-locus", "-F", "x", "-F", "y", "--weights", "1,1"]);
    assert_eq!(doc["reports"]["diagonal"]["angles"], serde_json::json!([[0, 1]]));
    let doc = document(&["zeta", "--resolution", &cusp, "-F", "x^2+y^3"]);
    assert_eq!(doc["reports"]["containment"]["all_contained"], Value::Bool(true));
    assert_eq!(doc["components"], serde_json::json!([{"a": [1], "b": 1}, {"a": [6], "b": 5}]));
    let doc = document(&["zeta", "--resolution", &nc, "-F", "x", "-F", "y"]);
    assert_eq!(doc["reports"]["containment"]["all_contained"], Value::Bool(true));
    document(&["zeta", "--resolution", &nc]);
}

#[test]
fn suite_reports_only_known_defects() {
    let doc = document(&["suite"]);
    assert_eq!(doc["reports"]["unexpected_failures"], 0);
    assert_eq!(doc["reports"]["criteria"].as_array().unwrap().len(), 9);
}

#[test]
fn identical_invocations_identical_bytes() {
    let args = ["tuple", "-F", "x", "-F", "x*y", "-m", "1,1"];
    assert_eq!(bin(&args).stdout, bin(&args).stdout);
}

#[test]
fn exit_codes() {
    assert_eq!(bin(&["bfun", "-f", "x^-1"]).status.code(), Some(1));
    assert_eq!(bin(&["bfun", "-f", "s+x"]).status.code(), Some(1));
    assert_eq!(bin(&["tuple", "-F", "x", "-F", "y", "-m", "1"]).status.code(), Some(1));
    assert_eq!(bin(&["frobnicate"]).status.code(), Some(1));
    assert_eq!(bin(&["bfun", "-f", "x^2+y^3", "--max-pairs", "2"]).status.code(), Some(2));
    let err = bin(&["bfun", "-f", "x^-1"]);
    assert!(String::from_utf8_lossy(&err.stderr).contains("position 1"));
}

#[test]
fn cache_replays_bytes() {
    let dir = tempfile::tempdir().unwrap();
    let run = || {
        Command::new(env!("CARGO_BIN_EXE_bsideal"))
            .args(["bfun", "-f", "x^3"])
            .env("BSIDEAL_CACHE_DIR", dir.path())
            .output()
            .unwrap()
    };
    let first = run();
    assert_eq!(std::fs::read_dir(dir.path()).unwrap().count(), 1);
    let second = run();
    assert_eq!(first.stdout, second.stdout);
    let out = dir.path().join("out.json");
    let o = bin(&["bfun", "-f", "x^3", "-o", out.to_str().unwrap()]);
    assert!(o.status.success());
    assert_eq!(std::fs::read(&out).unwrap(), first.stdout);
}

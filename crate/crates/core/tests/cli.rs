use std::path::Path;
use std::process::{Command, Output};

use serde_json::Value;

fn thrackle(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_thrackle"))
        .args(args)
        .env_remove("THRACKLE_THREADS")
        .output()
        .expect("binary runs")
}

fn stdout(o: &Output) -> String {
    String::from_utf8(o.stdout.clone()).unwrap()
}

fn schema(name: &str) -> jsonschema::JSONSchema {
    let path = Path::new(env!("CARGO_MANIFEST_DIR")).join("schemas").join(name);
    let raw: Value = serde_json::from_str(&std::fs::read_to_string(&path).unwrap()).unwrap();
    jsonschema::JSONSchema::compile(&raw).unwrap_or_else(|e| panic!("{name}: {e}"))
}

fn assert_valid(schema_name: &str, doc: &Value) {
    let s = schema(schema_name);
    let msgs: Vec<String> = match s.validate(doc) {
        Ok(()) => return,
        Err(errors) => errors.map(|e| format!("{} at {}", e, e.instance_path)).collect(),
    };
    panic!("{schema_name}: {msgs:?}");
}

#[test]
fn count_examples() {
    let o = thrackle(&["count", "--s", "2", "--t", "3", "--method", "closed,brute"]);
    assert_eq!(o.status.code(), Some(0));
    assert_eq!(stdout(&o), "3 3 OK\n");

    let o = thrackle(&["count", "--s", "6", "--t", "6", "--method", "closed,recurrence,enum"]);
    assert_eq!(stdout(&o), "252 252 252 OK\n");

    let o = thrackle(&["count", "--s", "0", "--t", "3"]);
    assert_eq!(o.status.code(), Some(2));
    assert!(String::from_utf8_lossy(&o.stderr).contains("error"));
}

#[test]
fn malformed_flags_exit_two() {
    for args in [
        vec!["count", "--s", "2"],
        vec!["count", "--s", "2", "--t", "3", "--method", "guess"],
        vec!["verify", "--r", "5", "--n", "5"],
        vec!["triangulate", "--r", "2", "--n", "13"],
        vec!["enum", "--s", "2", "--t", "2", "--format", "yaml"],
        vec!["phi", "--s", "2", "--t", "3", "--invert", "1x1"],
        vec!["matroid", "--input", "/nonexistent/matroid.json"],
        vec![],
    ] {
        assert_eq!(thrackle(&args).status.code(), Some(2), "{args:?}");
    }
}

#[test]
fn verify_reports_and_succeeds() {
    let o = thrackle(&["verify", "--r", "2", "--n", "5"]);
    assert_eq!(o.status.code(), Some(0));
    let out = stdout(&o);
    assert!(out.contains("count=3 expected=3 unimodular=3/3 volume=3/3"), "{out}");
    let big = thrackle(&["verify", "--r", "5", "--n", "10", "--samples", "20", "--seed", "9"]);
    assert_eq!(big.status.code(), Some(0));
    assert!(stdout(&big).contains("volume=skipped"));
}

#[test]
fn repeated_runs_are_byte_identical() {
    for args in [
        vec!["verify", "--r", "3", "--n", "7", "--samples", "50", "--seed", "11"],
        vec!["triangulate", "--r", "3", "--n", "7", "--format", "json"],
        vec!["enum", "--s", "3", "--t", "4", "--format", "dot"],
        vec!["ehrhart", "--r", "2", "--n", "6", "--format", "json"],
    ] {
        let a = thrackle(&args);
        let b = thrackle(&args);
        assert_eq!(a.stdout, b.stdout, "{args:?}");
        let mut threaded = args.clone();
        threaded.extend(["--threads", "1"]);
        assert_eq!(a.stdout, thrackle(&threaded).stdout, "{args:?} single-threaded");
    }
}

#[test]
fn enum_json_lines_match_schema() {
    let o = thrackle(&["enum", "--s", "3", "--t", "3", "--format", "json"]);
    let lines: Vec<&str> = std::str::from_utf8(&o.stdout).unwrap().lines().collect();
    assert_eq!(lines.len(), 6);
    for line in lines {
        assert_valid("thrackle.schema.json", &serde_json::from_str(line).unwrap());
    }
}

#[test]
fn intervals_format_lists_breakpoints() {
    let o = thrackle(&["enum", "--s", "3", "--t", "2", "--format", "intervals"]);
    assert_eq!(stdout(&o), "4 4\n4 5\n5 5\n");
}

#[test]
fn phi_round_trip_through_cli() {
    let o = thrackle(&["phi", "--s", "3", "--t", "3"]);
    for line in stdout(&o).lines() {
        let bits = line.split_whitespace().next().unwrap();
        let back = thrackle(&["phi", "--s", "3", "--t", "3", "--invert", bits]);
        assert_eq!(back.status.code(), Some(0));
        let bp = line.split_once("breakpoints=").unwrap().1;
        assert!(stdout(&back).starts_with(&format!("breakpoints={bp}")), "{line}");
    }
}

#[test]
fn groebner_json_matches_schema() {
    let o = thrackle(&["groebner-check", "--r", "3", "--n", "6", "--format", "json"]);
    assert_eq!(o.status.code(), Some(0));
    let doc: Value = serde_json::from_slice(&o.stdout).unwrap();
    assert_valid("groebner.schema.json", &doc);
    assert_eq!(doc["basis"].as_array().unwrap().len(), 9);
    assert_eq!(doc["passed"], Value::Bool(true));
}

#[test]
fn triangulation_json_matches_schema() {
    let o = thrackle(&["triangulate", "--r", "2", "--n", "6", "--format", "json"]);
    let doc: Value = serde_json::from_slice(&o.stdout).unwrap();
    assert_valid("triangulation.schema.json", &doc);
    assert_eq!(doc["count"], 4);
    let csv = thrackle(&["triangulate", "--r", "2", "--n", "6", "--format", "csv"]);
    assert_eq!(stdout(&csv), "r,n,count,expected,unimodular,volume_ok\n2,6,4,4,4,true\n");
}

#[test]
fn ehrhart_json_matches_schema() {
    let o = thrackle(&["ehrhart", "--r", "2", "--n", "5", "--kmax", "5", "--format", "json"]);
    let doc: Value = serde_json::from_slice(&o.stdout).unwrap();
    assert_valid("ehrhart.schema.json", &doc);
    assert_eq!(doc["normalized_volume"], "3");
    let counts: Vec<&str> = doc["counts"].as_array().unwrap().iter().map(|c| c.as_str().unwrap()).collect();
    assert_eq!(counts, ["1", "6", "18", "40", "75", "126"]);
}

#[test]
fn matroid_input_and_report_match_schemas() {
    let dir = tempfile::tempdir().unwrap();
    let path = dir.path().join("cycle.json");
    let input = serde_json::json!({
        "n": 4, "r": 3,
        "bases": [[1, 2, 3], [1, 2, 4], [1, 3, 4], [2, 3, 4]]
    });
    assert_valid("matroid-input.schema.json", &input);
    std::fs::write(&path, input.to_string()).unwrap();
    let p = path.to_str().unwrap();

    let o = thrackle(&["matroid", "--input", p, "--format", "json", "--all-relabelings"]);
    assert_eq!(o.status.code(), Some(0));
    let doc: Value = serde_json::from_slice(&o.stdout).unwrap();
    assert_valid("matroid-report.schema.json", &doc);
    for rep in doc["reports"].as_array().unwrap() {
        assert_eq!(rep["count"], 1);
    }

    let one = thrackle(&["matroid", "--input", p, "--basis", "1,2,3"]);
    assert!(stdout(&one).contains("basis=[1, 2, 3]"));
    assert!(stdout(&one).contains("count=1"));
    assert_eq!(thrackle(&["matroid", "--input", p, "--basis", "1,2"]).status.code(), Some(2));
}

#[test]
fn non_matroid_input_is_rejected() {
    let dir = tempfile::tempdir().unwrap();
    let path = dir.path().join("bad.json");
    std::fs::write(&path, r#"{"n":4,"r":2,"bases":[[1,2],[3,4]]}"#).unwrap();
    let o = thrackle(&["matroid", "--input", path.to_str().unwrap()]);
    assert_eq!(o.status.code(), Some(2));
}

use std::path::{Path, PathBuf};
use std::process::{Command, Output};

use serde_json::Value;

const T1: &str = r#"{"size":4,"table":[[1,2,3,4],[1,2,3,4],[1,2,3,4],[2,1,1,4]]}"#;
const T2: &str = r#"{"size":4,"table":[[1,2,4,3],[1,2,4,3],[2,1,3,4],[2,1,3,4]]}"#;

fn spindle(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_spindle")).args(args).env_remove("SPINDLE_MAX_ENTRIES").output().expect("binary runs")
}

fn stdout(out: &Output) -> String {
    String::from_utf8(out.stdout.clone()).unwrap()
}

fn write(dir: &Path, name: &str, text: &str) -> PathBuf {
    let path = dir.join(name);
    std::fs::write(&path, text).unwrap();
    path
}

fn envelope(out: &Output) -> Value {
    let text = stdout(out);
    serde_json::from_str(text.lines().last().unwrap()).unwrap()
}

#[test]
fn validate_reports_axioms() {
    let dir = tempfile::tempdir().unwrap();
    let t1 = write(dir.path(), "t1.json", T1);
    let out = spindle(&["validate", "--table", t1.to_str().unwrap(), "--one-based"]);
    assert_eq!(out.status.code(), Some(0));
    assert!(stdout(&out).contains("spindle: yes"));

    let xor = write(dir.path(), "xor.csv", "0,1\n1,0\n");
    let out = spindle(&["validate", "--table", xor.to_str().unwrap()]);
    assert_eq!(out.status.code(), Some(1));
    assert!(stdout(&out).contains("distributivity fails at (0, 1, 1)"));

    let empty = write(dir.path(), "empty.json", "");
    let out = spindle(&["validate", "--table", empty.to_str().unwrap()]);
    assert_eq!(out.status.code(), Some(3));
    assert!(String::from_utf8_lossy(&out.stderr).contains("line 1 column 0"));

    let missing = dir.path().join("missing.json");
    assert_eq!(spindle(&["validate", "--table", missing.to_str().unwrap()]).status.code(), Some(3));
}

#[test]
fn homology_examples() {
    let dir = tempfile::tempdir().unwrap();
    let t2 = write(dir.path(), "t2.json", T2);
    let out = spindle(&["homology", "--table", t2.to_str().unwrap(), "--one-based", "--variant", "full", "--degrees", "0..2"]);
    assert_eq!(out.status.code(), Some(0));
    assert_eq!(stdout(&out), "H_0 = Z^2\nH_1 = Z^2 + Z_2^4\nH_2 = Z^8 + Z_2^12\n");

    let out = spindle(&["homology", "--fspindle", "2,1,1", "--variant", "normalized", "--degrees", "1..2"]);
    assert_eq!(stdout(&out), "H_1 = Z^2 + Z_2\nH_2 = Z^4 + Z_2^4\n");

    let out = spindle(&["homology", "--sigma", "5,1", "--degrees", "1..1"]);
    assert_eq!(stdout(&out), "H_1 = Z^2 + Z_5\n");
}

#[test]
fn resource_limits_exit_two_with_partial_results() {
    let out = spindle(&["homology", "--trivial", "2", "--degrees", "5..6"]);
    assert_eq!(out.status.code(), Some(2));
    assert!(stdout(&out).starts_with("H_5 = Z^32\n"));

    let out = Command::new(env!("CARGO_BIN_EXE_spindle"))
        .args(["homology", "--trivial", "2", "--degrees", "0..1", "--format", "json"])
        .env("SPINDLE_MAX_ENTRIES", "10")
        .output()
        .unwrap();
    assert_eq!(out.status.code(), Some(2));
    let report = envelope(&out);
    assert_eq!(report["config"]["command"]["max_entries"], 10);
    assert_eq!(report["result"]["failures"][0]["degree"], 1);
}

#[test]
fn json_reports_are_reproducible_and_round_trip() {
    let args = ["homology", "--fspindle", "2,1,1", "--degrees", "0..2", "--format", "json"];
    let first = spindle(&args);
    assert_eq!(first.stdout, spindle(&args).stdout);
    let report = envelope(&first);
    assert_eq!(report["config"]["command"]["fspindle"], "2,1,1");
    assert_eq!(report["input"]["sha256"].as_str().unwrap().len(), 64);
    let results = &report["result"]["results"];
    let parsed: Vec<spindle_homology::homology::DegreeResult> = serde_json::from_value(results.clone()).unwrap();
    assert_eq!(&serde_json::to_value(&parsed).unwrap(), results);
    assert_eq!(parsed[2].group.to_string(), "Z^8 + Z_2^4");
}

#[test]
fn output_file() {
    let dir = tempfile::tempdir().unwrap();
    let path = dir.path().join("report.txt");
    let out = spindle(&["homology", "--sigma", "5,1", "--degrees", "1..1", "--output", path.to_str().unwrap()]);
    assert_eq!(out.status.code(), Some(0));
    assert!(out.stdout.is_empty());
    assert_eq!(std::fs::read_to_string(path).unwrap(), "H_1 = Z^2 + Z_5\n");
}

#[test]
fn crosscheck_gates() {
    let out = spindle(&["crosscheck", "--sweep", "3", "--degrees", "0..3"]);
    assert_eq!(out.status.code(), Some(0));
    assert!(stdout(&out).ends_with("0 mismatches\n"));

    let dir = tempfile::tempdir().unwrap();
    let t1 = write(dir.path(), "t1.json", T1);
    let out = spindle(&["crosscheck", "--table", t1.to_str().unwrap(), "--one-based", "--degrees", "0..2"]);
    assert_eq!(out.status.code(), Some(0));
    assert!(stdout(&out).contains("full n=2: Z^8 + Z_2^4 vs Z^8 + Z_2^4 ok"));

    let out = spindle(&["crosscheck", "--blocks", "2,1;3,1", "--format", "json"]);
    assert_eq!(out.status.code(), Some(0));
    let report = envelope(&out);
    assert_eq!(report["result"]["checks"][0]["lhs"]["torsion"], serde_json::json!([6]));

    let t2 = write(dir.path(), "t2.json", T2);
    assert_eq!(spindle(&["crosscheck", "--table", t2.to_str().unwrap(), "--one-based"]).status.code(), Some(1));
}

#[test]
fn closed_forms() {
    let out = spindle(&["closed-form", "--sigma", "5,1", "--form", "normalized", "--degrees", "2..2"]);
    assert!(stdout(&out).ends_with("H_2 = Z^7 + Z_5^7\n"));
    let out = spindle(&["closed-form", "--blocks", "2,1;3,1", "--form", "h1"]);
    assert!(stdout(&out).contains("Z_6"));
}

#[test]
fn conjectures_and_enumeration() {
    let dir = tempfile::tempdir().unwrap();
    let t2 = write(dir.path(), "t2.json", T2);
    let out = spindle(&["conjectures", "--table", t2.to_str().unwrap(), "--one-based", "--nmax", "4", "--format", "json"]);
    assert_eq!(out.status.code(), Some(0));
    let text = stdout(&out);
    let lines: Vec<&str> = text.lines().collect();
    assert_eq!(lines.len(), 2);
    let r: Value = serde_json::from_str(lines[0]).unwrap();
    assert_eq!(r["rank_growth"]["status"], "pass");
    assert_eq!(r["group_recursion"]["status"], "pass");
    assert_eq!(r["torsion_growth"]["status"], "fail");

    let out = spindle(&["enumerate", "--size", "3", "--up-to-iso"]);
    assert_eq!(out.status.code(), Some(0));
    let text = stdout(&out);
    let count: usize = text.lines().last().unwrap().trim_start_matches("count: ").parse().unwrap();
    assert_eq!(text.lines().count(), count + 1);
    assert_eq!(spindle(&["enumerate", "--size", "9"]).status.code(), Some(1));
}

#[test]
fn acyclicity() {
    let out = spindle(&["acyclicity", "--dihedral", "3", "--nmax", "3"]);
    assert_eq!(out.status.code(), Some(0));
    let text = stdout(&out);
    assert!(text.contains("homotopy identity: verified"));
    assert!(text.contains("acyclic: yes"));
    assert_eq!(spindle(&["acyclicity", "--fspindle", "2,1,1"]).status.code(), Some(1));
}

#[test]
fn identities_and_export() {
    let out = spindle(&["identities", "--fspindle", "2,1", "--degrees", "0..3"]);
    assert_eq!(out.status.code(), Some(0), "{}", stdout(&out));
    let out = spindle(&["export-matrix", "--fspindle", "2,1,1", "--degree", "1"]);
    let m = spindle_homology::linalg::SparseIntMatrix::from_matrix_market(&stdout(&out)).unwrap();
    assert_eq!((m.rows(), m.cols(), m.nnz()), (4, 16, 6));
}

#[test]
fn usage_errors() {
    assert_eq!(spindle(&["homology", "--fspindle", "2,1", "--sigma", "2,1"]).status.code(), Some(3));
    assert_eq!(spindle(&["homology", "--fspindle", "2,1", "--degrees", "3..1"]).status.code(), Some(3));
    assert_eq!(spindle(&["homology", "--fspindle", "4"]).status.code(), Some(1));
}

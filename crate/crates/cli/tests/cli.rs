use std::io::Write;
use std::process::{Command, Output, Stdio};

use serde_json::Value;

fn sring(args: &[&str], stdin: Option<&str>) -> Output {
    let mut child = Command::new(env!("CARGO_BIN_EXE_sring"))
        .args(args)
        .stdin(Stdio::piped())
        .stdout(Stdio::piped())
        .stderr(Stdio::piped())
        .spawn()
        .expect("binary runs");
    if let Some(text) = stdin {
        child
            .stdin
            .take()
            .unwrap()
            .write_all(text.as_bytes())
            .unwrap();
    } else {
        drop(child.stdin.take());
    }
    child.wait_with_output().unwrap()
}

fn stdout(o: &Output) -> String {
    String::from_utf8(o.stdout.clone()).unwrap()
}

const Z5C: &str = r#"{"n":5,"classes":[[0],[1,4],[2,3]]}"#;

fn z5c_file() -> tempfile::NamedTempFile {
    let mut f = tempfile::NamedTempFile::new().unwrap();
    f.write_all(Z5C.as_bytes()).unwrap();
    f
}

#[test]
fn separability_of_z5c() {
    let f = z5c_file();
    let o = sring(
        &["separability", f.path().to_str().unwrap(), "--json"],
        None,
    );
    assert_eq!(o.status.code(), Some(0));
    let v: Value = serde_json::from_str(&stdout(&o)).unwrap();
    assert_eq!(v["separable"], Value::Bool(true));
}

#[test]
fn separability_with_oracle() {
    let o = sring(&["separability", "--oracle", "--json"], Some(Z5C));
    assert_eq!(o.status.code(), Some(0));
    let v: Value = serde_json::from_str(&stdout(&o)).unwrap();
    assert_eq!(v["oracle"], Value::Bool(true));
}

#[test]
fn dual_of_z5c_is_itself() {
    let f = z5c_file();
    let o = sring(&["dual", f.path().to_str().unwrap(), "--json"], None);
    assert_eq!(o.status.code(), Some(0));
    assert_eq!(stdout(&o).trim(), Z5C);
}

#[test]
fn validate_reports_the_witness_class() {
    let bad = r#"{"n":5,"classes":[[0],[1],[2,3,4]]}"#;
    let o = sring(&["validate"], Some(bad));
    assert_eq!(o.status.code(), Some(2));
    let err = String::from_utf8(o.stderr).unwrap();
    assert!(
        err.contains("[1]") && err.contains("inverse-closed"),
        "{err}"
    );
}

#[test]
fn malformed_json_is_an_input_error() {
    let o = sring(&["validate"], Some("{not json"));
    assert_eq!(o.status.code(), Some(2));
    let o = sring(&["closure", "--n", "6", "--seed-sets", "1,x"], None);
    assert_eq!(o.status.code(), Some(2));
}

#[test]
fn closure_from_seed_sets() {
    let o = sring(
        &["closure", "--n", "5", "--seed-sets", "1,4", "--json"],
        None,
    );
    assert_eq!(o.status.code(), Some(0));
    assert_eq!(stdout(&o).trim(), Z5C);
    let o = sring(&["closure", "--n", "4", "--json"], None);
    assert_eq!(stdout(&o).trim(), r#"{"n":4,"classes":[[0],[1,2,3]]}"#);
}

#[test]
fn enumerate_counts_and_limit() {
    let o = sring(&["enumerate", "12", "--count"], None);
    assert_eq!(stdout(&o).trim(), "32");
    let o = sring(&["enumerate", "40"], None);
    assert_eq!(o.status.code(), Some(3));
    let o = sring(&["enumerate", "40", "--count", "--enum-bound", "40"], None);
    assert_eq!(o.status.code(), Some(0));
}

#[test]
fn verify_suites() {
    let o = sring(&["verify", "pgroups", "--max-n", "27"], None);
    assert_eq!(o.status.code(), Some(0), "{}", stdout(&o));
    let o = sring(&["verify", "axioms", "--max-n", "1", "--json"], None);
    assert_eq!(o.status.code(), Some(0));
    let v: Value = serde_json::from_str(&stdout(&o)).unwrap();
    assert_eq!(v["checked"], 1);
    assert_eq!(v["failures"], Value::Array(vec![]));
    let o = sring(&["verify", "duality", "--max-n", "24"], None);
    assert_eq!(o.status.code(), Some(0));
    let o = sring(
        &["verify", "oracle", "--max-n", "10", "--iso-bound", "8"],
        None,
    );
    assert_eq!(o.status.code(), Some(3));
}

#[test]
fn unknown_suite_is_rejected() {
    let o = sring(&["verify", "nonsense"], None);
    assert_eq!(o.status.code(), Some(2));
}

#[test]
fn analyze_is_deterministic() {
    let a = sring(
        &["analyze", "--json"],
        Some(r#"{"n":12,"classes":[[0],[1,5,7,11],[2,10],[3,9],[4,8],[6]]}"#),
    );
    let b = sring(
        &["analyze", "--json"],
        Some(r#"{"n":12,"classes":[[0],[1,5,7,11],[2,10],[3,9],[4,8],[6]]}"#),
    );
    assert_eq!(a.status.code(), Some(0));
    assert_eq!(a.stdout, b.stdout);
    let v: Value = serde_json::from_str(&stdout(&a)).unwrap();
    assert_eq!(v["rank"], 6);
    assert!(v.get("timings").is_none());
}

use std::path::{Path, PathBuf};
use std::process::{Command, Output};

use serde_json::Value;
use tempfile::TempDir;

fn write(dir: &TempDir, name: &str, body: &str) -> PathBuf {
    let p = dir.path().join(name);
    std::fs::write(&p, body).unwrap();
    p
}

fn run(args: &[&str], input: &Path) -> Output {
    Command::new(env!("CARGO_BIN_EXE_toroidal"))
        .arg(args[0])
        .arg("--input")
        .arg(input)
        .args(&args[1..])
        .output()
        .unwrap()
}

fn json_of(out: &Output) -> Value {
    serde_json::from_slice(&out.stdout).unwrap()
}

const ZETA2: &str = r#"{"n_plus_1": 2, "m": 2, "K": [[0, 1], [1, 0]]}"#;
const ZETA4: &str = r#"{"n_plus_1": 2, "m": 4, "K": [[0, -1], [1, 0]]}"#;

#[test]
fn analyze_reports_the_radical() {
    let dir = TempDir::new().unwrap();
    let q = write(&dir, "q.json", ZETA4);
    let out = run(&["analyze", "--format", "json"], &q);
    assert!(out.status.success());
    let v = json_of(&out);
    assert_eq!(v["schema"], 1);
    assert_eq!(v["index"], 16);
    assert_eq!(v["radical"]["basis"], serde_json::json!([[4, 0], [0, 4]]));
    assert_eq!(v["hc1_nonzero_dims"], serde_json::json!([{"degree": [0, 0], "dim": 2}]));
}

#[test]
fn analyze_commutative_case() {
    let dir = TempDir::new().unwrap();
    let q = write(&dir, "q.json", r#"{"n_plus_1": 2, "m": 1, "K": [[0, 0], [0, 0]]}"#);
    let v = json_of(&run(&["analyze", "--format", "json", "--box", "1"], &q));
    assert_eq!(v["index"], 1);
    assert_eq!(v["commutator_count"], 0);
    let dims = v["hc1_nonzero_dims"].as_array().unwrap();
    assert_eq!(dims.len(), 9);
    for e in dims {
        let zero = e["degree"] == serde_json::json!([0, 0]);
        assert_eq!(e["dim"], if zero { 2 } else { 1 });
    }
}

#[test]
fn malformed_input_fails() {
    let dir = TempDir::new().unwrap();
    let skew = write(&dir, "a.json", r#"{"n_plus_1": 2, "m": 4, "K": [[0, 1], [1, 0]]}"#);
    let junk = write(&dir, "b.json", "[1, 2");
    for p in [skew, junk, dir.path().join("missing.json")] {
        let out = run(&["analyze"], &p);
        assert!(!out.status.success());
        assert!(!out.stderr.is_empty());
    }
}

#[test]
fn normalize_emits_simple_form() {
    let dir = TempDir::new().unwrap();
    let q = write(
        &dir,
        "q.json",
        r#"{"n_plus_1": 3, "m": 4, "K": [[0, -1, -1], [1, 0, 0], [1, 0, 0]]}"#,
    );
    let v = json_of(&run(&["normalize", "--format", "json"], &q));
    assert_eq!(v["z"], 1);
    assert_eq!(v["orders"], serde_json::json!([4]));
    assert_eq!(v["N"], 4);
    assert_eq!(v["central_head_dropped"], false);
}

#[test]
fn realize_passes_and_lists_generators() {
    let dir = TempDir::new().unwrap();
    let q = write(&dir, "q.json", ZETA2);
    let out = run(&["realize", "--format", "json"], &q);
    assert!(out.status.success());
    let v = json_of(&out);
    assert_eq!(v["realization"]["N"], 2);
    assert_eq!(v["realization"]["generators"].as_array().unwrap().len(), 2);
    assert_eq!(v["passed"], true);
}

#[test]
fn verify_is_deterministic() {
    let dir = TempDir::new().unwrap();
    let q = write(&dir, "q.json", ZETA4);
    let args = ["verify", "--format", "json", "--seed", "9", "--samples", "60"];
    let a = run(&args, &q);
    let b = run(&args, &q);
    assert!(a.status.success());
    assert_eq!(a.stdout, b.stdout);
    let v = json_of(&a);
    assert_eq!(v["seed"], 9);
    assert_eq!(v["total_violations"], 0);
}

#[test]
fn corrupted_constant_is_caught() {
    let dir = TempDir::new().unwrap();
    let q = write(&dir, "q.json", ZETA2);
    let out = run(
        &[
            "verify",
            "--samples",
            "60",
            "--inject-fault",
            "matrix-bracket-constant",
            "--format",
            "json",
        ],
        &q,
    );
    assert_eq!(out.status.code(), Some(1));
    assert!(json_of(&out)["total_violations"].as_u64().unwrap() > 0);
}

#[test]
fn modules_flag_without_file_is_usage_error() {
    let dir = TempDir::new().unwrap();
    let q = write(&dir, "q.json", ZETA2);
    let out = run(&["verify", "--modules"], &q);
    assert_eq!(out.status.code(), Some(2));
    assert!(String::from_utf8_lossy(&out.stderr).contains("module-spec"));
}

#[test]
fn module_file_runs_module_checks() {
    let dir = TempDir::new().unwrap();
    let q = write(
        &dir,
        "q.json",
        r#"{"n_plus_1": 3, "m": 2, "K": [[0, 0, 0], [0, 0, 1], [0, 1, 0]]}"#,
    );
    let spec = write(
        &dir,
        "spec.json",
        r#"{"V1": {"kind": "trivial"}, "V2": {"kind": "natural"}, "c0": 2, "lambda_d0": "2/3", "alpha": [0, "z^1"]}"#,
    );
    let out = run(
        &[
            "verify",
            "--samples",
            "40",
            "--box",
            "1",
            "--format",
            "json",
            "--modules",
            "--module-spec",
            spec.to_str().unwrap(),
        ],
        &q,
    );
    assert!(out.status.success(), "{}", String::from_utf8_lossy(&out.stdout));
    let v = json_of(&out);
    let names: Vec<&str> = v["checks"]
        .as_array()
        .unwrap()
        .iter()
        .map(|c| c["name"].as_str().unwrap())
        .collect();
    assert!(names.contains(&"module:trivialxnatural"));
}

#[test]
fn off_unit_point_is_rejected() {
    let dir = TempDir::new().unwrap();
    let q = write(
        &dir,
        "q.json",
        r#"{"n_plus_1": 3, "m": 2, "K": [[0, 0, 0], [0, 0, 1], [0, 1, 0]]}"#,
    );
    let spec = write(
        &dir,
        "spec.json",
        r#"{"V1": {"kind": "natural", "params": {"point": [2, 1]}}, "V2": {"kind": "trivial"}, "c0": 1, "lambda_d0": 0, "alpha": [0, 0]}"#,
    );
    let out = run(&["verify", "--module-spec", spec.to_str().unwrap()], &q);
    assert_eq!(out.status.code(), Some(2));
}

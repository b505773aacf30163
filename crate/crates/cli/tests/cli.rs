use std::fs;
use std::path::Path;
use std::process::{Command, Output};

use serde_json::Value;

fn bergman(args: &[&str], dir: &Path) -> Output {
    Command::new(env!("CARGO_BIN_EXE_bergman")).args(args).current_dir(dir).output().expect("binary runs")
}

fn read_json(path: &Path) -> Value {
    serde_json::from_str(&fs::read_to_string(path).unwrap()).unwrap()
}

#[test]
fn weight_reports_standard_weight_as_regular() {
    let dir = tempfile::tempdir().unwrap();
    let out = bergman(&["weight", "std:alpha=1", "--out", "o"], dir.path());
    assert_eq!(out.status.code(), Some(0), "{}", String::from_utf8_lossy(&out.stderr));
    let v = read_json(&dir.path().join("o/weight.json"));
    assert_eq!(v["toolkit"], "bergman");
    assert_eq!(v["config"]["target"], "std:alpha=1");
    assert_eq!(v["result"]["regular"], true);
    for key in ["a", "b"] {
        assert!((v["result"]["tail"][key].as_f64().unwrap() - 0.5).abs() < 1e-9);
    }
    let csv = fs::read_to_string(dir.path().join("o/weight.csv")).unwrap();
    assert!(csv.starts_with("r,omega,omega_hat,omega_star,hat_ratio,star_ratio\n"));
    assert_eq!(csv.lines().count(), 1 + 12 * 8);
}

#[test]
fn weight_flags_rapid_increase() {
    let dir = tempfile::tempdir().unwrap();
    let out = bergman(&["weight", "logpow:alpha=-1,beta=-2", "--out", "o"], dir.path());
    assert_eq!(out.status.code(), Some(0));
    assert_eq!(read_json(&dir.path().join("o/weight.json"))["result"]["rapidly_increasing"], true);
}

#[test]
fn bad_sample_file_is_an_input_error() {
    let dir = tempfile::tempdir().unwrap();
    fs::write(dir.path().join("bad.csv"), "r,w\n0.1,1\n0.5,-2\n").unwrap();
    let out = bergman(&["weight", "file:bad.csv", "--out", "o"], dir.path());
    assert_eq!(out.status.code(), Some(1));
    assert!(String::from_utf8_lossy(&out.stderr).contains("not positive"));
}

#[test]
fn usage_errors_exit_with_one() {
    let dir = tempfile::tempdir().unwrap();
    assert_eq!(bergman(&["bogus"], dir.path()).status.code(), Some(1));
    assert_eq!(bergman(&["verify", "nope"], dir.path()).status.code(), Some(1));
    assert_eq!(bergman(&["--version"], dir.path()).status.code(), Some(0));
}

#[test]
fn compact_essential_norm_passes_and_writes_tables() {
    let dir = tempfile::tempdir().unwrap();
    fs::write(
        dir.path().join("s.json"),
        r#"{"weight": "std:alpha=1", "phi": "poly:0,0.5", "p": 2, "q": 2, "grids": {"levels": 10, "angular_base": 4, "angular_cap": 32}}"#,
    )
    .unwrap();
    let out = bergman(&["functional", "essnorm", "--scenario", "s.json", "--out", "o", "--bracket", "0,1e-3"], dir.path());
    assert_eq!(out.status.code(), Some(0), "{}", String::from_utf8_lossy(&out.stderr));
    let v = read_json(&dir.path().join("o/essnorm.json"));
    assert!(v["result"]["value"].as_f64().unwrap() < 1e-3);
    assert_eq!(v["result"]["bracket"]["pass"], true);
    assert_eq!(v["config"]["scenario"]["grids"]["levels"], 10);
    let levels = fs::read_to_string(dir.path().join("o/essnorm_levels.csv")).unwrap();
    assert_eq!(levels.lines().count(), 1 + 5);
    assert!(dir.path().join("o/essnorm_plot.csv").exists());

    // a bracket the value misses is a mathematical flag
    let out = bergman(&["functional", "essnorm", "--scenario", "s.json", "--out", "o", "--bracket", "1,2"], dir.path());
    assert_eq!(out.status.code(), Some(2));
}

#[test]
fn schatten_hypothesis_failure_exits_with_two() {
    let dir = tempfile::tempdir().unwrap();
    fs::write(dir.path().join("s.json"), r#"{"weight": "logpow:alpha=-1,beta=-2.5", "p": 2, "q": 2, "grids": {"levels": 6}}"#).unwrap();
    let out = bergman(&["functional", "schatten", "--scenario", "s.json", "--out", "o"], dir.path());
    assert_eq!(out.status.code(), Some(2));
    assert!(String::from_utf8_lossy(&out.stderr).contains("hypothesis failed"));
}

#[test]
fn unknown_scenario_fields_are_rejected() {
    let dir = tempfile::tempdir().unwrap();
    fs::write(dir.path().join("s.json"), r#"{"weight": "std:alpha=1", "p": 2, "q": 2, "colour": 1}"#).unwrap();
    let out = bergman(&["functional", "carleson", "--scenario", "s.json", "--out", "o"], dir.path());
    assert_eq!(out.status.code(), Some(1));
}

#[test]
fn log_weight_suite_passes_and_is_reproducible() {
    let dir = tempfile::tempdir().unwrap();
    let a = bergman(&["verify", "cor7", "--out", "a", "--workers", "4"], dir.path());
    let b = bergman(&["verify", "log-weights", "--out", "b"], dir.path());
    assert_eq!(a.status.code(), Some(0), "{}", String::from_utf8_lossy(&a.stdout));
    assert_eq!(b.status.code(), Some(0));
    let first = read_json(&dir.path().join("a/verify_cor7.json"));
    assert_eq!(first["result"]["pass"], true);
    // the same options give the same bytes; the alias only changes the file name
    let again = bergman(&["verify", "cor7", "--out", "c"], dir.path());
    assert_eq!(again.status.code(), Some(0));
    assert_eq!(fs::read(dir.path().join("a/verify_cor7.json")).unwrap(), fs::read(dir.path().join("c/verify_cor7.json")).unwrap());
}

#[test]
fn multiplier_and_lower_bound_reports() {
    let dir = tempfile::tempdir().unwrap();
    fs::write(dir.path().join("s.json"), r#"{"weight": "std:alpha=1", "phi": "blaschke:m=2", "p": 2, "q": 2, "grids": {"levels": 9}}"#).unwrap();
    let out = bergman(&["functional", "multbound", "--scenario", "s.json", "--out", "o"], dir.path());
    assert_eq!(out.status.code(), Some(0), "{}", String::from_utf8_lossy(&out.stderr));
    let v = read_json(&dir.path().join("o/multbound.json"));
    let sup = v["result"]["ratio_sup"].as_f64().unwrap();
    assert!(sup > 1.0 && sup <= v["result"]["implied_constant"].as_f64().unwrap());

    let out = bergman(&["functional", "thm6", "--scenario", "s.json", "--out", "o"], dir.path());
    assert_eq!(out.status.code(), Some(0), "{}", String::from_utf8_lossy(&out.stderr));
    let v = read_json(&dir.path().join("o/lower-bound.json"));
    assert!(v["result"]["experiment"]["gap"].as_f64().unwrap() > 0.0);
}

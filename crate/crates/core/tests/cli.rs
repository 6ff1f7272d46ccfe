use std::fs;
use std::path::Path;
use std::process::{Command, Output};

fn borngap(args: &[&str], dir: &Path) -> Output {
    Command::new(env!("CARGO_BIN_EXE_borngap"))
        .args(args)
        .current_dir(dir)
        .env_remove("BORNGAP_THREADS")
        .output()
        .unwrap()
}

fn stdout(out: &Output) -> String {
    String::from_utf8_lossy(&out.stdout).into_owned()
}

fn summary(dir: &Path, name: &str) -> serde_json::Value {
    serde_json::from_str(&fs::read_to_string(dir.join(name)).unwrap()).unwrap()
}

#[test]
fn kernel_reports_value_and_checks() {
    let dir = tempfile::tempdir().unwrap();
    let out = borngap(&["kernel", "--n", "5", "--m", "1", "--lambda", "2", "--r", "0.7", "--sign", "-"], dir.path());
    assert_eq!(out.status.code(), Some(0));
    let text = stdout(&out);
    for key in ["re = ", "im = ", "abs = ", "pde_residual = ", "splitting_identity_deviation = "] {
        assert!(text.contains(key), "{text}");
    }
    let field = |key: &str| -> f64 {
        let line = text.lines().find(|l| l.starts_with(key)).unwrap();
        line[key.len()..].trim().parse().unwrap()
    };
    assert!(field("pde_residual = ") <= 1e-6);
    assert!(field("splitting_identity_deviation = ") <= 1e-12);
}

#[test]
fn invalid_input_exits_with_two() {
    let dir = tempfile::tempdir().unwrap();
    let even = borngap(&["kernel", "--n", "4", "--lambda", "1", "--r", "1"], dir.path());
    assert_eq!(even.status.code(), Some(2));
    assert!(!even.stderr.is_empty());
    assert_eq!(borngap(&["free-dispersive"], dir.path()).status.code(), Some(2));
    assert_eq!(borngap(&["holder", "--alpha", "1"], dir.path()).status.code(), Some(2));
    assert_eq!(borngap(&["born-growth", "--n", "5", "--alpha", "2"], dir.path()).status.code(), Some(2));
    assert_eq!(borngap(&["free-dispersive", "--n", "5", "--threads", "0"], dir.path()).status.code(), Some(2));
    let missing = dir.path().join("nope.json");
    let args = ["holder", "--config", missing.to_str().unwrap()];
    assert_eq!(borngap(&args, dir.path()).status.code(), Some(2));
}

#[test]
fn free_dispersive_fit_and_tolerance() {
    let dir = tempfile::tempdir().unwrap();
    let out = borngap(&["free-dispersive", "--n", "5", "--t-count", "9"], dir.path());
    assert_eq!(out.status.code(), Some(0), "{}", String::from_utf8_lossy(&out.stderr));
    let s = summary(dir.path(), "free-dispersive.json");
    assert!((s["slope"].as_f64().unwrap() + 2.5).abs() <= 0.15);
    assert_eq!(s["target_slope"].as_f64(), Some(-2.5));
    assert!(s["config"]["threads"].as_u64().unwrap() >= 1);
    let csv = fs::read_to_string(dir.path().join("free-dispersive.csv")).unwrap();
    assert!(csv.starts_with("# config: "));
    assert!(!csv.lines().next().unwrap().contains("threads"));
}

#[test]
fn fit_outside_tolerance_exits_with_four() {
    let dir = tempfile::tempdir().unwrap();
    let strict = borngap(&["holder", "--alpha", "0.25", "--tol-slope", "1e-3"], dir.path());
    assert_eq!(strict.status.code(), Some(4));
    assert!(stdout(&strict).contains("outside tolerance"));
    // the files are still written
    assert!(dir.path().join("holder.csv").exists());
}

#[test]
fn rerun_from_embedded_config_reproduces_the_csv() {
    let dir = tempfile::tempdir().unwrap();
    let first = borngap(&["holder", "--alpha", "0.5", "--out", "h.csv", "--threads", "2"], dir.path());
    assert_eq!(first.status.code(), Some(0));
    let bytes = fs::read(dir.path().join("h.csv")).unwrap();
    let again = borngap(&["holder", "--config", "h.csv", "--threads", "1"], dir.path());
    assert_eq!(again.status.code(), Some(0));
    assert_eq!(fs::read(dir.path().join("h.csv")).unwrap(), bytes);
    // the summary can serve as the config too
    let third = borngap(&["holder", "--config", "holder.json"], dir.path());
    assert_eq!(third.status.code(), Some(0));
    assert_eq!(fs::read(dir.path().join("h.csv")).unwrap(), bytes);
    // and flags still win over the file
    let mismatch = borngap(&["free-dispersive", "--config", "h.csv"], dir.path());
    assert_eq!(mismatch.status.code(), Some(2));
}

#[test]
fn threads_from_the_environment() {
    let dir = tempfile::tempdir().unwrap();
    let out = Command::new(env!("CARGO_BIN_EXE_borngap"))
        .args(["holder", "--alpha", "0.25"])
        .current_dir(dir.path())
        .env("BORNGAP_THREADS", "3")
        .output()
        .unwrap();
    assert_eq!(out.status.code(), Some(0));
    assert_eq!(summary(dir.path(), "holder.json")["config"]["threads"].as_u64(), Some(3));
}

#[test]
fn finite_exponent_growth_on_a_small_grid() {
    let dir = tempfile::tempdir().unwrap();
    let args = ["born-growth", "--n", "5", "--p", "1.1", "--L-min", "16", "--L-max", "256"];
    let out = borngap(&args, dir.path());
    let s = summary(dir.path(), "born-growth.json");
    let target = s["target_slope"].as_f64().unwrap();
    assert!((target - 6.0 / 11.0).abs() < 1e-12);
    assert_eq!(out.status.code(), Some(0), "{}", stdout(&out));
    assert_eq!(s["point_count"].as_u64(), Some(5));
}

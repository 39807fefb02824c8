//! End-to-end checks of the `hsph` binary: exit codes and output formats.

use std::process::{Command, Output};

use serde_json::Value;

fn hsph(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_hsph"))
        .args(args)
        .output()
        .expect("binary runs")
}

fn json(out: &Output) -> Value {
    serde_json::from_slice(&out.stdout).expect("stdout is JSON")
}

#[test]
fn cases_list_has_three_rows() {
    let out = hsph(&["cases", "list"]);
    assert_eq!(out.status.code(), Some(0));
    let v = json(&out);
    let tags: Vec<&str> = v["cases"]
        .as_array()
        .unwrap()
        .iter()
        .map(|c| c["tag"].as_str().unwrap())
        .collect();
    assert_eq!(tags, ["A1", "A2", "C2"]);
}

#[test]
fn crown_describe_a2() {
    let out = hsph(&["crown", "describe", "--case", "A2"]);
    assert_eq!(out.status.code(), Some(0));
    let v = json(&out);
    assert_eq!(v["omega_vertex_count"], 6);
    assert_eq!(v["omega_orbit_count"], 2);
    assert_eq!(v["omega_h_equals_omega"], false);
    assert!(v["quantity"].is_string());
}

#[test]
fn json_output_is_sorted_and_deterministic() {
    let args = [
        "theta",
        "eval",
        "--case",
        "C2",
        "--lambda",
        "0.3+1i,-0.2",
        "--z",
        "1.1,0.4",
        "--height",
        "16",
    ];
    let a = hsph(&args);
    let b = hsph(&args);
    assert_eq!(a.status.code(), Some(0));
    assert_eq!(a.stdout, b.stdout);
    let text = String::from_utf8(a.stdout).unwrap();
    let keys: Vec<&str> = text
        .lines()
        .filter(|l| l.starts_with("  \""))
        .map(|l| l.trim().split('"').nth(1).unwrap())
        .collect();
    let mut sorted = keys.clone();
    sorted.sort();
    assert_eq!(keys, sorted);
}

#[test]
fn csv_rows_are_key_value() {
    let out = hsph(&[
        "--format", "csv", "hardy", "density", "--case", "A1", "--grid", "0.5;1.5",
    ]);
    assert_eq!(out.status.code(), Some(0));
    let text = String::from_utf8(out.stdout).unwrap();
    let mut lines = text.lines();
    assert_eq!(lines.next(), Some("key,value"));
    let density: Vec<f64> = lines
        .filter(|l| l.contains(".density,"))
        .map(|l| l.split(',').nth(1).unwrap().parse().unwrap())
        .collect();
    assert_eq!(density.len(), 2);
    assert!(density.iter().all(|d| *d > 0.0));
}

#[test]
fn config_file_is_overridden_by_flags() {
    let dir = std::env::temp_dir().join(format!("hsph-cfg-{}", std::process::id()));
    std::fs::create_dir_all(&dir).unwrap();
    let path = dir.join("run.cfg");
    std::fs::write(&path, "format = csv\ncase = A1\n").unwrap();
    let p = path.to_str().unwrap();
    let csv = hsph(&["--config", p, "crown", "describe"]);
    assert_eq!(csv.status.code(), Some(0));
    assert!(csv.stdout.starts_with(b"key,value\n"));
    let js = hsph(&["--config", p, "--format", "json", "crown", "describe"]);
    assert_eq!(json(&js)["case"], "A1");
    std::fs::write(&path, "colour = red\n").unwrap();
    assert_eq!(
        hsph(&["--config", p, "cases", "list"]).status.code(),
        Some(2)
    );
    std::fs::remove_dir_all(&dir).unwrap();
}

#[test]
fn usage_errors_exit_two() {
    assert_eq!(hsph(&["frobnicate"]).status.code(), Some(2));
    assert_eq!(hsph(&["crown", "describe"]).status.code(), Some(2));
    assert_eq!(
        hsph(&["phi", "eval", "--case", "A2", "--lambda", "1", "--z", "1,1"])
            .status
            .code(),
        Some(2)
    );
    assert_eq!(hsph(&["verify", "nonexistent"]).status.code(), Some(2));
}

#[test]
fn domain_errors_exit_three() {
    // z + i X_H has Re alpha <= 0
    let out = hsph(&["theta", "eval", "--case", "A1", "--lambda", "0.5", "--z=-1"]);
    assert_eq!(out.status.code(), Some(3));
    // the A2 spectral integrand does not decay at real points
    let out = hsph(&["hardy", "psi", "--case", "A2", "--point", "1,0.5"]);
    assert_eq!(out.status.code(), Some(3));
}

#[test]
fn passing_suite_exits_zero() {
    let out = hsph(&["verify", "maass-selberg", "--seed", "3"]);
    assert_eq!(out.status.code(), Some(0));
    assert_eq!(json(&out)["passed"], true);
}

#[test]
fn failing_suites_exit_one() {
    let out = hsph(&["verify", "kernel-identity", "--t", "0.5,0.1"]);
    assert_eq!(out.status.code(), Some(1));
    let v = json(&out);
    let s = &v["suites"][0];
    assert_eq!(s["passed"], false);
    assert!(s["details"]["corrected_abs_diff"].as_f64().unwrap() < 1e-10);
    let out = hsph(&["verify", "growth"]);
    assert_eq!(out.status.code(), Some(1));
}

#[test]
fn gamma_table_respects_height() {
    let out = hsph(&[
        "gamma",
        "table",
        "--case",
        "A2",
        "--lambda",
        "0.3i,0.7i",
        "--height",
        "4",
    ]);
    assert_eq!(out.status.code(), Some(0));
    let v = json(&out);
    assert_eq!(v["max_height"], 4);
    assert_eq!(v["entries"][0]["value"][0].as_f64(), Some(1.0));
}

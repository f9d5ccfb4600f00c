//! End-to-end tests that exercise the compiled binary the way a user would.

use std::process::{Command, Output};

fn xop(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_xop"))
        .args(args)
        .output()
        .expect("binary runs")
}

fn stdout(out: &Output) -> String {
    String::from_utf8(out.stdout.clone()).expect("utf-8 output")
}

fn json(out: &Output) -> serde_json::Value {
    serde_json::from_str(&stdout(out)).expect("valid JSON output")
}

#[test]
fn moments_lag3_checked_table() {
    let out = xop(&[
        "moments", "--family", "lag3", "--alpha", "-0.5", "--count", "10", "--check",
    ]);
    assert_eq!(out.status.code(), Some(0), "{out:?}");
    let text = stdout(&out);
    let mut lines = text.lines();
    assert_eq!(lines.next(), Some("k,value,source,error_estimate"));
    let rows: Vec<Vec<&str>> = lines.map(|l| l.split(',').collect()).collect();
    assert_eq!(rows.len(), 10);
    let value = |k: usize| rows[k][1].parse::<f64>().unwrap();
    assert!((value(0) - 3.5449077018110318).abs() < 1e-7);
    assert!((value(2) - 1.7724538509055159).abs() < 1e-7);
    for row in &rows {
        assert!(row[3].parse::<f64>().unwrap() < 1e-8, "{row:?}");
    }
}

#[test]
fn moments_rejects_inadmissible_lag3_parameter() {
    let out = xop(&["moments", "--family", "lag3", "--alpha", "0.5", "--count", "5"]);
    assert_eq!(out.status.code(), Some(2), "{out:?}");
}

#[test]
fn moments_json_format() {
    let out = xop(&[
        "moments", "--family", "lag1", "--alpha", "1.5", "--count", "4", "--format", "json",
    ]);
    assert_eq!(out.status.code(), Some(0), "{out:?}");
    let v = json(&out);
    assert_eq!(v["family"], "laguerre-1");
    assert_eq!(v["moments"].as_array().unwrap().len(), 4);
    assert_eq!(v["moments"][3]["k"], 3);
}

#[test]
fn poly_lag3_degree_two_monomial_form() {
    // Degree 2 for alpha = -1/2 is x^2 + x - 1/4 up to normalization.
    let out = xop(&["poly", "--family", "lag3", "--alpha", "-0.5", "--degree", "2"]);
    assert_eq!(out.status.code(), Some(0), "{out:?}");
    let v = json(&out);
    let c: Vec<f64> = v["monomial_coeffs"]
        .as_array()
        .unwrap()
        .iter()
        .map(|x| x.as_f64().unwrap())
        .collect();
    let scale = c[2];
    assert!(scale.abs() > 1e-12);
    assert!((c[0] / scale - (-0.25)).abs() < 1e-10, "{c:?}");
    assert!((c[1] / scale - 1.0).abs() < 1e-10, "{c:?}");
}

#[test]
fn poly_lag1_degree_one_is_x_plus_two() {
    let out = xop(&["poly", "--family", "lag1", "--alpha", "1", "--degree", "1"]);
    assert_eq!(out.status.code(), Some(0), "{out:?}");
    let v = json(&out);
    let c: Vec<f64> = v["monomial_coeffs"]
        .as_array()
        .unwrap()
        .iter()
        .map(|x| x.as_f64().unwrap())
        .collect();
    let scale = c[1];
    assert!((c[0] / scale - 2.0).abs() < 1e-10, "{c:?}");
    assert_eq!(v["degree"], 1);
    assert!(v["condition_estimate"].as_f64().unwrap().is_finite());
}

#[test]
fn poly_rejects_excluded_degree() {
    let out = xop(&["poly", "--family", "lag3", "--alpha", "-0.5", "--degree", "1"]);
    assert_eq!(out.status.code(), Some(2), "{out:?}");
}

#[test]
fn verify_lag3_passes() {
    let out = xop(&[
        "verify", "--family", "lag3", "--alpha", "-0.25", "--max-degree", "6",
    ]);
    assert_eq!(out.status.code(), Some(0), "{out:?}");
    let v = json(&out);
    let checks = v["checks"].as_array().unwrap();
    assert!(!checks.is_empty());
    for c in checks {
        assert_ne!(c["status"], "fail", "{c}");
        assert!(c["name"].is_string() && c["anchor"].is_string());
        assert!(c["residual"].as_f64().is_some());
    }
}

#[test]
fn verify_with_x2_flag_includes_candidate_battery() {
    let out = xop(&["verify", "--family", "lag1", "--alpha", "1.5", "--x2-flag"]);
    assert_eq!(out.status.code(), Some(0), "{out:?}");
    let v = json(&out);
    let checks = v["checks"].as_array().unwrap();
    let x2: Vec<_> = checks
        .iter()
        .filter(|c| c["name"].as_str().unwrap().starts_with("x2-"))
        .collect();
    assert!(x2.len() >= 4, "expected candidate battery in report");
    for c in &x2 {
        assert_ne!(c["status"], "fail", "{c}");
    }
}

#[test]
fn verify_jacobi_passes() {
    let out = xop(&[
        "verify", "--family", "jacobi", "--alpha", "2", "--beta", "4", "--max-degree", "5",
    ]);
    assert_eq!(out.status.code(), Some(0), "{out:?}");
    let v = json(&out);
    assert_eq!(v["family"], "jacobi");
    assert!((v["params"]["beta"].as_f64().unwrap() - 4.0).abs() < 1e-15);
}

#[test]
fn output_is_deterministic() {
    let a = xop(&["poly", "--family", "jacobi", "--alpha", "0.5", "--beta", "1.5", "--degree", "4"]);
    let b = xop(&["poly", "--family", "jacobi", "--alpha", "0.5", "--beta", "1.5", "--degree", "4"]);
    assert_eq!(a.status.code(), Some(0));
    assert_eq!(a.stdout, b.stdout);
}

#[test]
fn output_flag_writes_file() {
    let dir = std::env::temp_dir().join("xop-cli-test");
    std::fs::create_dir_all(&dir).unwrap();
    let path = dir.join("moments.csv");
    let out = xop(&[
        "moments", "--family", "lag2", "--alpha", "1.5", "--count", "3",
        "--output", path.to_str().unwrap(),
    ]);
    assert_eq!(out.status.code(), Some(0), "{out:?}");
    assert!(stdout(&out).is_empty());
    let text = std::fs::read_to_string(&path).unwrap();
    assert!(text.starts_with("k,value,source,error_estimate\n"));
    std::fs::remove_file(&path).ok();
}

#[test]
fn quad_tol_must_be_sane() {
    let out = xop(&[
        "moments", "--family", "lag1", "--alpha", "1.0", "--count", "3",
        "--check", "--quad-tol", "-1",
    ]);
    assert_eq!(out.status.code(), Some(2), "{out:?}");
}

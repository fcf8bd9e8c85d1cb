//! End-to-end tests of the `selfsim` binary: exit codes, file formats and
//! output determinism.

use std::path::PathBuf;
use std::process::{Command, Output};

fn selfsim(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_selfsim"))
        .args(args)
        .output()
        .expect("binary runs")
}

fn tmp_path(name: &str) -> PathBuf {
    let mut path = std::env::temp_dir();
    path.push(format!("selfsim-test-{}-{name}", std::process::id()));
    path
}

fn stdout(output: &Output) -> String {
    String::from_utf8_lossy(&output.stdout).into_owned()
}

#[test]
fn certify_writes_a_certificate_with_seventeen_digit_floats() {
    let json = tmp_path("cert.json");
    let output = selfsim(&[
        "certify",
        "--s",
        "+---+",
        "--t",
        "-++--",
        "--json",
        json.to_str().unwrap(),
    ]);
    assert!(output.status.success(), "{}", String::from_utf8_lossy(&output.stderr));

    let text = std::fs::read_to_string(&json).unwrap();
    std::fs::remove_file(&json).ok();
    let value: serde_json::Value = serde_json::from_str(&text).unwrap();
    assert_eq!(value["pair"]["s"], "+---+");
    assert_eq!(value["pair"]["t"], "-++--");
    assert!(value["sd"].as_f64().unwrap() > 1.0 + 1e-6);
    assert!(value["sd_hat"].as_f64().unwrap() < 1.0 - 1e-6);
    assert!(value["overlap_residual"].as_f64().unwrap() <= 1e-9);
    assert_eq!(value["point"]["in_R"], true);
    assert!(value["config_digest"].as_str().unwrap().len() == 16);
    // 17 significant digits: mantissa dot + 16 digits + exponent marker.
    assert!(text.contains("e-1") || text.contains("e0"));
    let sd_text = text.split("\"sd\":").nth(1).unwrap();
    let mantissa = sd_text.split('e').next().unwrap();
    assert_eq!(mantissa.trim_start_matches('-').replace('.', "").len(), 17);

    // The stdout profile line carries the window.
    let out = stdout(&output);
    assert!(out.contains("profile: {"));
    assert!(out.contains("\"window\":{\"lo\":"));
}

#[test]
fn certify_reports_numerical_failure_for_short_pairs() {
    let output = selfsim(&["certify", "--s", "+-+", "--t", "-++"]);
    assert_eq!(output.status.code(), Some(3));
    let err = String::from_utf8_lossy(&output.stderr);
    assert!(err.contains("does not intersect"), "stderr: {err}");
}

#[test]
fn invalid_sequences_exit_with_validation_code() {
    let output = selfsim(&["certify", "--s", "+-x", "--t", "-++"]);
    assert_eq!(output.status.code(), Some(2));

    let output = selfsim(&["curve", "--s", "++-", "--t", "--+"]);
    assert_eq!(output.status.code(), Some(2));
    let err = String::from_utf8_lossy(&output.stderr);
    assert!(err.contains("one-counts differ"), "stderr: {err}");

    let output = selfsim(&["catalog", "--n-min", "3", "--n-max", "13"]);
    assert_eq!(output.status.code(), Some(2));

    let output = selfsim(&["sample", "--beta1", "0.7", "--beta2", "0.6", "--p", "1.0"]);
    assert_eq!(output.status.code(), Some(2));
}

#[test]
fn catalog_json_is_byte_identical_across_runs() {
    let first = tmp_path("cat1.json");
    let second = tmp_path("cat2.json");
    for path in [&first, &second] {
        let output = selfsim(&[
            "catalog",
            "--n-min",
            "3",
            "--n-max",
            "4",
            "--json",
            path.to_str().unwrap(),
        ]);
        assert!(output.status.success());
    }
    let a = std::fs::read(&first).unwrap();
    let b = std::fs::read(&second).unwrap();
    std::fs::remove_file(&first).ok();
    std::fs::remove_file(&second).ok();
    assert_eq!(a, b, "catalog output must be deterministic");

    let value: serde_json::Value = serde_json::from_slice(&a).unwrap();
    let records = value["records"].as_array().unwrap();
    assert_eq!(records.len(), 18);
    assert!(records.iter().all(|r| r["intersects_R"] == false));
    assert!(records.iter().all(|r| r["certificate"].is_null()));
}

#[test]
fn curve_emits_polynomial_text_points_csv_and_svg() {
    let csv = tmp_path("points.csv");
    let svg = tmp_path("curve.svg");
    let output = selfsim(&[
        "curve",
        "--s",
        "+---+",
        "--t",
        "-++--",
        "--csv",
        csv.to_str().unwrap(),
        "--svg",
        svg.to_str().unwrap(),
        "--y-step",
        "1e-2",
    ]);
    assert!(output.status.success());
    let out = stdout(&output);
    assert!(out.contains("F(x,y) = 2x^2y^3 + x^2y^2 - x^2y - xy^3 - xy^2 - 2xy + x + y"));
    assert!(out.contains("\"i\":2,\"j\":3,\"c\":2"));

    let csv_text = std::fs::read_to_string(&csv).unwrap();
    std::fs::remove_file(&csv).ok();
    assert!(csv_text.starts_with("beta1,beta2,residual,in_R\n"));
    assert!(csv_text.lines().count() > 10);
    assert!(csv_text.lines().nth(1).unwrap().ends_with(",true"));

    let svg_text = std::fs::read_to_string(&svg).unwrap();
    std::fs::remove_file(&svg).ok();
    assert!(svg_text.starts_with("<svg"));
    assert!(svg_text.contains("stroke-dasharray"));
    assert!(svg_text.contains("<polyline"));
}

#[test]
fn sample_output_is_deterministic_and_line_per_value() {
    let args = [
        "sample", "--beta1", "0.7", "--beta2", "0.6", "--p", "0.4", "--n", "200", "--seed", "7",
    ];
    let first = selfsim(&args);
    let second = selfsim(&args);
    assert!(first.status.success());
    assert_eq!(first.stdout, second.stdout);
    let text = stdout(&first);
    assert_eq!(text.lines().count(), 200);
    for line in text.lines().take(5) {
        let value: f64 = line.parse().unwrap();
        assert!(value.is_finite());
    }

    let other = selfsim(&[
        "sample", "--beta1", "0.7", "--beta2", "0.6", "--p", "0.4", "--n", "200", "--seed", "8",
    ]);
    assert_ne!(first.stdout, other.stdout);
}

#[test]
fn dims_tabulates_the_weight_grid() {
    let output = selfsim(&[
        "dims", "--beta1", "0.8", "--beta2", "0.4", "--s", "+---+", "--t", "-++--", "--p-grid",
        "10",
    ]);
    assert!(output.status.success());
    let out = stdout(&output);
    let header: Vec<&str> = out.lines().take_while(|l| l.starts_with('#')).collect();
    assert_eq!(header.len(), 3);
    assert!(header[1].contains("d="));
    let rows: Vec<&str> = out.lines().filter(|l| !l.starts_with('#')).collect();
    assert_eq!(rows.len(), 10);
    for row in rows {
        let fields: Vec<f64> = row
            .split_whitespace()
            .map(|f| f.parse().unwrap())
            .collect();
        assert_eq!(fields.len(), 4);
        // Reduced dimension sits strictly below the plain one.
        assert!(fields[2] < fields[1]);
    }
}

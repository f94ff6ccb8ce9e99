//! End-to-end binary tests: payload shapes, hand-checkable values, exit
//! codes, and byte-level determinism.

use std::process::{Command, Output};

use hyperdecay::acvf::{acvf_fracnoise, aggregate_acvf};
use hyperdecay::prediction::a_k_diagnostic;

fn run(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_hyperdecay"))
        .args(args)
        .output()
        .expect("binary runs")
}

fn run_ok(args: &[&str]) -> String {
    let out = run(args);
    assert!(
        out.status.success(),
        "{args:?} failed: {}",
        String::from_utf8_lossy(&out.stderr)
    );
    String::from_utf8(out.stdout).unwrap()
}

/// Parse `header` + data rows, returning the rows split on commas.
fn csv_rows(text: &str, header: &str) -> Vec<Vec<String>> {
    let mut lines = text.lines();
    assert_eq!(lines.next(), Some(header), "header of {text:?}");
    lines
        .map(|l| l.split(',').map(str::to_string).collect())
        .collect()
}

#[test]
fn table1_grid_shape_and_determinism() {
    let text = run_ok(&["table1"]);
    let rows = csv_rows(&text, "d,1,10,100,1000,10000,100000,1000000,10000000");
    assert_eq!(rows.len(), 4);
    assert_eq!(rows[0][0], "-0.4");
    assert_eq!(&rows[0][1..4], ["1.1831", "1.6225", "2.3318"]);
    assert_eq!(rows[3][1], "2.0701");
    assert_eq!(rows[2][8], "1.1981");
    let again = run_ok(&["table1"]);
    assert_eq!(text, again, "table1 not byte-identical across runs");
}

#[test]
fn gvar_closed_form_trivial_case() {
    let text = run_ok(&["gvar", "--d", "0", "--n-list", "10,100"]);
    let rows = csv_rows(&text, "n,g");
    assert_eq!(rows.len(), 2);
    for (row, n) in rows.iter().zip(["10", "100"]) {
        assert_eq!(row[0], n);
        assert_eq!(row[1].parse::<f64>().unwrap(), 1.0);
    }
}

#[test]
fn dual_emits_negated_parameter_and_revalidates() {
    let text = run_ok(&[
        "dual",
        "--model",
        r#"{"kind":"fracnoise","d":0.4,"sigma2":1}"#,
    ]);
    let spec: serde_json::Value = serde_json::from_str(&text).unwrap();
    assert_eq!(spec["kind"], "fracnoise");
    assert_eq!(spec["d"], -0.4);
    // Round trip: the emitted model is itself valid input.
    run_ok(&["validate", "--model", &text]);
}

#[test]
fn validate_makes_defaults_explicit() {
    let text = run_ok(&["validate", "--model", r#"{"kind":"fracnoise","d":0.25}"#]);
    let spec: serde_json::Value = serde_json::from_str(&text).unwrap();
    assert_eq!(spec["sigma2"], 1.0, "default innovation variance not echoed");
}

#[test]
fn exit_codes_follow_the_contract() {
    let out = run(&["frobnicate"]);
    assert_eq!(out.status.code(), Some(64));
    let err = String::from_utf8(out.stderr).unwrap();
    assert!(
        err.starts_with("hyperdecay: error[UnknownCommand]"),
        "stderr: {err}"
    );

    let out = run(&["validate", "--model", r#"{"kind":"fracnoise","d":"#]);
    assert_eq!(out.status.code(), Some(65));
    let err = String::from_utf8(out.stderr).unwrap();
    assert!(
        err.starts_with("hyperdecay: error[MalformedModelJson]"),
        "stderr: {err}"
    );

    let out = run(&["validate", "--model", r#"{"kind":"fracnoise","d":0.7}"#]);
    assert_eq!(out.status.code(), Some(2));
    let err = String::from_utf8(out.stderr).unwrap();
    assert!(
        err.starts_with("hyperdecay: error[ParameterOutOfRange]") && err.lines().count() == 1,
        "stderr: {err}"
    );

    let out = run(&["acvf"]);
    assert_eq!(out.status.code(), Some(2), "missing required flag");

    let out = run(&["--help"]);
    assert_eq!(out.status.code(), Some(0));
    let out = run(&["--version"]);
    assert_eq!(out.status.code(), Some(0));
}

#[test]
fn acvf_round_trips_library_values() {
    let text = run_ok(&[
        "acvf",
        "--model",
        r#"{"kind":"fracnoise","d":0.3}"#,
        "--max-lag",
        "5",
    ]);
    let rows = csv_rows(&text, "lag,gamma");
    let want = acvf_fracnoise(0.3, 1.0, 5).unwrap();
    assert_eq!(rows.len(), 6);
    for (k, row) in rows.iter().enumerate() {
        assert_eq!(row[0], k.to_string());
        // Shortest-round-trip printing: parsing back recovers the exact double.
        assert_eq!(row[1].parse::<f64>().unwrap(), want.gamma(k), "lag {k}");
    }
}

#[test]
fn aggregate_round_trips_library_values() {
    let text = run_ok(&[
        "aggregate",
        "--model",
        r#"{"kind":"fracnoise","d":0.3}"#,
        "--m",
        "2",
        "--max-lag",
        "1",
    ]);
    let rows = csv_rows(&text, "lag,gamma");
    let base = acvf_fracnoise(0.3, 1.0, 3).unwrap();
    let want = aggregate_acvf(&base, 2, 1).unwrap();
    for (k, row) in rows.iter().enumerate() {
        assert_eq!(row[1].parse::<f64>().unwrap(), want.gamma(k), "lag {k}");
    }
}

#[test]
fn ak_round_trips_library_values() {
    let text = run_ok(&["ak", "--d", "0.4", "--k-list", "10,100"]);
    let rows = csv_rows(&text, "k,a_k,k_a_k");
    for (row, k) in rows.iter().zip([10usize, 100]) {
        let (a, ka) = a_k_diagnostic(0.4, k).unwrap();
        assert_eq!(row[1].parse::<f64>().unwrap(), a);
        assert_eq!(row[2].parse::<f64>().unwrap(), ka);
    }
}

#[test]
fn predict_ar1_uses_last_value() {
    let text = run_ok(&[
        "predict",
        "--model",
        r#"{"kind":"farma","d":0,"ar":[0.5]}"#,
        "--history",
        "1,2,0.8",
    ]);
    let rows = csv_rows(&text, "prediction,error_variance");
    let p: f64 = rows[0][0].parse().unwrap();
    let v: f64 = rows[0][1].parse().unwrap();
    assert!((p - 0.4).abs() < 1e-12, "prediction {p}");
    assert!((v - 1.0).abs() < 1e-12, "error variance {v}");
}

#[test]
fn loglik_white_noise_hand_value() {
    let path = std::env::temp_dir().join(format!("hyperdecay_cli_{}.csv", std::process::id()));
    std::fs::write(&path, "0.0\n0.0\n").unwrap();
    let text = run_ok(&[
        "loglik",
        "--model",
        r#"{"kind":"fracnoise","d":0}"#,
        "--data",
        path.to_str().unwrap(),
    ]);
    std::fs::remove_file(&path).ok();
    let rows = csv_rows(&text, "loglik,aic");
    let ll: f64 = rows[0][0].parse().unwrap();
    let aic: f64 = rows[0][1].parse().unwrap();
    let want = -(2.0 * std::f64::consts::PI).ln();
    assert!((ll - want).abs() < 1e-12, "loglik {ll} vs {want}");
    assert!((aic - (-2.0 * ll + 4.0)).abs() < 1e-12, "aic {aic}");
}

#[test]
fn simulate_is_byte_deterministic() {
    let args = [
        "simulate",
        "--model",
        r#"{"kind":"fracnoise","d":0.3}"#,
        "--n",
        "16",
        "--seed",
        "9",
    ];
    let a = run_ok(&args);
    let b = run_ok(&args);
    assert_eq!(a, b);
    let values: Vec<f64> = a.lines().map(|l| l.parse().unwrap()).collect();
    assert_eq!(values.len(), 16);
    let other = run_ok(&[
        "simulate",
        "--model",
        r#"{"kind":"fracnoise","d":0.3}"#,
        "--n",
        "16",
        "--seed",
        "10",
    ]);
    assert_ne!(a, other, "seed ignored");
}

#[test]
fn weights_window_restricts_rows() {
    let text = run_ok(&[
        "weights",
        "--model",
        r#"{"kind":"fracnoise","d":0.3}"#,
        "--kind",
        "pi",
        "--count",
        "10",
        "--window",
        "2,4",
    ]);
    let rows = csv_rows(&text, "ell,weight");
    assert_eq!(rows.len(), 3);
    assert_eq!(rows[0][0], "2");
    assert!((rows[0][1].parse::<f64>().unwrap() - 0.105).abs() < 1e-15);
}

#[test]
fn spectrum_white_noise_is_flat() {
    let text = run_ok(&[
        "spectrum",
        "--model",
        r#"{"kind":"fracnoise","d":0}"#,
        "--points",
        "4",
    ]);
    let rows = csv_rows(&text, "lambda,f");
    assert_eq!(rows.len(), 4);
    let flat = 1.0 / (2.0 * std::f64::consts::PI);
    for row in rows {
        let f: f64 = row[1].parse().unwrap();
        assert!((f - flat).abs() < 1e-15, "f = {f}");
    }
}

#[test]
fn rates_reports_estimated_vs_theoretical() {
    let text = run_ok(&["rates", "--model", r#"{"kind":"fracnoise","d":0.4}"#]);
    let rows = csv_rows(&text, "quantity,estimated,theoretical");
    assert_eq!(rows.len(), 3);
    for row in rows {
        let est: f64 = row[1].parse().unwrap();
        let th: f64 = row[2].parse().unwrap();
        assert!(
            (est - th).abs() < 0.01,
            "{}: estimated {est} vs theoretical {th}",
            row[0]
        );
    }
}

#[test]
fn json_envelope_resolves_parameters() {
    let text = run_ok(&["gvar", "--d", "0.1", "--n-list", "10", "--format", "json"]);
    let v: serde_json::Value = serde_json::from_str(&text).unwrap();
    assert_eq!(v["command"], "gvar");
    assert_eq!(v["model"]["d"], 0.1);
    assert_eq!(v["model"]["sigma2"], 1.0);
    assert_eq!(v["parameters"]["route"], "closed-form");
    assert!(v["metadata"]["version"].as_str().is_some_and(|s| !s.is_empty()));
    let g = v["data"]["g"][0].as_f64().unwrap();
    assert!((g - 1.0434101709914625).abs() < 1e-12);
}

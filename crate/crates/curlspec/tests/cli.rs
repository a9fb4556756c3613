//! End-to-end checks of the `curlspec` binary: exit codes, file outputs,
//! golden tampering, and rerun determinism.

use std::path::Path;
use std::process::{Command, Output};

fn run(dir: &Path, args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_curlspec"))
        .arg("--output-dir")
        .arg(dir)
        .args(args)
        .env("CURLSPEC_THREADS", "1")
        .output()
        .expect("binary should launch")
}

#[test]
fn verify_appendix_d_succeeds_and_writes_certificate() {
    let dir = tempfile::tempdir().unwrap();
    let out = run(dir.path(), &["verify-appendix-d"]);
    assert_eq!(out.status.code(), Some(0), "stderr: {}", String::from_utf8_lossy(&out.stderr));
    let text = std::fs::read_to_string(dir.path().join("certificate.json")).unwrap();
    assert!(text.contains("\"11291\""));
    assert!(text.contains("2464900"));
    assert!(text.contains("\"verdict\": true"));
}

#[test]
fn verify_appendix_d_deeper_truncation_still_passes() {
    let dir = tempfile::tempdir().unwrap();
    let out = run(dir.path(), &["verify-appendix-d", "--m-trunc", "8"]);
    assert_eq!(out.status.code(), Some(0));
    let json: serde_json::Value =
        serde_json::from_str(&std::fs::read_to_string(dir.path().join("certificate.json")).unwrap())
            .unwrap();
    // remainder at M = 8 is strictly below 729/163840
    let values = json["certificate"]["values"].as_array().unwrap();
    let rem = values.iter().find(|v| v["name"] == "remainder").unwrap();
    let num: f64 = rem["num"].as_str().unwrap().parse().unwrap();
    let den: f64 = rem["den"].as_str().unwrap().parse().unwrap();
    assert!(num / den < 729.0 / 163840.0);
}

#[test]
fn verify_appendix_d_detects_tampered_golden() {
    let dir = tempfile::tempdir().unwrap();
    // produce a genuine certificate, then tamper with one numerator
    let out = run(dir.path(), &["verify-appendix-d"]);
    assert_eq!(out.status.code(), Some(0));
    let path = dir.path().join("certificate.json");
    let mut json: serde_json::Value =
        serde_json::from_str(&std::fs::read_to_string(&path).unwrap()).unwrap();
    let golden_path = dir.path().join("tampered_golden.json");
    json["certificate"]["values"][1]["num"] = "-314127831054337257779422850".into();
    std::fs::write(&golden_path, serde_json::to_string(&json["certificate"]).unwrap()).unwrap();

    let out = run(
        dir.path(),
        &["verify-appendix-d", "--golden", golden_path.to_str().unwrap()],
    );
    assert_eq!(out.status.code(), Some(1));
    let stderr = String::from_utf8_lossy(&out.stderr);
    assert!(stderr.contains("sum_j0"), "diff should name the field, got: {stderr}");
}

#[test]
fn thm1_sweep_writes_expected_rows() {
    let dir = tempfile::tempdir().unwrap();
    let out = run(
        dir.path(),
        &[
            "--scan-step", "0.01",
            "reproduce-thm1",
            "--major", "1.0",
            "--a-start", "0.01",
            "--a-stop", "0.05",
            "--a-step", "0.01",
        ],
    );
    assert_eq!(out.status.code(), Some(0), "stderr: {}", String::from_utf8_lossy(&out.stderr));
    let text = std::fs::read_to_string(dir.path().join("thm1_sweep.csv")).unwrap();
    let lines: Vec<&str> = text.lines().collect();
    assert_eq!(lines[0], "a,sym_upper,antisym_lower,verdict");
    assert_eq!(lines.len(), 6); // header + 5 rows
    for row in &lines[1..] {
        assert!(row.ends_with("Symmetric"), "thin tori must be symmetric: {row}");
    }
}

#[test]
fn thm1_empty_range_is_usage_error() {
    let dir = tempfile::tempdir().unwrap();
    let out = run(
        dir.path(),
        &["reproduce-thm1", "--a-start", "0.5", "--a-stop", "0.1", "--a-step", "0.01"],
    );
    assert_eq!(out.status.code(), Some(2));
}

#[test]
fn unknown_flag_is_usage_error() {
    let dir = tempfile::tempdir().unwrap();
    let out = run(dir.path(), &["reproduce-thm1", "--no-such-flag"]);
    assert_eq!(out.status.code(), Some(2));
}

#[test]
fn thm2_report_has_finite_threshold_and_asymmetric_tail() {
    let dir = tempfile::tempdir().unwrap();
    let out = run(dir.path(), &["reproduce-thm2", "--outer", "1.0", "--n-max", "14"]);
    assert_eq!(out.status.code(), Some(0), "stderr: {}", String::from_utf8_lossy(&out.stderr));
    let json: serde_json::Value =
        serde_json::from_str(&std::fs::read_to_string(dir.path().join("thm2_report.json")).unwrap())
            .unwrap();
    let n0 = json["n_threshold"].as_u64().unwrap();
    assert!((1..=14).contains(&n0));
    assert!(json["determinant_residual"].as_f64().unwrap().abs() < 1e-6);
    for row in json["rows"].as_array().unwrap() {
        let n = row["n"].as_u64().unwrap();
        let verdict = row["verdict"].as_str().unwrap();
        if n >= n0 {
            assert_eq!(verdict, "Asymmetric", "row n = {n}");
        } else {
            assert_ne!(verdict, "Asymmetric", "row n = {n}");
        }
    }
}

#[test]
fn scan_disk_csv_sorted_and_deterministic() {
    let dir = tempfile::tempdir().unwrap();
    let args = [
        "--m-max", "2",
        "--n-ell-max", "2",
        "--scan-step", "0.01",
        "scan",
        "--family", "disk",
        "--radius", "1.0",
        "--lambda-max", "7.0",
    ];
    let out = run(dir.path(), &args);
    assert_eq!(out.status.code(), Some(0));
    let first = std::fs::read_to_string(dir.path().join("scan_disk.csv")).unwrap();
    let lines: Vec<&str> = first.lines().collect();
    assert_eq!(lines[0], "m,n_ell,lambda");
    assert!(lines.len() > 1);
    let mut prev = 0.0;
    for row in &lines[1..] {
        let lambda: f64 = row.split(',').nth(2).unwrap().parse().unwrap();
        assert!(lambda >= prev, "roots must be sorted");
        prev = lambda;
    }
    // rerun: byte-identical output
    let out = run(dir.path(), &args);
    assert_eq!(out.status.code(), Some(0));
    let second = std::fs::read_to_string(dir.path().join("scan_disk.csv")).unwrap();
    assert_eq!(first, second);
}

#[test]
fn scan_zero_caps_empty_csv() {
    let dir = tempfile::tempdir().unwrap();
    // caps below 1 are rejected as configuration errors
    let out = run(
        dir.path(),
        &["--m-max", "0", "scan", "--family", "disk"],
    );
    assert_eq!(out.status.code(), Some(2));
    // the smallest admissible caps with a lambda ceiling below any root
    let out = run(
        dir.path(),
        &[
            "--m-max", "1",
            "--n-ell-max", "1",
            "--scan-step", "0.01",
            "scan",
            "--family", "disk",
            "--radius", "1.0",
            "--period", "1.0",
            "--lambda-max", "2.0",
        ],
    );
    assert_eq!(out.status.code(), Some(0));
    let text = std::fs::read_to_string(dir.path().join("scan_disk.csv")).unwrap();
    assert_eq!(text, "m,n_ell,lambda\n");
}

#[test]
fn gs_rectangle_report_is_consistent() {
    let dir = tempfile::tempdir().unwrap();
    let out = run(
        dir.path(),
        &[
            "--grid-h", "0.0625",
            "gs",
            "--section", "rectangle",
            "--r0", "1.0",
            "--r1", "2.0",
            "--z0", "-1.0",
            "--z1", "1.0",
        ],
    );
    assert_eq!(out.status.code(), Some(0), "stderr: {}", String::from_utf8_lossy(&out.stderr));
    let json: serde_json::Value =
        serde_json::from_str(&std::fs::read_to_string(dir.path().join("gs_report.json")).unwrap())
            .unwrap();
    assert!(json["bracket_contained"].as_bool().unwrap());
    assert!(json["fluxfree_exceeds_amperian"].as_bool().unwrap());
    let gs = json["lambda1_gs"].as_f64().unwrap();
    let s = json["lambda1_s"].as_f64().unwrap();
    assert!((s * s - gs).abs() < 1e-9 * gs);
}

#[test]
fn gs_mask_file_input() {
    let dir = tempfile::tempdir().unwrap();
    // 16x16 fully occupied unit square at r in [1, 2]
    let mut mask = String::from("1.0 0.0 0.0625 16 16\n");
    for _ in 0..16 {
        mask.push_str(&"1".repeat(16));
        mask.push('\n');
    }
    let mask_path = dir.path().join("square.mask");
    std::fs::write(&mask_path, mask).unwrap();
    let out = run(
        dir.path(),
        &[
            "--grid-h", "0.0625",
            "gs",
            "--section", "mask",
            "--mask-file", mask_path.to_str().unwrap(),
        ],
    );
    assert_eq!(out.status.code(), Some(0), "stderr: {}", String::from_utf8_lossy(&out.stderr));
    let json: serde_json::Value =
        serde_json::from_str(&std::fs::read_to_string(dir.path().join("gs_report.json")).unwrap())
            .unwrap();
    // unit square Dirichlet Laplacian: 2 pi^2 at percent accuracy
    let lap = json["lambda1_d"].as_f64().unwrap();
    assert!((lap - 2.0 * std::f64::consts::PI.powi(2)).abs() < 0.05 * lap);
}

#[test]
fn config_file_is_honored_but_flags_win() {
    let dir = tempfile::tempdir().unwrap();
    let config_path = dir.path().join("run.conf");
    std::fs::write(&config_path, "grid_h = 0.125\nm_max = 2\n").unwrap();
    // flag overrides config: grid 0.0625 beats 0.125
    let out = run(
        dir.path(),
        &[
            "--config", config_path.to_str().unwrap(),
            "--grid-h", "0.0625",
            "gs",
            "--section", "rectangle",
        ],
    );
    assert_eq!(out.status.code(), Some(0), "stderr: {}", String::from_utf8_lossy(&out.stderr));
    let json: serde_json::Value =
        serde_json::from_str(&std::fs::read_to_string(dir.path().join("gs_report.json")).unwrap())
            .unwrap();
    assert_eq!(json["grid_h"].as_f64().unwrap(), 0.0625);

    // bad config key is a usage error
    std::fs::write(&config_path, "gridh = 0.125\n").unwrap();
    let out = run(
        dir.path(),
        &["--config", config_path.to_str().unwrap(), "gs", "--section", "rectangle"],
    );
    assert_eq!(out.status.code(), Some(2));
}

#[test]
fn scan_annulus_contains_resonant_row() {
    // at the resonant geometry the annulus scan must list pi/(b - a)
    let res = curlspec::dispersion::find_resonant_annulus(1.0).unwrap();
    let dir = tempfile::tempdir().unwrap();
    let out = run(
        dir.path(),
        &[
            "--m-max", "2",
            "--n-ell-max", "2",
            "--scan-step", "0.005",
            "scan",
            "--family", "annulus",
            "--inner", &res.inner.to_string(),
            "--outer", &res.outer.to_string(),
            "--period", &res.period.to_string(),
            "--lambda-max", &(res.lambda + 1.0).to_string(),
        ],
    );
    assert_eq!(out.status.code(), Some(0), "stderr: {}", String::from_utf8_lossy(&out.stderr));
    let text = std::fs::read_to_string(dir.path().join("scan_annulus.csv")).unwrap();
    let hit = text.lines().skip(1).any(|row| {
        let mut cols = row.split(',');
        let m: i64 = cols.next().unwrap().parse().unwrap();
        let n: i64 = cols.next().unwrap().parse().unwrap();
        let lambda: f64 = cols.next().unwrap().parse().unwrap();
        m.abs() == 1 && n.abs() == 1 && (lambda - res.lambda).abs() < 1e-6
    });
    assert!(hit, "missing resonant row near lambda = {}:\n{text}", res.lambda);
}

#[test]
fn scan_resonance_family_csv() {
    let dir = tempfile::tempdir().unwrap();
    let out = run(dir.path(), &["scan", "--family", "resonance", "--outer", "1.0"]);
    assert_eq!(out.status.code(), Some(0));
    let text = std::fs::read_to_string(dir.path().join("scan_resonance.csv")).unwrap();
    let lines: Vec<&str> = text.lines().collect();
    assert_eq!(lines[0], "r,b,a_root,L,lambda");
    let fields: Vec<&str> = lines[1].split(',').collect();
    let a_root: f64 = fields[2].parse().unwrap();
    assert!((a_root - 0.448973783926908).abs() < 1e-8);
}

#[test]
fn thm2_rerun_identical_modulo_timestamp() {
    let dir = tempfile::tempdir().unwrap();
    let args = ["reproduce-thm2", "--outer", "1.0", "--n-max", "12"];
    assert_eq!(run(dir.path(), &args).status.code(), Some(0));
    let mut first: serde_json::Value =
        serde_json::from_str(&std::fs::read_to_string(dir.path().join("thm2_report.json")).unwrap())
            .unwrap();
    assert_eq!(run(dir.path(), &args).status.code(), Some(0));
    let mut second: serde_json::Value =
        serde_json::from_str(&std::fs::read_to_string(dir.path().join("thm2_report.json")).unwrap())
            .unwrap();
    first.as_object_mut().unwrap().remove("generated_unix_seconds");
    second.as_object_mut().unwrap().remove("generated_unix_seconds");
    assert_eq!(first, second);
}

#[test]
fn threads_env_var_is_accepted() {
    let dir = tempfile::tempdir().unwrap();
    let out = Command::new(env!("CARGO_BIN_EXE_curlspec"))
        .arg("--output-dir")
        .arg(dir.path())
        .args(["--m-max", "2", "--n-ell-max", "2", "--scan-step", "0.01"])
        .args(["scan", "--family", "disk", "--lambda-max", "6.0"])
        .env("CURLSPEC_THREADS", "4")
        .output()
        .unwrap();
    assert_eq!(out.status.code(), Some(0));
    // parallel run matches the serial ordering
    let parallel = std::fs::read_to_string(dir.path().join("scan_disk.csv")).unwrap();
    let out = run(
        dir.path(),
        &[
            "--m-max", "2",
            "--n-ell-max", "2",
            "--scan-step", "0.01",
            "scan",
            "--family", "disk",
            "--lambda-max", "6.0",
        ],
    );
    assert_eq!(out.status.code(), Some(0));
    let serial = std::fs::read_to_string(dir.path().join("scan_disk.csv")).unwrap();
    assert_eq!(parallel, serial);
}

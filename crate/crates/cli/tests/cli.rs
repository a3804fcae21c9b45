use std::fs;
use std::path::Path;
use std::process::{Command, Output};

use num_complex::Complex64;
use zonekit::propagators::{zonal_kernel, Sigma};
use zonekit::PhysParams;

fn zonekit(out: &Path, args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_zonekit"))
        .args(args)
        .arg("--out-dir")
        .arg(out)
        .env_remove("ZONEKIT_OUT_DIR")
        .output()
        .expect("binary runs")
}

fn rows(path: &Path) -> (Vec<String>, Vec<Vec<String>>) {
    let text = fs::read_to_string(path).unwrap();
    let mut lines = text.lines();
    let header = lines.next().unwrap().split(',').map(String::from).collect();
    (header, lines.map(|l| l.split(',').map(String::from).collect()).collect())
}

#[test]
fn spectrum_depends_only_on_p() {
    let dir = tempfile::tempdir().unwrap();
    let out = zonekit(dir.path(), &["spectrum", "--k", "2", "--lambda", "1", "--zones", "0..3", "--pmax", "5"]);
    assert_eq!(out.status.code(), Some(0));
    let (header, body) = rows(&dir.path().join("spectrum.csv"));
    assert_eq!(header, ["a", "p", "eigenvalue", "measured", "residual", "degeneracy"]);
    assert_eq!(body.len(), 18);
    for r in &body {
        let p: f64 = r[1].parse().unwrap();
        let e: f64 = r[2].parse().unwrap();
        let m: f64 = r[3].parse().unwrap();
        assert_eq!(e, 2.0 * p + 1.0 + 4.0);
        assert!((m - e).abs() < 1e-12 * e);
    }
}

#[test]
fn kernel_csv_round_trips() {
    let dir = tempfile::tempdir().unwrap();
    let out = zonekit(dir.path(), &["kernel", "--sigma", "i", "--a", "1", "--t", "0.25", "--grid", "-2:2:0.1"]);
    assert_eq!(out.status.code(), Some(0), "{}", String::from_utf8_lossy(&out.stderr));
    let (header, body) = rows(&dir.path().join("kernel.csv"));
    assert_eq!(header, ["re_z1", "im_z1", "re_w1", "im_w1", "kernel_re", "kernel_im", "sigma", "t", "a"]);
    assert_eq!(body.len(), 41 * 41);
    let p = PhysParams::default();
    for r in &body {
        let v: Vec<f64> = r[..6].iter().map(|c| c.parse().unwrap()).collect();
        let want = zonal_kernel(Sigma::I, 1, 0.25, &v[0..2], &v[2..4], &p).unwrap();
        assert_eq!(Complex64::new(v[4], v[5]), want);
        assert_eq!((r[6].as_str(), r[8].as_str()), ("i", "1"));
    }
}

#[test]
fn verify_exit_status_matches_report() {
    for suite in ["special", "propagators", "extensions"] {
        let dir = tempfile::tempdir().unwrap();
        let out = zonekit(dir.path(), &["verify", "--suite", suite]);
        let text = fs::read_to_string(dir.path().join(format!("verify_{suite}.json"))).unwrap();
        let report: serde_json::Value = serde_json::from_str(&text).unwrap();
        let checks = report["checks"].as_array().unwrap();
        assert!(!checks.is_empty());
        for c in checks {
            for key in ["check_name", "status", "measured", "tolerance", "invariant"] {
                assert!(c.get(key).is_some(), "{key} missing");
            }
        }
        let all_pass = checks.iter().all(|c| c["status"] == "pass");
        assert_eq!(out.status.code(), Some(if all_pass { 0 } else { 1 }), "{suite}");
    }
}

#[test]
fn identical_flags_give_identical_bytes() {
    let dir = tempfile::tempdir().unwrap();
    let (a, b) = (dir.path().join("a"), dir.path().join("b"));
    let args = ["path", "--method", "mc", "--n-slices", "2", "--samples", "5000", "--seed", "11"];
    assert_eq!(zonekit(&a, &args).status.code(), Some(0));
    assert_eq!(zonekit(&b, &args).status.code(), Some(0));
    assert_eq!(fs::read(a.join("path.csv")).unwrap(), fs::read(b.join("path.csv")).unwrap());
    let grid = ["kernel", "--grid", "-1:1:0.5"];
    zonekit(&a, &grid);
    let mut seq = grid.to_vec();
    seq.push("--sequential");
    zonekit(&b, &seq);
    assert_eq!(fs::read(a.join("kernel.csv")).unwrap(), fs::read(b.join("kernel.csv")).unwrap());
}

#[test]
fn validation_and_usage_errors_exit_two() {
    let dir = tempfile::tempdir().unwrap();
    let out = zonekit(dir.path(), &["kernel", "--lambda", "-1"]);
    assert_eq!(out.status.code(), Some(2));
    assert!(String::from_utf8_lossy(&out.stderr).contains("lambda"));
    let out = zonekit(dir.path(), &["spectrum", "--k", "3"]);
    assert_eq!(out.status.code(), Some(2));
    assert!(String::from_utf8_lossy(&out.stderr).contains("`k`"));
    assert_eq!(zonekit(dir.path(), &["nonsense"]).status.code(), Some(2));
    assert_eq!(zonekit(dir.path(), &["clifford", "--bogus"]).status.code(), Some(2));
    assert_eq!(zonekit(dir.path(), &["kernel", "--grid", "1:0:0.1"]).status.code(), Some(2));
}

#[test]
fn config_file_is_overridden_by_flags() {
    let dir = tempfile::tempdir().unwrap();
    let cfg = dir.path().join("zonekit.conf");
    fs::write(&cfg, "# test\nlambda = 2\npmax = 1\nzones = 0\n").unwrap();
    let cfg = cfg.to_str().unwrap();
    zonekit(dir.path(), &["spectrum", "--config", cfg]);
    let (_, body) = rows(&dir.path().join("spectrum.csv"));
    let values: Vec<f64> = body.iter().map(|r| r[2].parse().unwrap()).collect();
    assert_eq!(values, [2.0 + 16.0, 6.0 + 16.0]);
    zonekit(dir.path(), &["spectrum", "--config", cfg, "--lambda", "1", "--pmax", "0"]);
    let (_, body) = rows(&dir.path().join("spectrum.csv"));
    assert_eq!(body.len(), 1);
    assert_eq!(body[0][2].parse::<f64>().unwrap(), 5.0);
}

#[test]
fn output_directory_from_environment() {
    let dir = tempfile::tempdir().unwrap();
    let out = Command::new(env!("CARGO_BIN_EXE_zonekit"))
        .args(["clifford", "--rmax", "4"])
        .env("ZONEKIT_OUT_DIR", dir.path())
        .output()
        .unwrap();
    assert_eq!(out.status.code(), Some(0));
    let (header, body) = rows(&dir.path().join("clifford.csv"));
    assert_eq!(header, ["r", "n_r", "count"]);
    assert_eq!(body[2], ["3", "4", "2"]);
}

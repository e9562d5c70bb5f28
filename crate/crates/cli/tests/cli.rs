use std::path::Path;
use std::process::{Command, Output};

fn blipfield(args: &[&str], dir: &Path) -> Output {
    Command::new(env!("CARGO_BIN_EXE_blipfield"))
        .args(args)
        .current_dir(dir)
        .output()
        .expect("spawn blipfield")
}

#[test]
fn spectra_writes_csv_and_sidecar() {
    let dir = tempfile::tempdir().unwrap();
    let out = blipfield(&["spectra", "--n", "8", "--length", "8"], dir.path());
    assert!(out.status.success(), "{}", String::from_utf8_lossy(&out.stderr));
    let text = std::fs::read_to_string(dir.path().join("spectra.csv")).unwrap();
    let mut lines = text.lines();
    assert_eq!(lines.next(), Some("channel,k,hdyn,henergy"));
    assert_eq!(lines.count(), 32);
    let meta: serde_json::Value =
        serde_json::from_str(&std::fs::read_to_string(dir.path().join("spectra.csv.meta.json")).unwrap()).unwrap();
    assert_eq!(meta["summary"]["commutator_norm"], 0.0);
    assert_eq!(meta["config"]["lattice"]["n"], 8);
    assert_eq!(meta["constants"]["c"], 1.0);
    assert!(meta["version"].is_string());
}

#[test]
fn json_format_and_out_path() {
    let dir = tempfile::tempdir().unwrap();
    let out = blipfield(
        &[
            "orthogonality",
            "--n",
            "1024",
            "--samples",
            "5",
            "--format",
            "json",
            "--out",
            "o.json",
        ],
        dir.path(),
    );
    assert!(out.status.success(), "{}", String::from_utf8_lossy(&out.stderr));
    let v: serde_json::Value =
        serde_json::from_str(&std::fs::read_to_string(dir.path().join("o.json")).unwrap()).unwrap();
    let rows = v.as_array().unwrap();
    // 5 samples plus none inserted: t = 50 is already on the grid
    assert_eq!(rows.len(), 5);
    assert!(rows.iter().all(|r| r["overlap"].as_f64().unwrap() < 1e-12));
    assert!(dir.path().join("o.json.meta.json").exists());
}

#[test]
fn repeated_runs_are_byte_identical() {
    let dir = tempfile::tempdir().unwrap();
    for name in ["a.csv", "b.csv"] {
        let out = blipfield(
            &["propagate", "--n", "256", "--samples", "3", "--out", name],
            dir.path(),
        );
        assert!(out.status.success(), "{}", String::from_utf8_lossy(&out.stderr));
    }
    let a = std::fs::read(dir.path().join("a.csv")).unwrap();
    let b = std::fs::read(dir.path().join("b.csv")).unwrap();
    assert_eq!(a, b);
}

#[test]
fn config_file_is_read() {
    let dir = tempfile::tempdir().unwrap();
    let cfg = r#"{
        "lattice": {"n": 512, "length": 100.0},
        "units": "natural",
        "packets": [{"center": 0.0, "width": 0.390625, "direction": 1}],
        "time_grid": {"t0": 0.0, "t1": 25.0, "samples": 4},
        "output": {"path": "d.csv", "format": "csv"}
    }"#;
    std::fs::write(dir.path().join("cfg.json"), cfg).unwrap();
    let out = blipfield(&["dispersion-compare", "--config", "cfg.json"], dir.path());
    assert!(out.status.success(), "{}", String::from_utf8_lossy(&out.stderr));
    let text = std::fs::read_to_string(dir.path().join("d.csv")).unwrap();
    assert!(text.starts_with("t,width_blip,width_standard\n"));
    assert_eq!(text.lines().count(), 5);
}

#[test]
fn config_errors_exit_2() {
    let dir = tempfile::tempdir().unwrap();
    let out = blipfield(&["kernel", "--n", "512"], dir.path());
    assert_eq!(out.status.code(), Some(2));
    let out = blipfield(&["boost", "--beta", "0.9"], dir.path());
    assert_eq!(out.status.code(), Some(2));
    let out = blipfield(&["spectra", "--n", "7"], dir.path());
    assert_eq!(out.status.code(), Some(2));
    std::fs::write(dir.path().join("bad.json"), "{\"lattice\": 3}").unwrap();
    let out = blipfield(&["spectra", "--config", "bad.json"], dir.path());
    assert_eq!(out.status.code(), Some(2));
}

#[test]
fn numerical_preconditions_exit_3() {
    let dir = tempfile::tempdir().unwrap();
    // the default orthogonality packets at ±50 leak at the edge of a 110-wide box
    let out = blipfield(&["orthogonality", "--length", "110", "--n", "1024"], dir.path());
    assert_eq!(out.status.code(), Some(3), "{}", String::from_utf8_lossy(&out.stderr));
}

#[test]
fn kernel_summary_reports_slope() {
    let dir = tempfile::tempdir().unwrap();
    let out = blipfield(&["kernel", "--n", "4096"], dir.path());
    assert!(out.status.success(), "{}", String::from_utf8_lossy(&out.stderr));
    let meta: serde_json::Value =
        serde_json::from_str(&std::fs::read_to_string(dir.path().join("kernel.csv.meta.json")).unwrap()).unwrap();
    let slope = meta["summary"]["slope"].as_f64().unwrap();
    assert!((slope + 1.5).abs() < 0.05, "{slope}");
}

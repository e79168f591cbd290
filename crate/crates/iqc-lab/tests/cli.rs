use std::path::PathBuf;
use std::process::Command;

fn bin() -> Command {
    Command::new(env!("CARGO_BIN_EXE_iqc-lab"))
}

fn temp_path(name: &str) -> PathBuf {
    std::env::temp_dir().join(format!("iqc-lab-test-{}-{name}", std::process::id()))
}

#[test]
fn success_exits_zero_and_prints_json() {
    let out = bin()
        .args(["covariance", "--half-width", "8", "--t-grid", "0.1,1"])
        .output()
        .unwrap();
    assert_eq!(out.status.code(), Some(0));
    let text = String::from_utf8(out.stdout).unwrap();
    assert!(text.starts_with('{'));
    assert!(text.contains("\"experiment\": \"covariance\""));
    assert!(text.contains("\"tolerance\""));
    // wall time goes to stderr, never into the report
    assert!(!text.contains("wall-time"));
    assert!(String::from_utf8(out.stderr).unwrap().contains("wall-time"));
}

#[test]
fn config_errors_exit_two() {
    let out = bin().args(["verify-ccr", "--tau=-1"]).output().unwrap();
    assert_eq!(out.status.code(), Some(2));
    let err = String::from_utf8(out.stderr).unwrap();
    assert!(err.contains("error[config]"), "stderr: {err}");
}

#[test]
fn unknown_config_key_exits_two() {
    let path = temp_path("bad.conf");
    std::fs::write(&path, "tau = 1\nfrobnicate = 7\n").unwrap();
    let out = bin()
        .args(["covariance", "--config", path.to_str().unwrap()])
        .output()
        .unwrap();
    std::fs::remove_file(&path).unwrap();
    assert_eq!(out.status.code(), Some(2));
    assert!(String::from_utf8(out.stderr).unwrap().contains("frobnicate"));
}

#[test]
fn experiment_failures_exit_three() {
    // the width-4 suite member is not interior at N = 16
    let out = bin().args(["uncertainty", "--half-width", "16"]).output().unwrap();
    assert_eq!(out.status.code(), Some(3));
    let err = String::from_utf8(out.stderr).unwrap();
    assert!(err.contains("error[experiment]"), "stderr: {err}");
}

#[test]
fn reports_are_byte_identical_across_runs() {
    let a = temp_path("det-a.json");
    let b = temp_path("det-b.json");
    for path in [&a, &b] {
        let status = bin()
            .args([
                "uncertainty",
                "--half-width",
                "64",
                "--seed",
                "42",
                "--out",
                path.to_str().unwrap(),
            ])
            .status()
            .unwrap();
        assert!(status.success());
    }
    let ba = std::fs::read(&a).unwrap();
    let bb = std::fs::read(&b).unwrap();
    std::fs::remove_file(&a).unwrap();
    std::fs::remove_file(&b).unwrap();
    assert!(!ba.is_empty());
    assert_eq!(ba, bb);
}

#[test]
fn csv_format_emits_series_rows() {
    let out = bin()
        .args(["leakage", "--half-width", "16", "--state", "gaussian:0:1.5", "--k-grid", "0.2,0.5", "--format", "csv"])
        .output()
        .unwrap();
    assert_eq!(out.status.code(), Some(0));
    let text = String::from_utf8(out.stdout).unwrap();
    let mut lines = text.lines();
    assert_eq!(lines.next().unwrap(), "k_over_w,boundary_mass,weighted_norm");
    assert_eq!(lines.count(), 2);
}

#[test]
fn series_less_experiment_in_csv_is_empty_success() {
    let out = bin()
        .args(["interact", "--overlap", "geometric:2", "--format", "csv"])
        .output()
        .unwrap();
    assert_eq!(out.status.code(), Some(0));
    assert!(out.stdout.is_empty());
}

#[test]
fn flags_override_config_file() {
    let path = temp_path("override.conf");
    std::fs::write(&path, "half_width = 8\nt_grid = 1\n").unwrap();
    let out = bin()
        .args([
            "covariance",
            "--config",
            path.to_str().unwrap(),
            "--half-width",
            "12",
        ])
        .output()
        .unwrap();
    std::fs::remove_file(&path).unwrap();
    assert_eq!(out.status.code(), Some(0));
    let text = String::from_utf8(out.stdout).unwrap();
    assert!(text.contains("\"half_width\": 12"), "config echo should show the flag value");
}

#[test]
fn atomic_write_leaves_no_temp_files() {
    let dir = std::env::temp_dir().join(format!("iqc-lab-atomic-{}", std::process::id()));
    std::fs::create_dir_all(&dir).unwrap();
    let path = dir.join("report.json");
    let status = bin()
        .args(["verify-ccr", "--half-width", "8", "--out", path.to_str().unwrap()])
        .status()
        .unwrap();
    assert!(status.success());
    let entries: Vec<_> = std::fs::read_dir(&dir).unwrap().collect();
    assert_eq!(entries.len(), 1);
    std::fs::remove_dir_all(&dir).unwrap();
}

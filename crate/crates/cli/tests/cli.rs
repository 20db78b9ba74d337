use std::io::Write;
use std::process::{Command, Output};

fn qcalc(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_qcalc"))
        .args(args)
        .env("QCALC_THREADS", "2")
        .output()
        .expect("qcalc runs")
}

fn stdout(o: &Output) -> String {
    String::from_utf8_lossy(&o.stdout).into_owned()
}

#[test]
fn symbolic_three_d_passes() {
    let o = qcalc(&["verify-symbolic", "--calculus", "3D"]);
    assert_eq!(o.status.code(), Some(0));
    let text = stdout(&o);
    assert_eq!(text.matches("omega_gamma(").count(), 6);
    assert!(text.contains("leibniz"));
    assert!(text.trim_end().ends_with("0 failed"));
}

#[test]
fn json_is_deterministic_and_ordered() {
    let a = qcalc(&["verify-disk", "--format", "json"]);
    let b = qcalc(&["--mode", "disk", "--format", "json"]);
    assert_eq!(a.status.code(), Some(0));
    assert_eq!(a.stdout, b.stdout);
    let text = stdout(&a);
    let pos: Vec<usize> = ["\"check\"", "\"suite\"", "\"pass\"", "\"max_residual\""]
        .iter()
        .map(|k| text.find(k).unwrap())
        .collect();
    assert!(pos.windows(2).all(|w| w[0] < w[1]));
}

#[test]
fn probe_reports_ratio_two() {
    let o = qcalc(&["probe-growth", "--format", "json"]);
    assert_eq!(o.status.code(), Some(0));
    let v: serde_json::Value = serde_json::from_slice(&o.stdout).unwrap();
    let recs = v.as_array().unwrap();
    assert_eq!(recs.len(), 2);
    assert!(recs[0]["detail"].as_str().unwrap().contains("2.0000"));
}

#[test]
fn failing_check_exits_one() {
    // Faithfulness of the standard example fails at rank 28 of 42.
    let o = qcalc(&["verify-operator", "--format", "json", "--epsilon", "+1"]);
    assert_eq!(o.status.code(), Some(1));
    let v: serde_json::Value = serde_json::from_slice(&o.stdout).unwrap();
    let failed: Vec<&str> = v
        .as_array()
        .unwrap()
        .iter()
        .filter(|r| r["pass"] == false)
        .map(|r| r["check"].as_str().unwrap())
        .collect();
    assert_eq!(failed, ["rank of pi(m) Omega_j, deg m <= 2"]);
}

#[test]
fn config_file_is_read_and_flags_override() {
    let mut f = tempfile::NamedTempFile::new().unwrap();
    writeln!(f, "# disk window\nq = 1/3\nn_max = 8\nk_min = -6\nk_max = 6").unwrap();
    let path = f.path().to_str().unwrap();
    let o = qcalc(&["verify-disk", "--config", path, "--format", "json"]);
    assert_eq!(o.status.code(), Some(0));
    assert!(stdout(&o).contains("q=1/3 n<8 k in [-6, 6]"));
    let o = qcalc(&["verify-disk", "--config", path, "--q", "1/2", "--format", "json"]);
    assert!(stdout(&o).contains("q=1/2 n<8"));
}

#[test]
fn config_errors_exit_two() {
    let mut f = tempfile::NamedTempFile::new().unwrap();
    writeln!(f, "nmax = 8").unwrap();
    let o = qcalc(&["verify-disk", "--config", f.path().to_str().unwrap()]);
    assert_eq!(o.status.code(), Some(2));
    assert!(String::from_utf8_lossy(&o.stderr).contains("unknown configuration key"));
    assert_eq!(qcalc(&["verify-symbolic", "--q", "3/2"]).status.code(), Some(2));
    assert_eq!(qcalc(&["verify-operator", "--alpha-r", "1,2"]).status.code(), Some(2));
}

#[test]
fn small_window_exits_three() {
    let o = qcalc(&["verify-disk", "--n-max", "2"]);
    assert_eq!(o.status.code(), Some(3));
    assert!(String::from_utf8_lossy(&o.stderr).contains("enlarge"));
}

use std::process::{Command, Output};

use chernfock::coeff::m_var;
use chernfock::traces::ch0_closed;
use serde_json::Value;

fn run(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_chernfock")).args(args).output().expect("spawn chernfock")
}

fn stdout(o: &Output) -> String {
    String::from_utf8(o.stdout.clone()).unwrap()
}

#[test]
fn verify_qzeta_passes() {
    let o = run(&["verify", "qzeta-identities", "--qmax", "30"]);
    assert_eq!(o.status.code(), Some(0), "{}", String::from_utf8_lossy(&o.stderr));
    assert!(stdout(&o).contains("PASS"));
}

#[test]
fn verify_gk_routes_json() {
    let o = run(&["verify", "thm-1-2", "--k", "1", "--degmax", "6", "--format", "json"]);
    assert_eq!(o.status.code(), Some(0));
    let v: Value = serde_json::from_str(&stdout(&o)).unwrap();
    assert_eq!(v["status"], "PASS");
}

#[test]
fn reduced_ch0_matches_closed_form() {
    let o = run(&["reduced", "--k", "0", "--qmax", "10", "--m", "sym", "--format", "json"]);
    assert_eq!(o.status.code(), Some(0));
    let v: Value = serde_json::from_str(&stdout(&o)).unwrap();
    let want: Value = serde_json::from_str(&ch0_closed(10, &m_var()).to_json()).unwrap();
    assert_eq!(v["coefficients"], want["coefficients"]);
    assert_eq!(v["qmax"], 10);
}

#[test]
fn csv_series_has_header_and_rows() {
    let o = run(&["trace", "--k", "0", "--qmax", "4", "--m", "0", "--format", "csv"]);
    assert_eq!(o.status.code(), Some(0));
    let text = stdout(&o);
    let lines: Vec<&str> = text.lines().collect();
    assert_eq!(lines[0], "q_power,coefficient");
    // n p(n) at m = 0
    assert_eq!(&lines[1..], ["0,0", "1,1", "2,4", "3,9", "4,20"]);
}

#[test]
fn bracket_fit_outcomes() {
    let ok = run(&["brackets", "--s", "4", "--z", "--qmax", "20", "--fit", r#"["1","2","4"]"#]);
    assert_eq!(ok.status.code(), Some(0));
    assert!(stdout(&ok).contains("fit:"));
    // [2]² is not in the span of [2] and 1
    let bad = run(&["brackets", "--s", "2,2", "--qmax", "20", "--fit", r#"["1","2"]"#]);
    assert_eq!(bad.status.code(), Some(1));
}

#[test]
fn usage_and_config_errors_exit_2() {
    assert_eq!(run(&["verify", "no-such-suite"]).status.code(), Some(2));
    assert_eq!(run(&["frobnicate"]).status.code(), Some(2));
    assert_eq!(run(&["brackets", "--s", "1", "--z"]).status.code(), Some(2));
    assert_eq!(run(&["trace", "--k", "1", "--t1", "2"]).status.code(), Some(2));
    assert_eq!(run(&["brackets", "--s", "2", "--qmax", "5", "--fit", r#"["1","2","4"]"#]).status.code(), Some(2));
}

#[test]
fn output_is_deterministic() {
    let args = ["expand-op", "--k", "2", "--degmax", "4", "--format", "json", "--threads", "3"];
    let a = run(&args);
    let b = run(&args);
    assert_eq!(a.status.code(), Some(0));
    assert_eq!(stdout(&a), stdout(&b));
}

#[test]
fn out_flag_writes_file() {
    let dir = std::env::temp_dir().join(format!("chernfock-cli-{}", std::process::id()));
    std::fs::create_dir_all(&dir).unwrap();
    let path = dir.join("young.txt");
    let o = run(&["verify", "young", "--out", path.to_str().unwrap()]);
    assert_eq!(o.status.code(), Some(0));
    assert!(std::fs::read_to_string(&path).unwrap().contains("PASS"));
    std::fs::remove_dir_all(&dir).unwrap();
}

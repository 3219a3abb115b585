//! End-to-end checks of the `vofrac` binary: exit codes, output layout, and
//! byte-level determinism of the CSV.

use std::process::{Command, Output};

fn vofrac(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_vofrac"))
        .args(args)
        .output()
        .expect("binary runs")
}

#[test]
fn success_exit_code_and_csv_header() {
    let out = vofrac(&["exact", "--op", "ileft", "--grid", "0.1:1:5"]);
    assert_eq!(out.status.code(), Some(0));
    let stdout = String::from_utf8(out.stdout).unwrap();
    assert!(stdout.starts_with("t,value\n"));
    assert_eq!(stdout.lines().count(), 6);
}

#[test]
fn config_errors_exit_2() {
    // N < n+1
    let out = vofrac(&["approx", "--op", "ileft", "--n", "2", "--N", "2"]);
    assert_eq!(out.status.code(), Some(2));
    // malformed grid
    let out = vofrac(&["exact", "--op", "ileft", "--grid", "1:0:10"]);
    assert_eq!(out.status.code(), Some(2));
    // no closed form for right-sided operators
    let out = vofrac(&["exact", "--op", "dright-marchaud"]);
    assert_eq!(out.status.code(), Some(2));
    // no expansion for the right integral
    let out = vofrac(&["approx", "--op", "iright"]);
    assert_eq!(out.status.code(), Some(2));
    // unknown flag value (clap usage error)
    let out = vofrac(&["exact", "--op", "bogus"]);
    assert_eq!(out.status.code(), Some(2));
    // grid reaching the right endpoint is out of domain for right-sided ops
    let out = vofrac(&["oracle", "--op", "iright", "--grid", "0.5:1:3"]);
    assert_eq!(out.status.code(), Some(2));
    // case/command mismatch
    let out = vofrac(&["fde", "--case", "tracking-min"]);
    assert_eq!(out.status.code(), Some(2));
}

#[test]
fn numerical_failure_exits_3() {
    // an unreachable shooting tolerance cannot converge
    let out = vofrac(&["varmin", "--newton-tol", "1e-30", "--max-iter", "2"]);
    assert_eq!(out.status.code(), Some(3));
    let stderr = String::from_utf8(out.stderr).unwrap();
    assert!(stderr.contains("did not converge"), "stderr: {stderr}");
}

#[test]
fn csv_is_byte_identical_across_runs() {
    let args = ["compare", "--op", "ileft", "--n", "2", "--N", "3", "--grid", "0.001:1:201"];
    let a = vofrac(&args);
    let b = vofrac(&args);
    assert_eq!(a.status.code(), Some(0));
    assert_eq!(a.stdout, b.stdout);
}

#[test]
fn metrics_go_to_stdout_as_name_value_lines() {
    let out = vofrac(&["compare", "--op", "ileft", "--grid", "0.001:1:201"]);
    assert_eq!(out.status.code(), Some(0));
    let stdout = String::from_utf8(out.stdout).unwrap();
    let last = stdout.lines().last().unwrap();
    assert!(last.starts_with("E,"), "last line: {last}");
    let value: f64 = last[2..].parse().unwrap();
    assert!(value.is_finite() && value > 0.0);
}

#[test]
fn out_flag_writes_csv_to_file() {
    let dir = std::env::temp_dir().join("vofrac-cli-test");
    std::fs::create_dir_all(&dir).unwrap();
    let path = dir.join("fde.csv");
    let out = vofrac(&["fde", "--out", path.to_str().unwrap()]);
    assert_eq!(out.status.code(), Some(0));
    let csv = std::fs::read_to_string(&path).unwrap();
    assert!(csv.starts_with("t,x,exact,deviation\n"));
    // metrics still go to stdout
    let stdout = String::from_utf8(out.stdout).unwrap();
    assert!(stdout.starts_with("max_deviation,"));
    std::fs::remove_file(&path).ok();
}

#[test]
fn varmin_reports_costate_columns() {
    let out = vofrac(&["varmin", "--grid", "0.5:1:2"]);
    assert_eq!(out.status.code(), Some(0));
    let stdout = String::from_utf8(out.stdout).unwrap();
    assert!(stdout.starts_with("t,x,exact,deviation,lambda1,lambda2\n"));
    assert!(stdout.contains("\nJ,"));
}

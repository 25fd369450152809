use std::io::Write;
use std::process::{Command, Stdio};

fn cubell(args: &[&str]) -> std::process::Output {
    Command::new(env!("CARGO_BIN_EXE_cubell"))
        .args(args)
        .output()
        .expect("binary runs")
}

#[test]
fn mw_prints_the_group() {
    let out = cubell(&["mw", "XSSS"]);
    assert!(out.status.success());
    assert_eq!(String::from_utf8_lossy(&out.stdout), "Z/3Z\n");
}

#[test]
fn hilbert_at_zero() {
    let out = cubell(&["hilbert", "XS", "--n", "3", "--degree", "0,0,0,0"]);
    assert!(out.status.success());
    assert_eq!(String::from_utf8_lossy(&out.stdout), "1\n");
}

#[test]
fn verify_xs_mentions_the_printed_dimension() {
    let out = cubell(&["verify", "XS", "--n", "3", "--seed", "7"]);
    assert!(out.status.success());
    let text = String::from_utf8_lossy(&out.stdout);
    assert!(text.contains("dim-at-w"));
    assert!(text.contains("53"));
    assert!(text.contains("overall: pass"));
}

#[test]
fn json_reports_are_byte_identical() {
    let a = cubell(&["verify", "XS2", "--n", "3", "--seed", "5", "--format", "json"]);
    let b = cubell(&["verify", "XS2", "--n", "3", "--seed", "5", "--format", "json"]);
    assert!(a.status.success() && b.status.success());
    assert!(!a.stdout.is_empty());
    assert_eq!(a.stdout, b.stdout);
}

#[test]
fn out_flag_writes_the_same_bytes() {
    let dir = tempfile::tempdir().unwrap();
    let path = dir.path().join("report.json");
    let piped = cubell(&["catalog", "--format", "json"]);
    let to_file = cubell(&[
        "catalog",
        "--format",
        "json",
        "--out",
        path.to_str().unwrap(),
    ]);
    assert!(piped.status.success() && to_file.status.success());
    assert_eq!(std::fs::read(&path).unwrap(), piped.stdout);
}

#[test]
fn usage_errors_exit_2() {
    assert_eq!(cubell(&["mw", "bogus"]).status.code(), Some(2));
    assert_eq!(
        cubell(&["hilbert", "XS", "--degree", "1,2"]).status.code(),
        Some(2)
    );
    assert_eq!(cubell(&["--no-such-flag"]).status.code(), Some(2));
}

#[test]
fn classify_stdin_and_failure_exit_code() {
    let mut child = Command::new(env!("CARGO_BIN_EXE_cubell"))
        .args(["classify", "-"])
        .stdin(Stdio::piped())
        .stdout(Stdio::piped())
        .spawn()
        .unwrap();
    child
        .stdin
        .take()
        .unwrap()
        .write_all(b"n = 3\ncubic: x4*x5^2 + x3^3\nline: 0,0,1,0,0 ; 0,0,0,0,1\n")
        .unwrap();
    let out = child.wait_with_output().unwrap();
    assert!(out.status.success());
    assert!(String::from_utf8_lossy(&out.stdout).contains("XS"));

    // a line contained in the cubic is a reported failure, not a crash
    let dir = tempfile::tempdir().unwrap();
    let path = dir.path().join("bad.txt");
    std::fs::write(
        &path,
        "n = 3\ncubic: x1*x4^2 + x1*x5^2 + x1^2*x5\nline: 0,0,0,1,0 ; 0,0,0,0,1\n",
    )
    .unwrap();
    let out = cubell(&["classify", path.to_str().unwrap()]);
    assert_eq!(out.status.code(), Some(1));
    assert!(String::from_utf8_lossy(&out.stdout).contains("overall: fail"));
}

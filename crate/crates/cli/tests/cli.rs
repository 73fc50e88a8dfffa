//! End-to-end tests of the `ssred` binary: exit-code contract {0, 1, 2},
//! the certificate sentinel, and deterministic machine output.

use std::path::PathBuf;
use std::process::{Command, Output};

const SENTINEL: &str = "---CERTIFICATE---";

fn fixture(name: &str) -> PathBuf {
    PathBuf::from(env!("CARGO_MANIFEST_DIR")).join("tests/fixtures").join(name)
}

fn run(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_ssred"))
        .args(args)
        .output()
        .expect("binary runs")
}

fn stdout(out: &Output) -> String {
    String::from_utf8(out.stdout.clone()).expect("utf8 stdout")
}

fn code(out: &Output) -> i32 {
    out.status.code().expect("no signal")
}

#[test]
fn check_holds_on_identity() {
    let out = run(&["check", fixture("identity-n3.scn").to_str().unwrap()]);
    assert_eq!(code(&out), 0, "stdout: {}", stdout(&out));
    let text = stdout(&out);
    assert!(text.contains(SENTINEL));
    assert!(text.contains("seed: 42"));
}

#[test]
fn check_fails_on_order_four_rotation() {
    let out = run(&["check", fixture("rotation-n4.scn").to_str().unwrap()]);
    assert_eq!(code(&out), 1, "stdout: {}", stdout(&out));
}

#[test]
fn check_rejects_singular_gamma() {
    let out = run(&["check", fixture("singular.scn").to_str().unwrap()]);
    assert_eq!(code(&out), 2);
}

#[test]
fn check_rejects_missing_file() {
    let out = run(&["check", "/nonexistent/scenario.scn"]);
    assert_eq!(code(&out), 2);
}

#[test]
fn saturate_reports_sharp_exponent() {
    let out = run(&["saturate", fixture("sharp-n4.scn").to_str().unwrap()]);
    assert_eq!(code(&out), 0, "stdout: {}", stdout(&out));
    let text = stdout(&out);
    assert!(text.contains("exponent: 4"), "stdout: {text}");
}

#[test]
fn saturate_trivial_on_unipotent() {
    let out = run(&["saturate", fixture("unipotent-n2.scn").to_str().unwrap()]);
    assert_eq!(code(&out), 0, "stdout: {}", stdout(&out));
    let text = stdout(&out);
    assert!(text.contains("exponent: 1"), "stdout: {text}");
}

#[test]
fn saturate_rejects_non_quasiunipotent() {
    // order 4 at level 4: gamma^2 = -1, so (gamma^R - 1)^2 != 0
    let out = run(&["saturate", fixture("rotation-n4.scn").to_str().unwrap()]);
    assert_eq!(code(&out), 1, "stdout: {}", stdout(&out));
}

#[test]
fn example_certificates_verify() {
    for id in ["ex-n2", "ex-n3", "ex-n4", "sharp-n2", "sharp-n3", "sharp-n4", "sharp-d3n2"] {
        let out = run(&["example", id]);
        assert_eq!(code(&out), 0, "example {id}: {}", stdout(&out));
        assert!(stdout(&out).contains(SENTINEL));
    }
}

#[test]
fn example_exponents_exact() {
    for (id, exp) in [("sharp-n2", 8), ("sharp-n3", 9), ("sharp-n4", 4), ("sharp-d3n2", 4)] {
        let out = run(&["--format", "machine", "example", id]);
        assert_eq!(code(&out), 0);
        assert!(
            stdout(&out).contains(&format!("kernel_exponent: {exp}")),
            "example {id}: {}",
            stdout(&out)
        );
    }
}

#[test]
fn example_unknown_id_is_invalid() {
    let out = run(&["example", "no-such-example"]);
    assert_eq!(code(&out), 2);
}

#[test]
fn example_machine_output_deterministic() {
    let a = run(&["--format", "machine", "example", "sharp-n3"]);
    let b = run(&["--format", "machine", "example", "sharp-n3"]);
    assert_eq!(a.stdout, b.stdout);
}

#[test]
fn decide_elliptic_worked_cases() {
    for (file, class) in [
        ("elliptic-deg1.txt", "degree: 1"),
        ("elliptic-deg2.txt", "degree: 2"),
        ("elliptic-deg6.txt", "degree: >=6"),
    ] {
        let out = run(&["decide-elliptic", fixture(file).to_str().unwrap()]);
        assert_eq!(code(&out), 0, "{file}: {}", stdout(&out));
        assert!(stdout(&out).contains(class), "{file}: {}", stdout(&out));
    }
}

#[test]
fn decide_elliptic_rejects_non_sl2() {
    let out = run(&["decide-elliptic", fixture("elliptic-invalid.txt").to_str().unwrap()]);
    assert_eq!(code(&out), 2);
}

#[test]
fn verify_all_passes_and_is_shard_invariant() {
    let one = run(&["--seed", "42", "--shards", "1", "--format", "machine", "verify-all"]);
    assert_eq!(code(&one), 0, "stdout: {}", stdout(&one));
    let four = run(&["--seed", "42", "--shards", "4", "--format", "machine", "verify-all"]);
    assert_eq!(code(&four), 0);
    assert_eq!(one.stdout, four.stdout);
    assert!(stdout(&one).contains("total_exceptions: 0"));
}

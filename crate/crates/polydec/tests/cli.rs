//! Black-box tests of the command-line interface: exit codes, report
//! formats, and byte-stable output.

use std::process::{Command, Output};

fn fixture(name: &str) -> String {
    format!("{}/tests/fixtures/{name}", env!("CARGO_MANIFEST_DIR"))
}

fn run(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_polydec"))
        .args(args)
        .output()
        .expect("binary runs")
}

fn stdout(out: &Output) -> String {
    String::from_utf8(out.stdout.clone()).unwrap()
}

#[test]
fn validate_reports_counts() {
    let out = run(&["validate", &fixture("triangle.off")]);
    assert_eq!(out.status.code(), Some(0));
    let text = stdout(&out);
    assert!(text.contains("V=3 E=3 F=1"), "got: {text}");
    assert!(text.contains("boundary=true"));
}

#[test]
fn validate_moebius_fails_with_exit_3() {
    let path = fixture("moebius.off");
    for extra in [&[][..], &["--orient"][..]] {
        let mut args = vec!["validate", path.as_str()];
        args.extend_from_slice(extra);
        let out = run(&args);
        assert_eq!(out.status.code(), Some(3));
        let err = String::from_utf8(out.stderr.clone()).unwrap();
        assert!(err.contains("nonorientable") || err.contains("Nonorientable"),
            "stderr: {err}");
    }
}

#[test]
fn truncated_file_exits_2() {
    let out = run(&["validate", &fixture("bad.off")]);
    assert_eq!(out.status.code(), Some(2));
}

#[test]
fn betti_reports() {
    for (mesh, expect) in [
        ("cube.off", "b0=1 b1=0 b2=1"),
        ("torus.off", "b0=1 b1=2 b2=1"),
        ("disk.off", "b0=1 b1=0 b2=0"),
    ] {
        let out = run(&["betti", &fixture(mesh)]);
        assert_eq!(out.status.code(), Some(0), "{mesh}");
        assert!(stdout(&out).contains(expect), "{mesh}: {}", stdout(&out));
    }
}

#[test]
fn wedge_pentagon_indicators() {
    let out = run(&[
        "wedge",
        &fixture("pentagon.off"),
        &fixture("pentagon_a.dform"),
        &fixture("pentagon_b.dform"),
    ]);
    assert_eq!(out.status.code(), Some(0));
    assert_eq!(stdout(&out), "DFORM 2 1\n0.3\n");
}

#[test]
fn wedge_unit_is_identity() {
    let out = run(&[
        "wedge",
        &fixture("pentagon.off"),
        &fixture("pentagon_unit.dform"),
        &fixture("pentagon_a.dform"),
    ]);
    assert_eq!(out.status.code(), Some(0));
    assert_eq!(stdout(&out), "DFORM 1 5\n1\n0\n0\n0\n0\n");
}

#[test]
fn wedge_degree_overflow_exits_4() {
    let out = run(&[
        "wedge",
        &fixture("pentagon.off"),
        &fixture("pentagon_a.dform"),
        &fixture("pentagon_area.dform"),
    ]);
    assert_eq!(out.status.code(), Some(4));
}

#[test]
fn derivative_is_deterministic() {
    let args = [
        "derivative",
        &*fixture("disk.off"),
        &*fixture("disk_beta.dform"),
    ];
    let first = run(&args);
    assert_eq!(first.status.code(), Some(0));
    let text = stdout(&first);
    assert!(text.starts_with("DFORM 2 2\n"), "got: {text}");
    let second = run(&args);
    assert_eq!(first.stdout, second.stdout, "output must be byte-stable");
}

#[test]
fn check_subcommand_exit_codes() {
    let out = run(&["check", "leibniz01", "--trials", "20", "--seed", "7"]);
    assert_eq!(out.status.code(), Some(0), "stderr: {:?}", out.stderr);
    let text = stdout(&out);
    assert!(text.contains("property=leibniz01"));
    assert!(text.contains("passed=true"));
    let again = run(&["check", "leibniz01", "--trials", "20", "--seed", "7"]);
    assert_eq!(out.stdout, again.stdout, "same seed must be byte-stable");

    let out = run(&["check", "no_such_property"]);
    assert_eq!(out.status.code(), Some(2));

    // impossible tolerance turns the counterexample search into a failure
    let out = run(&[
        "check",
        "assoc_counterexample",
        "--trials",
        "5",
        "--seed",
        "1",
        "--tol",
        "1e9",
    ]);
    assert_eq!(out.status.code(), Some(1));
    assert!(stdout(&out).contains("passed=false"));
}

#[test]
fn check_counterexample_prints_witness() {
    let out = run(&[
        "check",
        "assoc_counterexample",
        "--trials",
        "200",
        "--seed",
        "3",
    ]);
    assert_eq!(out.status.code(), Some(0));
    let text = stdout(&out);
    assert!(text.contains("witness_mesh_seed="), "got: {text}");
    assert!(text.contains("witness_deviation="));
}

#[test]
fn check_with_profile_flag() {
    let out = run(&[
        "check", "skew", "--trials", "10", "--seed", "2", "--profile", "torus",
    ]);
    assert_eq!(out.status.code(), Some(0));
    let out = run(&["check", "skew", "--profile", "nope", "--trials", "1"]);
    assert_eq!(out.status.code(), Some(2));
}

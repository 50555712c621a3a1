use std::path::Path;
use std::process::{Command, Output};

use modform_core::{Certificate, CertificateKind};

fn modform(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_modform"))
        .args(args)
        .output()
        .expect("binary runs")
}

fn stdout(o: &Output) -> String {
    String::from_utf8(o.stdout.clone()).unwrap()
}

fn stderr(o: &Output) -> String {
    String::from_utf8(o.stderr.clone()).unwrap()
}

fn golden() -> &'static Path {
    Path::new(concat!(
        env!("CARGO_MANIFEST_DIR"),
        "/tests/golden/table.csv"
    ))
}

#[test]
fn default_table_matches_golden_csv() {
    let o = modform(&[
        "table",
        "--primes",
        "2,3,5,7,11,13,17,19",
        "--range",
        "12..42",
    ]);
    assert_eq!(o.status.code(), Some(0), "{}", stderr(&o));
    assert_eq!(stdout(&o), std::fs::read_to_string(golden()).unwrap());
    let defaults = modform(&["table"]);
    assert_eq!(defaults.stdout, o.stdout);
}

#[test]
fn cross_verified_table_exits_zero() {
    let o = modform(&["table", "--cross-verify", "--jobs", "2"]);
    assert_eq!(o.status.code(), Some(0), "{}", stderr(&o));
    assert_eq!(stdout(&o), std::fs::read_to_string(golden()).unwrap());
}

#[test]
fn single_prime_row() {
    let o = modform(&[
        "table", "--primes", "13", "--range", "12..42", "--format", "plain",
    ]);
    assert_eq!(o.status.code(), Some(0));
    assert_eq!(stdout(&o), " 13: 14 16 18 20 22 26 28 30 32 34 38 40 42\n");
}

#[test]
fn empty_range_is_empty_table() {
    let o = modform(&["table", "--primes", "5,7", "--range", "44..42"]);
    assert_eq!(o.status.code(), Some(0));
    assert_eq!(stdout(&o), "p\n5\n7\n");
}

#[test]
fn table_against_wrong_expectation_exits_two() {
    let dir = tempfile::tempdir().unwrap();
    let path = dir.path().join("tampered.csv");
    let tampered = std::fs::read_to_string(golden())
        .unwrap()
        .replace("19,,x,,,,x,x,x,x,,x", "19,x,x,,,,x,x,x,x,,x");
    std::fs::write(&path, tampered).unwrap();
    let o = modform(&["table", "--expect", path.to_str().unwrap()]);
    assert_eq!(o.status.code(), Some(2));
    assert!(stderr(&o).contains("mismatch: line 9"), "{}", stderr(&o));
    let ok = modform(&["table", "--expect", golden().to_str().unwrap()]);
    assert_eq!(ok.status.code(), Some(0));
}

#[test]
fn table_is_deterministic_across_job_counts() {
    let args = [
        "table",
        "--primes",
        "11,13,17,19",
        "--range",
        "12..60",
        "--format",
        "json",
    ];
    let one = modform(&[&args[..], &["--jobs", "1"]].concat());
    let four = modform(&[&args[..], &["--jobs", "4"]].concat());
    assert_eq!(one.status.code(), Some(0));
    assert_eq!(one.stdout, four.stdout);
}

#[test]
fn expand_j() {
    let o = modform(&["expand", "j", "--prec", "2"]);
    assert_eq!(o.status.code(), Some(0));
    assert_eq!(stdout(&o), "-1: 1\n0: 744\n1: 196884\n");
}

#[test]
fn expand_e0() {
    let o = modform(&["expand", "E0", "--prec", "5"]);
    assert_eq!(stdout(&o), "0: 1\n");
}

#[test]
fn expand_f26_reproduces_known_coefficients() {
    let o = modform(&["expand", "delta*E6*E4^2", "--prec", "20"]);
    let lines: Vec<String> = stdout(&o).lines().map(String::from).collect();
    assert_eq!(lines.len(), 19);
    assert_eq!(lines[0], "1: 1");
    assert_eq!(lines[1], "2: -48");
    assert_eq!(lines[18], "19: -6082056370308940");
    let e = modform(&["eigenform", "--k", "26", "--prec", "20"]);
    assert_eq!(e.stdout, o.stdout);
}

#[test]
fn expand_json_uses_decimal_strings() {
    let o = modform(&[
        "expand",
        "delta*E6*E4^2",
        "--prec",
        "20",
        "--format",
        "json",
    ]);
    let v: serde_json::Value = serde_json::from_slice(&o.stdout).unwrap();
    assert_eq!(v["weight"], 26);
    let last = &v["coefficients"][18];
    assert_eq!(last["n"], 19);
    assert_eq!(last["value"], "-6082056370308940");
}

#[test]
fn parse_error_names_position() {
    let o = modform(&["expand", "delta * (E4", "--prec", "3"]);
    assert_eq!(o.status.code(), Some(3));
    assert!(
        stderr(&o).contains("error[ParseError]: at position 11"),
        "{}",
        stderr(&o)
    );
}

#[test]
fn certify_theorem1_verified() {
    let o = modform(&[
        "certify", "theorem1", "--k", "26", "--p", "5", "--m", "6", "--b", "2",
    ]);
    assert_eq!(o.status.code(), Some(0), "{}", stderr(&o));
    let cert: Certificate = serde_json::from_slice(&o.stdout).unwrap();
    assert_eq!(cert.kind, CertificateKind::Theorem1);
    assert_eq!(cert.params.c, Some(19));
    assert!(cert.verified);
    let again = serde_json::to_string_pretty(&cert).unwrap() + "\n";
    assert_eq!(again, stdout(&o));

    let modp = modform(&[
        "certify", "theorem1", "--k", "26", "--p", "5", "--m", "6", "--b", "2", "--mode", "modp",
    ]);
    assert_eq!(modp.status.code(), Some(0));
}

#[test]
fn certify_nilpotency_verified() {
    let o = modform(&["certify", "nilpotency", "--k", "26", "--p", "19"]);
    assert_eq!(o.status.code(), Some(0));
    let cert: Certificate = serde_json::from_slice(&o.stdout).unwrap();
    assert!(cert.verified);
}

#[test]
fn certify_theorem2_examples() {
    let o = modform(&[
        "certify",
        "theorem2",
        "--k",
        "-2",
        "--p",
        "5",
        "--form",
        "E4*E6/delta",
    ]);
    assert_eq!(o.status.code(), Some(0), "{}", stderr(&o));
    let o = modform(&[
        "certify",
        "theorem2",
        "--k",
        "-22",
        "--p",
        "5",
        "--form",
        "E4^2*E6*delta^-3",
        "--decomposition",
        "1,4,1",
    ]);
    assert_eq!(o.status.code(), Some(0), "{}", stderr(&o));
    let cert: Certificate = serde_json::from_slice(&o.stdout).unwrap();
    assert_eq!(
        (cert.params.r, cert.params.s, cert.params.t),
        (Some(1), Some(4), Some(1))
    );
}

#[test]
fn unverified_certificate_exits_one() {
    // tau(11) = 534612 is a unit mod 11.
    let o = modform(&["certify", "nilpotency", "--k", "12", "--p", "11"]);
    assert_eq!(o.status.code(), Some(1));
    let cert: Certificate = serde_json::from_slice(&o.stdout).unwrap();
    assert!(!cert.verified);
    assert!(!cert.check("charpoly-mod-p").unwrap().pass);
}

#[test]
fn precondition_failures_exit_three_with_name() {
    let cases: [(&[&str], &str); 5] = [
        (
            &["certify", "theorem1", "--k", "12", "--p", "11"],
            "CriterionFails",
        ),
        (
            &["certify", "theorem1", "--k", "24", "--p", "5"],
            "DimensionNotOne",
        ),
        (
            &["certify", "hatada", "--k", "24", "--p", "5"],
            "Precondition",
        ),
        (
            &[
                "certify", "theorem1", "--k", "26", "--p", "5", "--m", "6", "--b", "1",
            ],
            "BTooSmall",
        ),
        (
            &[
                "certify",
                "theorem2",
                "--k",
                "-4",
                "--p",
                "5",
                "--form",
                "E4^2*E6^2/delta^2",
            ],
            "NoDecomposition",
        ),
    ];
    for (args, name) in cases {
        let o = modform(args);
        assert_eq!(o.status.code(), Some(3), "{args:?}");
        assert!(
            stderr(&o).contains(&format!("error[{name}]")),
            "{args:?}: {}",
            stderr(&o)
        );
    }
}

#[test]
fn usage_errors_exit_three() {
    for args in [
        &["bogus"][..],
        &["table", "--primes", "4"],
        &["certify", "theorem1", "--k", "13", "--p", "5"],
        &["expand", "j", "--prec", "0"],
        &["table", "--range", "12-42"],
    ] {
        assert_eq!(modform(args).status.code(), Some(3), "{args:?}");
    }
    assert_eq!(modform(&["--help"]).status.code(), Some(0));
}

#[test]
fn out_flag_writes_file() {
    let dir = tempfile::tempdir().unwrap();
    let path = dir.path().join("j.txt");
    let o = modform(&[
        "expand",
        "j",
        "--prec",
        "2",
        "--out",
        path.to_str().unwrap(),
    ]);
    assert_eq!(o.status.code(), Some(0));
    assert!(o.stdout.is_empty());
    assert_eq!(
        std::fs::read_to_string(&path).unwrap(),
        "-1: 1\n0: 744\n1: 196884\n"
    );
}

#[test]
fn every_kind_roundtrips_through_json() {
    let runs: [&[&str]; 5] = [
        &[
            "certify", "theorem1", "--k", "26", "--p", "5", "--m", "6", "--b", "2",
        ],
        &[
            "certify",
            "theorem2",
            "--k",
            "-2",
            "--p",
            "5",
            "--form",
            "E4*E6/delta",
        ],
        &["certify", "nilpotency", "--k", "26", "--p", "19"],
        &["certify", "hatada", "--k", "24", "--p", "3"],
        &["certify", "weight-criterion", "--k", "40", "--p", "19"],
    ];
    for args in runs {
        let o = modform(args);
        assert_eq!(o.status.code(), Some(0), "{args:?}");
        let cert: Certificate = serde_json::from_slice(&o.stdout).unwrap();
        let back: Certificate =
            serde_json::from_str(&serde_json::to_string(&cert).unwrap()).unwrap();
        assert_eq!(back, cert);
        assert_eq!(modform(args).stdout, o.stdout, "deterministic");
    }
}

#[test]
fn other_formats_render() {
    let md = modform(&["table", "--primes", "19", "--format", "markdown"]);
    assert!(stdout(&md).contains("| 19 |   | 14 |"));
    let plain = modform(&[
        "certify",
        "nilpotency",
        "--k",
        "26",
        "--p",
        "19",
        "--format",
        "plain",
    ]);
    assert!(stdout(&plain).starts_with("nilpotency k=26 p=19: verified"));
    let csv = modform(&[
        "certify",
        "nilpotency",
        "--k",
        "26",
        "--p",
        "19",
        "--format",
        "csv",
    ]);
    assert!(stdout(&csv).starts_with("name,observed,expected,pass\n"));
}

// SPDX-License-Identifier: MIT OR Apache-2.0

use std::path::Path;
use std::process::{Command, Output};

use ascheme::sio::{parse_eigenreport, parse_hadamard, parse_scheme, parse_verify_report};
use ascheme::spectra::{closed_form_p, Family};
use ascheme::Scheme;

fn ascheme(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_ascheme"))
        .args(args)
        .output()
        .expect("binary runs")
}

fn ok(args: &[&str]) -> String {
    let out = ascheme(args);
    assert!(
        out.status.success(),
        "{args:?} failed: {}",
        String::from_utf8_lossy(&out.stderr)
    );
    String::from_utf8(out.stdout).unwrap()
}

fn path(dir: &Path, name: &str) -> String {
    dir.join(name).to_str().unwrap().to_owned()
}

fn certifies(file: &str) -> Scheme {
    let text = std::fs::read_to_string(file).unwrap();
    let s = Scheme::from_relation_matrix(parse_scheme(&text).unwrap()).unwrap();
    s.certify().unwrap();
    s
}

#[test]
fn build_then_verify_three_cycle() {
    let dir = tempfile::tempdir().unwrap();
    let t3 = path(dir.path(), "t3.scm");
    ok(&["build", "paley-tournament", "--m", "3", "-o", &t3]);
    assert_eq!(std::fs::read_to_string(&t3).unwrap(), "3 2\n0 1 2\n2 0 1\n1 2 0\n");
    let text = ok(&["verify", &t3]);
    assert!(text.contains("class: 2"));
    assert!(text.contains("type: non-symmetric"));
    assert!(text.contains("valencies: [1, 1, 1]"));
    let report = parse_verify_report(&ok(&["verify", &t3, "--json"])).unwrap();
    assert_eq!((report.class, report.symmetric), (2, false));
    assert_eq!(report.valencies, vec![1, 1, 1]);
}

#[test]
fn edc_eigen_matches_closed_form() {
    let dir = tempfile::tempdir().unwrap();
    let t3 = path(dir.path(), "t3.scm");
    let e8 = path(dir.path(), "e8.scm");
    ok(&["build", "paley-tournament", "--m", "3", "-o", &t3]);
    ok(&["edc", &t3, "-o", &e8]);
    assert_eq!(certifies(&e8).n(), 8);
    let e = parse_eigenreport(&ok(&["eigen", &e8, "--json"])).unwrap();
    assert_eq!(e.p(), closed_form_p(Family::Edc, 3).unwrap().p());
    assert!(ok(&["eigen", &e8]).contains("multiplicities: [1, 2, 2, 3]"));
}

#[test]
fn every_written_scheme_recertifies() {
    let dir = tempfile::tempdir().unwrap();
    let t7 = path(dir.path(), "t7.scm");
    let g5 = path(dir.path(), "g5.scm");
    ok(&["build", "paley-tournament", "--m", "7", "-o", &t7]);
    ok(&["build", "paley-graph", "--q", "5", "-o", &g5]);
    for (verb, input, n) in [
        ("edc", &t7, 16),
        ("double", &t7, 15),
        ("reverse", &t7, 7),
        ("taylor", &g5, 12),
    ] {
        let out = path(dir.path(), &format!("{verb}.scm"));
        ok(&[verb, input, "-o", &out]);
        assert_eq!(certifies(&out).n(), n, "{verb}");
    }
}

#[test]
fn hadamard_output() {
    let dir = tempfile::tempdir().unwrap();
    let t7 = path(dir.path(), "t7.scm");
    ok(&["build", "paley-tournament", "--m", "7", "-o", &t7]);
    let text = ok(&["hadamard", &t7]);
    assert_eq!(text.lines().next(), Some("+ + + + + + + +"));
    assert_eq!(parse_hadamard(&text).unwrap().order(), 8);
}

#[test]
fn check_theorem_passes() {
    let text = ok(&["check-theorem", "--m", "3,7"]);
    assert_eq!(text, "m = 3: PASS\nm = 7: PASS\n");
    let out = ascheme(&["check-theorem", "--m", "5"]);
    assert_eq!(out.status.code(), Some(1));
    assert!(String::from_utf8_lossy(&out.stdout).contains("m = 5: FAIL"));
}

#[test]
fn json_is_deterministic() {
    let dir = tempfile::tempdir().unwrap();
    let t11 = path(dir.path(), "t11.scm");
    ok(&["build", "paley-tournament", "--m", "11", "-o", &t11]);
    assert_eq!(ok(&["verify", &t11, "--json"]), ok(&["verify", &t11, "--json"]));
    assert_eq!(ok(&["eigen", &t11, "--json"]), ok(&["eigen", &t11, "--json"]));
}

#[test]
fn usage_errors_exit_2() {
    assert_eq!(ascheme(&[]).status.code(), Some(2));
    assert_eq!(ascheme(&["frobnicate"]).status.code(), Some(2));
    assert_eq!(ascheme(&["build", "paley-tournament"]).status.code(), Some(2));
    assert_eq!(ascheme(&["build", "paley-tournament", "--m", "x"]).status.code(), Some(2));
}

#[test]
fn certification_failures_exit_1() {
    let dir = tempfile::tempdir().unwrap();
    let bad = path(dir.path(), "bad.scm");
    // reversing one triangle of a 4-point tournament-like matrix
    std::fs::write(&bad, "4 2\n0 1 2 1\n2 0 1 2\n1 2 0 1\n2 1 2 0\n").unwrap();
    let out = ascheme(&["verify", &bad]);
    assert_eq!(out.status.code(), Some(1));
    assert!(String::from_utf8_lossy(&out.stderr).starts_with("error: "));

    let malformed = path(dir.path(), "malformed.scm");
    std::fs::write(&malformed, "2 1\n0 3\n3 0\n").unwrap();
    let out = ascheme(&["verify", &malformed]);
    assert_eq!(out.status.code(), Some(1));
    assert!(String::from_utf8_lossy(&out.stderr).contains("line 2"));

    assert_eq!(ascheme(&["build", "paley-tournament", "--m", "9"]).status.code(), Some(1));
    assert_eq!(ascheme(&["verify", &path(dir.path(), "missing.scm")]).status.code(), Some(1));
}

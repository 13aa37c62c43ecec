use std::process::{Command, Output};

use qbundle::report::{Status, SuiteReport};

fn qbundle(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_qbundle")).args(args).output().unwrap()
}

fn stdout(o: &Output) -> String {
    String::from_utf8(o.stdout.clone()).unwrap()
}

fn stderr(o: &Output) -> String {
    String::from_utf8(o.stderr.clone()).unwrap()
}

fn fixture(name: &str) -> String {
    format!("{}/../../fixtures/{name}", env!("CARGO_MANIFEST_DIR"))
}

#[test]
fn list_names_everything() {
    let o = qbundle(&["list"]);
    assert!(o.status.success());
    let s = stdout(&o);
    for name in qbundle::EXAMPLES.iter().chain(&qbundle::suites::SUITES) {
        assert!(s.contains(name), "{name}");
    }
}

#[test]
fn hermitian_suite_passes_on_the_fibration() {
    let o = qbundle(&["verify", "hopf-fibration", "--suite", "hermitian", "--format", "json"]);
    assert_eq!(o.status.code(), Some(0), "{}", stdout(&o));
    let r = SuiteReport::from_json(&stdout(&o)).unwrap();
    assert_eq!((r.example.as_str(), r.suite.as_str(), r.status), ("hopf-fibration", "hermitian", Status::Pass));
    let displays: Vec<_> = r.checks.iter().filter(|c| c.id.starts_with("assoc.fibration-display/")).collect();
    assert_eq!(displays.len(), 3);
    assert!(r.checks.iter().any(|c| c.id == "assoc.compatibility/canonical/w1" && c.status == Status::Pass));
}

#[test]
fn translation_of_the_generator() {
    let o = qbundle(&["compute", "qtrs", "--example", "hopf-fibration", "--arg", "z"]);
    assert!(o.status.success(), "{}", stderr(&o));
    assert_eq!(stdout(&o).trim(), "α*⊗α + γ*⊗γ");
    let o = qbundle(&["compute", "qtrs", "--example", "trivial-u1", "--arg", "ς"]);
    assert_eq!(stdout(&o).trim(), "1⊗ς - ς⊗1");
}

#[test]
fn compute_module_quantities() {
    let base = ["--example", "trivial-u1", "--connection", "potential", "--rep", "w1", "--section", "E12 z"];
    let run = |q: &str, extra: &[&str]| {
        let mut args = vec!["compute", q];
        args.extend(base);
        args.extend(extra);
        let o = qbundle(&args);
        assert!(o.status.success(), "{q}: {}", stderr(&o));
        stdout(&o).trim().to_string()
    };
    assert_eq!(run("herm", &[]), "E11");
    assert_eq!(run("herm", &["--right"]), "1 - E11");
    assert_eq!(run("defect", &[]), "0");
    assert_eq!(run("defect", &["--right", "--with", "E21 z + 2 z"]), "0");
    assert!(!run("nabla", &[]).is_empty());
    let o = qbundle(&["compute", "cov-deriv", "--example", "dunkl-rank1", "--connection", "dunkl", "--arg", "x", "--kappa", "2"]);
    assert_eq!(stdout(&o).trim(), "5 dx");
    let o = qbundle(&["compute", "curvature", "--example", "hopf-fibration"]);
    assert!(o.status.success());
    assert_eq!(stdout(&o).lines().count(), 1);
}

#[test]
fn corrupted_fixture_fails_with_a_witness() {
    let o = qbundle(&["verify", "trivial-u1", "--suite", "all", "--format", "json", "--fixture", &fixture("trivial-u1-corrupted.qb")]);
    assert_eq!(o.status.code(), Some(1));
    let r = SuiteReport::from_json(&stdout(&o)).unwrap();
    let real = r.checks.iter().find(|c| c.id == "connection.real/trivial").unwrap();
    assert_eq!(real.status, Status::Fail);
    assert!(real.witness.as_deref().unwrap().contains("E12 θ21"), "{:?}", real.witness);
    assert!(r.checks.iter().any(|c| c.id == "connection.condition/trivial" && c.status == Status::Pass));
}

#[test]
fn input_errors_exit_with_two() {
    let o = qbundle(&["verify", "no-such-bundle"]);
    assert_eq!(o.status.code(), Some(2));
    assert!(stderr(&o).contains("no-such-bundle"));
    let o = qbundle(&["verify", "trivial-u1", "--suite", "nope"]);
    assert_eq!(o.status.code(), Some(2));
    let o = qbundle(&["compute", "nope", "--example", "trivial-u1"]);
    assert_eq!(o.status.code(), Some(2));
    let o = qbundle(&["compute", "herm", "--example", "trivial-u1", "--rep", "w1"]);
    assert_eq!(o.status.code(), Some(2));
    assert!(stderr(&o).contains("--section"));
    let o = qbundle(&["compute", "herm", "--example", "trivial-u1", "--rep", "w1", "--section", "z z"]);
    assert_eq!(o.status.code(), Some(2), "{}", stdout(&o));
    let dir = tempfile::tempdir().unwrap();
    let bad = dir.path().join("bad.qb");
    std::fs::write(&bad, "[algebra A]\ngenerators = x:0:x\nrules = x x -> (x\n").unwrap();
    let o = qbundle(&["check-presentation", bad.to_str().unwrap()]);
    assert_eq!(o.status.code(), Some(2));
    assert!(stderr(&o).contains("3:"), "{}", stderr(&o));
    let o = qbundle(&["check-presentation", dir.path().join("missing.qb").to_str().unwrap()]);
    assert_eq!(o.status.code(), Some(2));
}

#[test]
fn check_presentation_on_fixtures() {
    let o = qbundle(&["check-presentation", &fixture("matrices.qb")]);
    assert_eq!(o.status.code(), Some(0), "{}", stdout(&o));
    assert!(stdout(&o).contains("presentation.confluence/M2"));
    let dir = tempfile::tempdir().unwrap();
    // a non-confluent rule set is reported, not rejected
    let path = dir.path().join("overlap.qb");
    std::fs::write(&path, "[algebra A]\ngenerators = x:0:x y:0:y\nrules = x y -> x; y x -> y\norder = x y\n").unwrap();
    let o = qbundle(&["check-presentation", path.to_str().unwrap(), "--format", "json"]);
    let r = SuiteReport::from_json(&stdout(&o)).unwrap();
    assert_eq!(r.suite, "presentation");
    assert_eq!(o.status.code(), Some(1));
    let conf = r.checks.iter().find(|c| c.id == "presentation.confluence/A").unwrap();
    assert_eq!(conf.status, Status::Fail);
    assert!(conf.witness.as_deref().unwrap().contains("x y x"));
}

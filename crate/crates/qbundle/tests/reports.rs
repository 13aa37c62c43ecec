use qbundle::report::{SuiteReport, Status};
use qbundle::suites::{self, Runner, CATALOG, SUITES};
use qbundle_core::Scalar;

fn run(name: &str, suite: &str, threads: usize) -> SuiteReport {
    let pool = rayon::ThreadPoolBuilder::new().num_threads(threads).build().unwrap();
    pool.install(|| Runner::new(qbundle::example(name, None).unwrap(), None, None).run(suite).unwrap())
}

fn without_runtime(mut r: SuiteReport) -> SuiteReport {
    r.runtime_ms = 0;
    r
}

#[test]
fn reports_are_independent_of_the_thread_count() {
    for name in ["trivial-u1-point", "dunkl-rank1"] {
        let one = without_runtime(run(name, "all", 1));
        let four = without_runtime(run(name, "all", 4));
        assert_eq!(one.to_json(), four.to_json(), "{name}");
    }
}

#[test]
fn json_round_trip() {
    let r = run("dunkl-rank1", "connection", 2);
    let back = SuiteReport::from_json(&r.to_json()).unwrap();
    assert_eq!(back, r);
    let v: serde_json::Value = serde_json::from_str(&r.to_json()).unwrap();
    let keys: Vec<_> = v.as_object().unwrap().keys().cloned().collect();
    for k in ["schema", "example", "suite", "status", "checks", "engine_version", "runtime_ms"] {
        assert!(keys.contains(&k.to_string()), "{k}");
    }
    let check = &v["checks"][0];
    for k in ["id", "reference", "status", "witness", "budget"] {
        assert!(check.get(k).is_some(), "{k}");
    }
    assert_eq!(check["status"], "pass");
}

#[test]
fn every_check_is_catalogued() {
    let mut keys: Vec<_> = CATALOG.iter().map(|(k, _)| *k).collect();
    keys.sort();
    keys.dedup();
    assert_eq!(keys.len(), CATALOG.len());
    for name in ["trivial-u1-point", "dunkl-rank1"] {
        let r = run(name, "all", 4);
        assert!(r.passed(), "{}", r.to_text());
        for c in &r.checks {
            assert_eq!(Some(c.reference.as_str()), suites::reference(&c.id), "{}", c.id);
        }
        let mut ids: Vec<_> = r.checks.iter().map(|c| &c.id).collect();
        let n = ids.len();
        ids.sort();
        ids.dedup();
        assert_eq!(ids.len(), n, "{name}: duplicate ids");
    }
}

#[test]
fn suites_partition_all() {
    let all = run("trivial-u1-point", "all", 4);
    let mut parts = Vec::new();
    for s in SUITES {
        parts.extend(run("trivial-u1-point", s, 4).checks);
    }
    assert_eq!(all.checks, parts);
    assert!(Runner::new(qbundle::example("trivial-u1-point", None).unwrap(), None, None).run("bogus").is_err());
}

#[test]
fn budget_and_multiplicity_flags_are_honoured() {
    let ex = qbundle::example("dunkl-rank1", Some(&Scalar::int(3))).unwrap();
    let r = Runner::new(ex, Some(3), Some(Scalar::int(3))).run("connection").unwrap();
    assert!(r.passed(), "{}", r.to_text());
    assert!(r.checks.iter().all(|c| c.budget == Some(3)));
    let op: Vec<_> = r.checks.iter().filter(|c| c.id.starts_with("dunkl.operator/")).collect();
    assert_eq!(op.len(), 8);
    // oracle at the wrong multiplicity disagrees
    let ex = qbundle::example("dunkl-rank1", Some(&Scalar::int(3))).unwrap();
    let r = Runner::new(ex, None, Some(Scalar::int(2))).run("connection").unwrap();
    assert!(!r.passed());
    assert!(r.failures().all(|c| c.id.starts_with("dunkl.operator/")));
    let witness = r.failures().next().unwrap().witness.clone().unwrap();
    assert!(witness.contains("oracle"), "{witness}");
}

#[test]
fn negative_claims_carry_witnesses() {
    let r = run("dunkl-rank1", "connection", 4);
    let c = r.checks.iter().find(|c| c.id == "connection.non-regular/dunkl").unwrap();
    assert_eq!(c.status, Status::Pass);
    assert!(c.witness.as_deref().unwrap().starts_with("ℓ("));
}

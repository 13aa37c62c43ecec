use qbundle::format::{self, FormatError};
use qbundle::EXAMPLES;
use qbundle_core::examples;

fn fixture(name: &str) -> String {
    std::fs::read_to_string(format!("{}/../../fixtures/{name}", env!("CARGO_MANIFEST_DIR"))).unwrap()
}

#[test]
fn examples_round_trip_through_text() {
    for name in EXAMPLES {
        let ex = qbundle::example(name, None).unwrap();
        let text = format::write_example(&ex);
        let doc = format::load(&text).unwrap_or_else(|e| panic!("{name}: {e}"));
        assert!(doc.assertions.iter().all(|a| a.failure.is_none()), "{name}: {:?}", doc.assertions);
        let back = doc.example().expect("bundle section");
        assert_eq!(format::write_example(&back), text, "{name}");
        let (b0, b1) = (&ex.bundle, &back.bundle);
        assert_eq!(b1.check_qpb().unwrap(), Vec::<String>::new(), "{name}");
        assert_eq!(b0.alg().rules(), b1.alg().rules(), "{name}");
        for g in 0..b0.alg().num_gens() as u16 {
            assert_eq!(b0.psi_word(&[g]).unwrap(), b1.psi_word(&[g]).unwrap(), "{name}");
        }
        assert_eq!(ex.connections, back.connections, "{name}");
        assert_eq!(ex.gauges, back.gauges, "{name}");
        assert_eq!(b0.reps.len(), b1.reps.len());
    }
}

#[test]
fn matrix_fixture_is_the_builtin_base() {
    let doc = format::load(&fixture("matrices.qb")).unwrap();
    let builtin = examples::matrix_base().unwrap();
    assert_eq!(doc.dgas.len(), 1);
    let loaded = &doc.dgas[0];
    let sorted = |a: &qbundle_core::Algebra| {
        let mut r: Vec<_> = a.rules().iter().map(|r| (r.lhs.clone(), r.rhs.clone())).collect();
        r.sort_by(|x, y| x.0.cmp(&y.0));
        r
    };
    assert_eq!(sorted(&loaded.alg), sorted(&builtin.alg));
    for g in 0..builtin.alg.num_gens() as u16 {
        assert_eq!(loaded.d_gen(g), builtin.d_gen(g));
    }
    for w in builtin.alg.irreducible_words(3) {
        let x = qbundle_core::Elem::single(w.clone(), qbundle_core::Scalar::one());
        for v in builtin.alg.irreducible_words(2) {
            let y = qbundle_core::Elem::single(v, qbundle_core::Scalar::one());
            assert_eq!(loaded.alg.mul(&x, &y).unwrap(), builtin.alg.mul(&x, &y).unwrap());
        }
    }
    assert!(loaded.validate().unwrap().is_empty());
}

#[test]
fn overlays_replace_registered_connections() {
    let ex = qbundle::example("trivial-u1", None).unwrap();
    let patched = format::overlay(&fixture("trivial-u1-corrupted.qb"), &ex).unwrap();
    assert_eq!(patched.connections.len(), ex.connections.len());
    let b = &patched.bundle;
    let w = patched.connection("trivial").unwrap();
    assert_ne!(w, ex.connection("trivial").unwrap());
    assert!(b.check_connection(w).unwrap());
    assert!(!b.is_real(w).unwrap());
    assert!(!format::has_bundle(&fixture("trivial-u1-corrupted.qb")).unwrap());
    assert!(matches!(format::overlay("[algebra A]\n", &ex), Err(FormatError::Syntax { line: 1, .. })));
}

#[test]
fn engine_errors_carry_the_line() {
    let src = "[algebra A]\ngenerators = x:0:x\nrules = x x -> y\n";
    match format::load(src) {
        Err(FormatError::Engine { line, .. }) | Err(FormatError::Syntax { line, .. }) => assert_eq!(line, 3),
        other => panic!("{other:?}"),
    }
}

use qbundle_core::assoc::{Assoc, Side};
use qbundle_core::bundle::{Bundle, Connection};
use qbundle_core::examples::{self, Example, TrivialBase};
use qbundle_core::expr::parse_tensor;
use qbundle_core::gauge::{self, Gauge, Translation};
use qbundle_core::hopf::Character;
use qbundle_core::{Elem, Error, Scalar, Tensor};

fn all() -> Vec<Example> {
    vec![
        examples::trivial_u1(TrivialBase::Matrices).unwrap(),
        examples::hopf_fibration().unwrap(),
        examples::dunkl_rank1(Scalar::q()).unwrap(),
    ]
}

fn empty(v: Vec<String>) {
    assert!(v.is_empty(), "{v:#?}");
}

fn samples(b: &Bundle) -> Vec<Elem> {
    b.alg().irreducible_words(2).into_iter().map(|w| Elem::single(w, Scalar::one())).collect()
}

// tables only reach degree one
fn low_samples(b: &Bundle) -> Vec<Elem> {
    samples(b).into_iter().filter(|x| b.alg().degree(x).is_some_and(|k| k <= 1)).collect()
}

fn words(ex: &Example, f: &Gauge) -> Vec<qbundle_core::Word> {
    f.window(&ex.bundle)
}

#[test]
fn translation_map_properties_on_every_example() {
    for ex in all() {
        let b = &ex.bundle;
        let ws = gauge::spanning_words(&b.env, 3);
        let base = gauge::base_samples(b, 2).unwrap();
        assert!(!base.is_empty());
        let trs: Vec<Translation> = ex.connections.iter().take(2).map(|w| Translation::new(b, w).unwrap()).collect();
        for tr in &trs {
            empty(tr.definition_failures(&ws).unwrap());
            for k in 1..=6 {
                empty(tr.property_failures(k, &ws, &base).unwrap());
            }
        }
        empty(trs[0].independence_failures(&trs[1], &ws).unwrap());
    }
}

fn gaussian_binomial(n: i64, k: i64) -> Scalar {
    // [n k]_t with t = q^-2
    let mut num = Scalar::one();
    let mut den = Scalar::one();
    for i in 0..k {
        num = num * (Scalar::one() - Scalar::q_pow(-2 * (n - i)));
        den = den * (Scalar::one() - Scalar::q_pow(-2 * (i + 1)));
    }
    num.checked_div(&den).unwrap()
}

#[test]
fn gaussian_binomials_satisfy_pascal() {
    for n in 1..=3 {
        assert_eq!(gaussian_binomial(n, 0), Scalar::one());
        assert_eq!(gaussian_binomial(n, n), Scalar::one());
        for k in 1..n {
            let want = gaussian_binomial(n - 1, k - 1) + Scalar::q_pow(-2 * k) * gaussian_binomial(n - 1, k);
            assert_eq!(gaussian_binomial(n, k), want, "n = {n}, k = {k}");
        }
    }
}

#[test]
fn hopf_translation_of_powers_is_a_gaussian_sum() {
    let ex = examples::hopf_fibration().unwrap();
    let b = &ex.bundle;
    let a = b.alg();
    let tr = Translation::new(b, ex.connection("canonical").unwrap()).unwrap();
    let g = b.galg();
    for n in 1..=3i64 {
        let mut oracle = Tensor::zero();
        for k in 0..=n {
            let pw = |s: &str, e: i64| a.pow(&a.g(s).unwrap(), e as usize).unwrap();
            let l = a.mul(&pw("γ*", k), &pw("α*", n - k)).unwrap();
            let r = a.mul(&pw("α", n - k), &pw("γ", k)).unwrap();
            oracle.add_scaled(&qbundle_core::tensor::pure(&[&l, &r]), &gaussian_binomial(n, k));
        }
        let zn = g.pow(&g.g("z").unwrap(), n as usize).unwrap();
        let got = tr.eval(&zn).unwrap();
        assert_eq!(tr.beta(&got).unwrap(), tr.beta(&oracle).unwrap(), "n = {n}");
        assert_eq!(got, oracle, "n = {n}");
    }
}

#[test]
fn translation_displays() {
    let ex = examples::trivial_u1(TrivialBase::Matrices).unwrap();
    let b = &ex.bundle;
    let a = b.alg();
    let g = b.galg();
    let tr = Translation::new(b, ex.connection("trivial").unwrap()).unwrap();
    assert_eq!(tr.eval(&g.g("z").unwrap()).unwrap(), parse_tensor(&[a, a], "z*⊗z").unwrap());
    assert_eq!(tr.eval(&g.g("ς").unwrap()).unwrap(), parse_tensor(&[a, a], "1⊗ς - ς⊗1").unwrap());
    assert_eq!(tr.eval(&g.one()).unwrap(), parse_tensor(&[a, a], "1⊗1").unwrap());
    let ex = examples::dunkl_rank1(Scalar::q()).unwrap();
    let b = &ex.bundle;
    let a = b.alg();
    let g = b.galg();
    let tr = Translation::new(b, ex.connection("canonical").unwrap()).unwrap();
    assert_eq!(tr.eval(&g.g("t").unwrap()).unwrap(), parse_tensor(&[a, a], "s⊗s").unwrap());
    assert_eq!(tr.eval(&g.g("θ").unwrap()).unwrap(), parse_tensor(&[a, a], "1⊗ϑ - ϑ⊗1").unwrap());
    let tw = Translation::new(b, ex.connection("dunkl").unwrap()).unwrap();
    let th = g.g("θ").unwrap();
    assert_ne!(tw.eval(&th).unwrap(), tr.eval(&th).unwrap());
    assert_eq!(tw.beta(&tw.eval(&th).unwrap()).unwrap(), tr.beta(&tr.eval(&th).unwrap()).unwrap());
}

#[test]
fn registered_gauge_transformations_are_valid() {
    for ex in all() {
        assert!(ex.gauges.len() >= 2, "{}", ex.name);
        for f in &ex.gauges {
            empty(f.validate(&ex.bundle).unwrap());
        }
    }
}

#[test]
fn correspondence_round_trips() {
    for ex in all() {
        let b = &ex.bundle;
        let tr = Translation::new(b, &ex.connections[0]).unwrap();
        let xs = low_samples(b);
        for f in &ex.gauges {
            let ws = words(&ex, f);
            let fm = |x: &Elem| f.transform(b, x);
            let fi = |x: &Elem| f.transform_inv(b, x);
            let back = gauge::from_map(&tr, "back", &fm, &fi, &ws, &xs).unwrap();
            for w in &ws {
                let v = Elem::single(w.clone(), Scalar::one());
                assert_eq!(back.eval(b, &v).unwrap(), f.eval(b, &v).unwrap(), "{} on {}", f.name, b.galg().fmt(&v));
                assert_eq!(back.eval_inv(b, &v).unwrap(), f.eval_inv(b, &v).unwrap());
            }
            for x in &xs {
                assert_eq!(back.transform(b, x).unwrap(), f.transform(b, x).unwrap());
                assert_eq!(f.transform_inv(b, &f.transform(b, x).unwrap()).unwrap(), *x);
                assert_eq!(f.transform(b, &f.transform_inv(b, x).unwrap()).unwrap(), *x);
            }
        }
        let id = |x: &Elem| Ok(x.clone());
        let ws = gauge::spanning_words(&b.env, 3);
        let unit = gauge::from_map(&tr, "id", &id, &id, &ws, &xs).unwrap();
        let eps = Gauge::identity(b);
        for w in &ws {
            let v = Elem::single(w.clone(), Scalar::one());
            assert_eq!(unit.eval(b, &v).unwrap(), eps.eval(b, &v).unwrap());
        }
    }
}

#[test]
fn character_maps_are_coaction_contractions() {
    for ex in all() {
        let b = &ex.bundle;
        let h = &b.env.hopf;
        for f in ex.gauges.iter().filter(|f| f.is_character()) {
            let gauge::GaugeKind::Character { chi, inv } = &f.kind else { unreachable!() };
            assert_eq!(*inv, chi.inverse(&b.env.calc.hopf).unwrap());
            for x in samples(b) {
                let mut direct = Elem::zero();
                for (k, c) in b.psi(&x).unwrap().iter() {
                    direct.add_term(k[0].clone(), c * &chi.eval_word(h, &k[1]));
                }
                let direct = b.alg().nf(&direct).unwrap();
                assert_eq!(f.transform(b, &x).unwrap(), direct);
                if b.recognizer_accepts(&x).unwrap() {
                    assert_eq!(direct, x);
                }
            }
        }
    }
}

#[test]
fn group_law_and_action_law() {
    for ex in all() {
        let b = &ex.bundle;
        let xs = low_samples(b);
        for f1 in &ex.gauges {
            for f2 in &ex.gauges {
                let ws = if f1.is_character() { words(&ex, f2) } else { words(&ex, f1) };
                let prod = f1.convolve(f2, b, &ws).unwrap();
                empty(prod.validate(b).unwrap());
                for x in &xs {
                    let two = f2.transform(b, &f1.transform(b, x).unwrap()).unwrap();
                    assert_eq!(prod.transform(b, x).unwrap(), two, "{} then {}", f1.name, f2.name);
                }
                for w in &ex.connections {
                    let lhs = gauge::act(b, &prod, w).unwrap();
                    let rhs = gauge::act(b, f2, &gauge::act(b, f1, w).unwrap()).unwrap();
                    assert_eq!(lhs.table, rhs.table);
                }
            }
        }
    }
}

#[test]
fn characters_compose_into_gauge_products() {
    let ex = examples::trivial_u1(TrivialBase::Matrices).unwrap();
    let b = &ex.bundle;
    let h = &b.env.calc.hopf;
    let i = examples::circle_character(b, "i", Scalar::i()).unwrap();
    let minus = examples::circle_character(b, "-1", Scalar::int(-1)).unwrap();
    let gauge::GaugeKind::Character { chi: ci, .. } = &i.kind else { unreachable!() };
    let gauge::GaugeKind::Character { chi: cm, .. } = &minus.kind else { unreachable!() };
    let ws = gauge::spanning_words(&b.env, 3);
    for (x, y, gx, gy) in [(ci, cm, &i, &minus), (ci, ci, &i, &i), (cm, ci, &minus, &i)] {
        let conv = Gauge::from_character(b, "χ₁χ₂", x.convolve(y, h).unwrap()).unwrap();
        let prod = gx.convolve(gy, b, &ws).unwrap();
        for w in &ws {
            let v = Elem::single(w.clone(), Scalar::one());
            assert_eq!(conv.eval(b, &v).unwrap(), prod.eval(b, &v).unwrap());
        }
    }
    let four = ci.convolve(ci, h).unwrap().convolve(&ci.convolve(ci, h).unwrap(), h).unwrap();
    assert_eq!(four, Character::counit(h));
}

#[test]
fn action_on_connections() {
    for ex in all() {
        let b = &ex.bundle;
        for f in &ex.gauges {
            for w in &ex.connections {
                let fw = gauge::act(b, f, w).unwrap();
                assert!(b.check_connection(&fw).unwrap(), "{}", fw.name);
                empty(gauge::action_formula_failures(b, f, w).unwrap());
                if f.is_character() {
                    // abelian structure groups: characters act trivially
                    assert_eq!(fw.table, w.table);
                }
            }
        }
        let id = Gauge::identity(b);
        for w in &ex.connections {
            assert_eq!(gauge::act(b, &id, w).unwrap().table, w.table);
        }
    }
}

#[test]
fn flip_gauge_potential() {
    let ex = examples::trivial_u1(TrivialBase::Matrices).unwrap();
    let b = &ex.bundle;
    let a = b.alg();
    let f = ex.gauge("flip").unwrap();
    let p = a.parse(examples::FLIP).unwrap();
    let form = a.mul(&a.star(&p).unwrap(), &b.d(&p).unwrap()).unwrap();
    let triv = ex.connection("trivial").unwrap();
    let fw = gauge::act(b, f, triv).unwrap();
    assert_eq!(fw.table[0], &form + &a.g("ς").unwrap());
    assert_eq!(gauge::potential(b, &fw).unwrap(), vec![form.clone()]);
    empty(gauge::potential_failures(b, &fw).unwrap());
    assert_eq!(f.transform(b, &a.g("z").unwrap()).unwrap(), a.mul(&p, &a.g("z").unwrap()).unwrap());
    assert!(matches!(gauge::certify_morphism(b, f), Err(Error::NotDifferentialMorphism(_))));
    assert!(matches!(gauge::curvature_failures(b, f, triv), Err(Error::NotDifferentialMorphism(_))));
    let z5 = b.galg().pow(&b.galg().g("z").unwrap(), 5).unwrap();
    assert!(matches!(f.eval(b, &z5), Err(Error::OutsideTable(_))));
}

#[test]
fn hopf_shift_moves_the_canonical_connection() {
    let ex = examples::hopf_fibration().unwrap();
    let b = &ex.bundle;
    let f = ex.gauge("shift").unwrap();
    let moved = gauge::act(b, f, ex.connection("canonical").unwrap()).unwrap();
    assert_eq!(moved.table, ex.connection("shifted").unwrap().table);
    let back = gauge::act(b, &f.inverse(), &moved).unwrap();
    assert_eq!(back.table, ex.connection("canonical").unwrap().table);
    assert!(matches!(gauge::certify_morphism(b, f), Err(Error::NotDifferentialMorphism(_))));
    assert!(matches!(gauge::potential(b, &moved), Err(Error::NotTrivialBundle(_))));
}

#[test]
fn curvature_covariance_for_characters() {
    for ex in all() {
        let b = &ex.bundle;
        for f in ex.gauges.iter().filter(|f| f.is_character()) {
            gauge::certify_morphism(b, f).unwrap();
            for w in &ex.connections {
                empty(gauge::curvature_failures(b, f, w).unwrap());
                let fw = gauge::act(b, f, w).unwrap();
                assert_eq!(b.is_real(&fw).unwrap(), b.is_real(w).unwrap());
                assert_eq!(b.is_multiplicative(&fw).unwrap(), b.is_multiplicative(w).unwrap());
            }
        }
    }
    let ex = examples::trivial_u1(TrivialBase::Matrices).unwrap();
    let b = &ex.bundle;
    let f = ex.gauge("character-i").unwrap();
    let w = ex.connection("potential").unwrap();
    let r = b.curvature(w, 0).unwrap();
    assert!(!r.is_zero());
    assert_eq!(f.transform(b, &r).unwrap(), r);
    assert_eq!(b.curvature(&gauge::act(b, f, w).unwrap(), 0).unwrap(), r);
}

#[test]
fn section_automorphisms() {
    let ex = examples::trivial_u1(TrivialBase::Matrices).unwrap();
    let b = &ex.bundle;
    let a = b.alg();
    let m = Assoc::new(b, "w1").unwrap();
    let f = ex.gauge("character-i").unwrap();
    let p = a.parse("E11 + 2 E12").unwrap();
    let t = m.section(vec![a.mul(&p, &a.g("z").unwrap()).unwrap()]).unwrap();
    let at = gauge::section_transform(&m, f, &t, Side::Left).unwrap();
    assert_eq!(at.values, vec![t.values[0].scale(&Scalar::i())]);

    let ex = examples::dunkl_rank1(Scalar::q()).unwrap();
    let b = &ex.bundle;
    let m = Assoc::new(b, "sign").unwrap();
    let f = ex.gauge("character-sign").unwrap();
    let t = m.left_generator(0);
    let at = gauge::section_transform(&m, f, &t, Side::Left).unwrap();
    assert_eq!(at.values, vec![-&t.values[0]]);
    assert_eq!(m.herm_l(&at, &at).unwrap(), m.herm_l(&t, &t).unwrap());
    assert_eq!(m.herm_r(&at, &at).unwrap(), m.herm_r(&t, &t).unwrap());
}

fn rep_names(ex: &Example) -> Vec<String> {
    ex.bundle.reps.iter().map(|r| r.name().to_string()).filter(|n| n != "w3" && n != "w-3").collect()
}

#[test]
fn adjoint_identity_for_every_gauge() {
    for ex in all() {
        let b = &ex.bundle;
        let a = b.alg();
        let base = gauge::base_samples(b, 2).unwrap();
        let base0: Vec<&Elem> = base.iter().filter(|e| a.degree(e) == Some(0)).take(3).collect();
        for rep in rep_names(&ex) {
            let m = Assoc::new(b, &rep).unwrap();
            let mut secs = Vec::new();
            for k in 0..m.rep.d() {
                let t = m.left_generator(k);
                for c in &base0 {
                    secs.push(m.section(t.values.iter().map(|v| a.mul(c, v).unwrap()).collect()).unwrap());
                }
                secs.push(t);
            }
            for f in &ex.gauges {
                for s in &secs {
                    for t in secs.iter().take(3) {
                        for side in [Side::Left, Side::Right] {
                            assert!(
                                gauge::adjoint_defect(&m, f, s, t, side).unwrap().is_zero(),
                                "{} {rep} {side:?} {}",
                                ex.name,
                                f.name
                            );
                        }
                    }
                }
            }
        }
    }
}

#[test]
fn sections_intertwine_connections() {
    for ex in all() {
        let b = &ex.bundle;
        let a = b.alg();
        let base = gauge::base_samples(b, 2).unwrap();
        for rep in rep_names(&ex) {
            let m = Assoc::new(b, &rep).unwrap();
            let d = m.rep.d();
            let mut coords = Vec::new();
            for mu in base.iter().take(4) {
                let mut v = vec![Elem::zero(); d];
                v[0] = mu.clone();
                v[d - 1] = &v[d - 1] + &a.one();
                coords.push(v);
            }
            for f in &ex.gauges {
                if f.is_character() {
                    for w in &ex.connections {
                        empty(gauge::intertwining_failures(&m, f, w).unwrap());
                    }
                    empty(gauge::sigma_interchange_failures(&m, f, &coords).unwrap());
                } else {
                    let w = &ex.connections[0];
                    assert!(matches!(gauge::intertwining_failures(&m, f, w), Err(Error::NotDifferentialMorphism(_))));
                    assert!(matches!(
                        gauge::sigma_interchange_failures(&m, f, &coords),
                        Err(Error::NotDifferentialMorphism(_))
                    ));
                }
            }
        }
    }
}

#[test]
fn non_central_characters_and_non_covariant_maps_are_rejected() {
    let h = examples::suq2_hopf().unwrap();
    let mut v = vec![Scalar::zero(); h.alg.num_gens()];
    v[h.alg.gen("α").unwrap() as usize] = Scalar::i();
    v[h.alg.gen("α*").unwrap() as usize] = -Scalar::i();
    let chi = Character(v);
    assert!(chi.respects_relations(&h));
    assert!(matches!(gauge::check_character_centrality(&h, "χ", &chi), Err(Error::CentralityViolated(_))));

    let ex = examples::trivial_u1(TrivialBase::Matrices).unwrap();
    let b = &ex.bundle;
    let a = b.alg();
    let tr = Translation::new(b, ex.connection("trivial").unwrap()).unwrap();
    let z = a.g("z").unwrap();
    let bad = |x: &Elem| a.mul(x, &z);
    let ws = gauge::spanning_words(&b.env, 2);
    assert!(matches!(gauge::from_map(&tr, "bad", &bad, &bad, &ws, &samples(b)), Err(Error::NotCovariant(_))));
    let not_a_connection = Connection::new("2ς", vec![a.g("ς").unwrap().scale(&Scalar::int(2))]);
    assert!(matches!(Translation::new(b, &not_a_connection), Err(Error::NotAConnection(_))));
}

#[test]
fn trivial_bundle_potentials() {
    let ex = examples::trivial_u1(TrivialBase::Matrices).unwrap();
    let b = &ex.bundle;
    let a = b.alg();
    let triv = ex.connection("trivial").unwrap();
    assert_eq!(gauge::potential(b, triv).unwrap(), vec![Elem::zero()]);
    assert_eq!(gauge::field_strength(b, &[Elem::zero()]).unwrap(), vec![Elem::zero()]);
    let w = ex.connection("potential").unwrap();
    let mu = a.parse(examples::LINE_POTENTIAL).unwrap();
    let pot = gauge::potential(b, w).unwrap();
    assert_eq!(pot, vec![mu.clone()]);
    let want = &b.d(&mu).unwrap() - &a.mul(&mu, &mu).unwrap();
    assert_eq!(gauge::field_strength(b, &pot).unwrap(), vec![want]);
    for c in &ex.connections {
        empty(gauge::potential_failures(b, c).unwrap());
    }
    let pt = examples::trivial_u1(TrivialBase::Point).unwrap();
    assert_eq!(gauge::potential(&pt.bundle, pt.connection("trivial").unwrap()).unwrap(), vec![Elem::zero()]);
    let dk = examples::dunkl_rank1(Scalar::q()).unwrap();
    assert!(matches!(gauge::potential(&dk.bundle, &dk.connections[0]), Err(Error::NotTrivialBundle(_))));
}

use std::sync::{Arc, OnceLock};

use proptest::prelude::*;
use qbundle_core::examples::{self, TrivialBase};
use qbundle_core::hopf::Hopf;
use qbundle_core::ncalg::{check_local_confluence, Algebra};
use qbundle_core::{tensor, Elem, Scalar, Tensor};

fn algebras() -> &'static Vec<Arc<Algebra>> {
    static ALGS: OnceLock<Vec<Arc<Algebra>>> = OnceLock::new();
    ALGS.get_or_init(|| {
        let mut v = vec![
            Arc::new(examples::circle_algebra().unwrap()),
            examples::suq2_hopf().unwrap().alg,
            examples::z2_hopf().unwrap().alg,
            examples::matrix_base().unwrap().alg.clone(),
        ];
        for ex in [
            examples::trivial_u1(TrivialBase::Matrices).unwrap(),
            examples::hopf_fibration().unwrap(),
            examples::dunkl_rank1(Scalar::q()).unwrap(),
        ] {
            v.push(ex.bundle.alg().clone());
            v.push(ex.bundle.galg().clone());
        }
        v
    })
}

fn groups() -> &'static Vec<Hopf> {
    static GROUPS: OnceLock<Vec<Hopf>> = OnceLock::new();
    GROUPS.get_or_init(|| vec![examples::circle_hopf().unwrap(), examples::suq2_hopf().unwrap(), examples::z2_hopf().unwrap()])
}

#[test]
fn every_presentation_is_locally_confluent() {
    for a in algebras() {
        let rep = check_local_confluence(a, 6).unwrap();
        assert!(rep.is_confluent(), "{}: {} unresolved", a.name(), rep.unresolved.len());
    }
    let pt = examples::point_base().unwrap();
    assert!(check_local_confluence(&pt.alg, 6).unwrap().is_confluent());
}

#[test]
fn every_presentation_is_star_consistent() {
    for a in algebras() {
        assert!(a.check_star_relations().unwrap().is_empty(), "{}", a.name());
    }
}

type Seed = Vec<(Vec<u16>, i64, i64)>;

fn seed(max_len: usize) -> impl Strategy<Value = Seed> {
    prop::collection::vec((prop::collection::vec(any::<u16>(), 0..=max_len), -3i64..4, -2i64..3), 1..4)
}

// raw, unreduced linear combination of words
fn raw(a: &Algebra, s: &Seed) -> Elem {
    let n = a.num_gens() as u16;
    let mut e = Elem::zero();
    for (w, c, k) in s {
        let w = w.iter().map(|g| g % n).collect();
        e.add_term(w, Scalar::int(*c) * Scalar::q_pow(*k));
    }
    e
}

fn concat(a: &Elem, b: &Elem) -> Elem {
    let mut out = Elem::zero();
    for (wa, ca) in a.iter() {
        for (wb, cb) in b.iter() {
            let mut w = wa.clone();
            w.extend_from_slice(wb);
            out.add_term(w, ca * cb);
        }
    }
    out
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(1000))]

    #[test]
    fn normal_forms_are_canonical(x in seed(4), y in seed(3), u in seed(2), v in seed(2), r in any::<usize>()) {
        for a in algebras() {
            let (x, y, u, v) = (raw(a, &x), raw(a, &y), raw(a, &u), raw(a, &v));
            let nx = a.nf(&x).unwrap();
            prop_assert_eq!(a.nf(&nx).unwrap(), nx.clone());
            let ny = a.nf(&y).unwrap();
            let rules = a.rules();
            let rule = &rules[r % rules.len()];
            let lhs = Elem::single(rule.lhs.clone(), Scalar::one());
            // x' = x + u (lhs - rhs) v represents the same element
            let x2 = &x + &concat(&concat(&u, &(&lhs - &rule.rhs)), &v);
            prop_assert_eq!(a.nf(&x2).unwrap(), nx.clone());
            let prod = a.nf(&concat(&x, &y)).unwrap();
            prop_assert_eq!(a.nf(&concat(&x2, &y)).unwrap(), prod.clone());
            prop_assert_eq!(a.nf(&concat(&y, &x2)).unwrap(), a.nf(&concat(&y, &x)).unwrap());
            prop_assert_eq!(a.mul(&nx, &ny).unwrap(), prod);
            prop_assert_eq!(a.star(&a.star(&x).unwrap()).unwrap(), nx);
            prop_assert_eq!(a.star(&x2).unwrap(), a.star(&x).unwrap());
        }
    }
}

fn coassoc(h: &Hopf, x: &Elem) -> (Tensor, Tensor) {
    let phi = h.coproduct(x).unwrap();
    let mut l3 = Tensor::zero();
    let mut r3 = Tensor::zero();
    for (ks, c) in phi.iter() {
        for (k1, d) in h.coproduct_word(&ks[0]).unwrap().iter() {
            l3.add_term(vec![k1[0].clone(), k1[1].clone(), ks[1].clone()], c * d);
        }
        for (k2, d) in h.coproduct_word(&ks[1]).unwrap().iter() {
            r3.add_term(vec![ks[0].clone(), k2[0].clone(), k2[1].clone()], c * d);
        }
    }
    let a = &*h.alg;
    (tensor::nf(&[a, a, a], &l3).unwrap(), tensor::nf(&[a, a, a], &r3).unwrap())
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(200))]

    #[test]
    fn hopf_laws_on_random_elements(x in seed(4), y in seed(2)) {
        for h in groups() {
            let a = &*h.alg;
            let (x, y) = (a.nf(&raw(a, &x)).unwrap(), a.nf(&raw(a, &y)).unwrap());
            let phi = h.coproduct(&x).unwrap();
            let (l, r) = coassoc(h, &x);
            prop_assert_eq!(l, r);
            let mut left = Elem::zero();
            let mut right = Elem::zero();
            let mut s1 = Elem::zero();
            let mut s2 = Elem::zero();
            for (ks, c) in phi.iter() {
                let (k0, k1) = (Elem::single(ks[0].clone(), Scalar::one()), Elem::single(ks[1].clone(), Scalar::one()));
                left.add_scaled(&k1, &(c * &h.counit_word(&ks[0])));
                right.add_scaled(&k0, &(c * &h.counit_word(&ks[1])));
                s1.add_scaled(&a.mul(&h.antipode(&k0).unwrap(), &k1).unwrap(), c);
                s2.add_scaled(&a.mul(&k0, &h.antipode(&k1).unwrap()).unwrap(), c);
            }
            prop_assert_eq!(&left, &x);
            prop_assert_eq!(&right, &x);
            let eps = a.scalar(h.counit(&x));
            prop_assert_eq!(&s1, &eps);
            prop_assert_eq!(&s2, &eps);
            let xy = a.mul(&x, &y).unwrap();
            let prod = tensor::mul(&[a, a], &phi, &h.coproduct(&y).unwrap()).unwrap();
            prop_assert_eq!(h.coproduct(&xy).unwrap(), prod);
            prop_assert_eq!(h.counit(&xy), h.counit(&x) * h.counit(&y));
            prop_assert_eq!(h.antipode(&xy).unwrap(), a.mul(&h.antipode(&y).unwrap(), &h.antipode(&x).unwrap()).unwrap());
        }
    }
}

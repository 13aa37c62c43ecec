//! Graded tensor products of presented algebras.

use alloc::string::String;
use alloc::vec;
use alloc::vec::Vec;

use crate::error::{Error, Result};
use crate::lincomb::LinComb;
use crate::ncalg::{fmt_terms, Algebra, Elem, Word};
use crate::scalars::Scalar;

/// Sum of tensor monomials, one normal word per slot.
pub type Tensor = LinComb<Vec<Word>>;

fn check_arity(algs: &[&Algebra], t: &Tensor) -> Result<()> {
    match t.keys().find(|k| k.len() != algs.len()) {
        Some(k) => Err(Error::DimensionMismatch(alloc::format!(
            "tensor with {} slots used with {} factors",
            k.len(),
            algs.len()
        ))),
        None => Ok(()),
    }
}

/// `e_1 ⊗ ... ⊗ e_n` for normal-form elements.
pub fn pure(slots: &[&Elem]) -> Tensor {
    let mut acc: Tensor = Tensor::single(Vec::new(), Scalar::one());
    for e in slots {
        let mut next = Tensor::zero();
        for (ks, c) in acc.iter() {
            for (w, d) in e.iter() {
                let mut k = ks.clone();
                k.push(w.clone());
                next.add_term(k, c * d);
            }
        }
        acc = next;
    }
    acc
}

/// Slot-wise normal form.
pub fn nf(algs: &[&Algebra], t: &Tensor) -> Result<Tensor> {
    check_arity(algs, t)?;
    let mut out = Tensor::zero();
    for (ks, c) in t.iter() {
        let parts = ks
            .iter()
            .zip(algs)
            .map(|(w, a)| a.nf(&Elem::single(w.clone(), Scalar::one())))
            .collect::<Result<Vec<_>>>()?;
        let refs: Vec<&Elem> = parts.iter().collect();
        out.add_scaled(&pure(&refs), c);
    }
    Ok(out)
}

/// Koszul sign of `(a_1⊗..⊗a_n)(b_1⊗..⊗b_n)`: each `b_j` passes `a_i` for `i > j`.
fn product_sign(algs: &[&Algebra], a: &[Word], b: &[Word]) -> Scalar {
    let da: Vec<usize> = a.iter().zip(algs).map(|(w, al)| al.word_degree(w)).collect();
    let mut acc = 0;
    for (j, (wb, al)) in b.iter().zip(algs).enumerate() {
        let db = al.word_degree(wb);
        acc += db * da[j + 1..].iter().sum::<usize>();
    }
    Scalar::sign(acc)
}

pub fn mul(algs: &[&Algebra], a: &Tensor, b: &Tensor) -> Result<Tensor> {
    check_arity(algs, a)?;
    check_arity(algs, b)?;
    let mut raw = Tensor::zero();
    for (ka, ca) in a.iter() {
        for (kb, cb) in b.iter() {
            let s = product_sign(algs, ka, kb);
            let k = ka.iter().zip(kb).map(|(x, y)| {
                let mut w = x.clone();
                w.extend_from_slice(y);
                w
            });
            raw.add_term(k.collect(), &(ca * cb) * &s);
        }
    }
    nf(algs, &raw)
}

/// Graded star `(a_1⊗..⊗a_n)* = (-1)^{sum_{i<j}|a_i||a_j|} a_1*⊗..⊗a_n*`.
pub fn star(algs: &[&Algebra], t: &Tensor) -> Result<Tensor> {
    check_arity(algs, t)?;
    let mut out = Tensor::zero();
    for (ks, c) in t.iter() {
        let mut acc = 0;
        let mut seen = 0;
        let mut parts = Vec::new();
        for (w, a) in ks.iter().zip(algs) {
            let d = a.word_degree(w);
            acc += seen * d;
            seen += d;
            parts.push(a.star(&Elem::single(w.clone(), Scalar::one()))?);
        }
        let refs: Vec<&Elem> = parts.iter().collect();
        out.add_scaled(&pure(&refs), &(c.conj() * Scalar::sign(acc)));
    }
    Ok(out)
}

/// Total degree of a tensor monomial.
pub fn key_degree(algs: &[&Algebra], k: &[Word]) -> usize {
    k.iter().zip(algs).map(|(w, a)| a.word_degree(w)).sum()
}

/// Apply a linear map to one slot, keeping graded signs out (caller handles them).
pub fn map_slot(
    t: &Tensor,
    slot: usize,
    mut f: impl FnMut(&Word) -> Result<Elem>,
) -> Result<Tensor> {
    let mut out = Tensor::zero();
    for (ks, c) in t.iter() {
        for (w, d) in f(&ks[slot])?.iter() {
            let mut k = ks.clone();
            k[slot] = w.clone();
            out.add_term(k, c * d);
        }
    }
    Ok(out)
}

/// Multiply slots `i` and `i+1` (no sign: adjacent factors keep their order).
pub fn contract(alg: &Algebra, t: &Tensor, i: usize) -> Result<Tensor> {
    let mut raw = Tensor::zero();
    for (ks, c) in t.iter() {
        let mut k: Vec<Word> = Vec::with_capacity(ks.len() - 1);
        k.extend_from_slice(&ks[..i]);
        let mut w = ks[i].clone();
        w.extend_from_slice(&ks[i + 1]);
        k.push(w);
        k.extend_from_slice(&ks[i + 2..]);
        raw.add_term(k, c.clone());
    }
    let mut out = Tensor::zero();
    for (ks, c) in raw.iter() {
        let e = alg.nf(&Elem::single(ks[i].clone(), Scalar::one()))?;
        for (w, d) in e.iter() {
            let mut k = ks.clone();
            k[i] = w.clone();
            out.add_term(k, c * d);
        }
    }
    Ok(out)
}

/// Full multiplication of a two-slot tensor in one algebra.
pub fn multiply_out(alg: &Algebra, t: &Tensor) -> Result<Elem> {
    let mut raw = Elem::zero();
    for (ks, c) in t.iter() {
        let mut w = Word::new();
        for k in ks {
            w.extend_from_slice(k);
        }
        raw.add_term(w, c.clone());
    }
    alg.nf(&raw)
}

/// Embed `e` as `1⊗..⊗e⊗..⊗1` in an `n`-slot tensor.
pub fn embed(e: &Elem, slot: usize, n: usize) -> Tensor {
    let mut out = Tensor::zero();
    for (w, c) in e.iter() {
        let mut k = vec![Word::new(); n];
        k[slot] = w.clone();
        out.add_term(k, c.clone());
    }
    out
}

pub fn fmt(algs: &[&Algebra], t: &Tensor) -> String {
    fmt_terms(t.iter().map(|(ks, c)| {
        let parts: Vec<String> = ks
            .iter()
            .zip(algs)
            .map(|(w, a)| {
                let s = a.word_str(w);
                if w.len() > 1 {
                    alloc::format!("({s})")
                } else {
                    s
                }
            })
            .collect();
        (c, parts.join("⊗"), false)
    }))
}

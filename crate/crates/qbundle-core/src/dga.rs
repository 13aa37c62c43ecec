//! Graded differential *-algebras: a presented algebra plus `d` on generators.

use alloc::format;
use alloc::string::String;
use alloc::sync::Arc;
use alloc::vec::Vec;

use crate::error::{Error, Result};
use crate::ncalg::{Algebra, Elem, Gen};
use crate::scalars::Scalar;

#[derive(Debug, Clone)]
pub struct DgAlgebra {
    pub alg: Arc<Algebra>,
    d: Vec<Elem>,
}

impl DgAlgebra {
    /// `d_table[g]` is `d` of generator `g`, in normal form.
    pub fn new(alg: Arc<Algebra>, d_table: Vec<Elem>) -> Result<Self> {
        if d_table.len() != alg.num_gens() {
            return Err(Error::DimensionMismatch("differential table".into()));
        }
        let mut d = Vec::new();
        for (g, e) in d_table.iter().enumerate() {
            let e = alg.nf(e)?;
            let want = alg.gen_info(g as Gen).degree as usize + 1;
            if let Some(k) = alg.degree(&e) {
                if k != want {
                    return Err(Error::DegreeMismatch(format!("d{} has degree {k}", alg.gen_info(g as Gen).name)));
                }
            }
            d.push(e);
        }
        Ok(DgAlgebra { alg, d })
    }

    pub fn d_gen(&self, g: Gen) -> &Elem {
        &self.d[g as usize]
    }

    /// Graded Leibniz extension of the generator table.
    pub fn d(&self, e: &Elem) -> Result<Elem> {
        let mut raw = Elem::zero();
        for (w, c) in e.iter() {
            let mut deg = 0usize;
            for (i, &g) in w.iter().enumerate() {
                let s = c * &Scalar::sign(deg);
                for (dw, dc) in self.d[g as usize].iter() {
                    let mut nw = Vec::with_capacity(w.len() + dw.len());
                    nw.extend_from_slice(&w[..i]);
                    nw.extend_from_slice(dw);
                    nw.extend_from_slice(&w[i + 1..]);
                    raw.add_term(nw, &s * dc);
                }
                deg += self.alg.gen_info(g).degree as usize;
            }
        }
        self.alg.nf(&raw)
    }

    /// Consistency report: `d` respects every relation, `d² = 0` and
    /// `d∘* = *∘d` on generators. Returns the failing items.
    pub fn validate(&self) -> Result<Vec<String>> {
        let a = &self.alg;
        let mut bad = Vec::new();
        for r in a.rules() {
            let l = self.d(&Elem::single(r.lhs.clone(), Scalar::one()))?;
            let rr = self.d(&r.rhs)?;
            if l != rr {
                bad.push(format!("d does not respect {} -> {}", a.word_str(&r.lhs), a.fmt(&r.rhs)));
            }
        }
        for g in 0..a.num_gens() as Gen {
            let x = a.gen_elem(g);
            let name = &a.gen_info(g).name;
            if !self.d(&self.d(&x)?)?.is_zero() {
                bad.push(format!("d² {name} ≠ 0"));
            }
            if self.d(&a.star(&x)?)? != a.star(&self.d(&x)?)? {
                bad.push(format!("d({name}*) ≠ (d{name})*"));
            }
        }
        Ok(bad)
    }
}

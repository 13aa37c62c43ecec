//! Bicovariant first-order calculi on a structure quantum group and the
//! low-degree universal envelope built from them.

use alloc::format;
use alloc::string::{String, ToString};
use alloc::sync::Arc;
use alloc::vec;
use alloc::vec::Vec;

use crate::dga::DgAlgebra;
use crate::error::{Error, Result};
use crate::hopf::Hopf;
use crate::linalg::Echelon;
use crate::lincomb::LinComb;
use crate::ncalg::{Algebra, Elem, Gen, GenSpec, Presentation, RuleSpec, Word};
use crate::scalars::Scalar;
use crate::tensor::{self, Tensor};

/// Element of the invariant space, in the registered basis.
pub type Inv = LinComb<usize>;
/// Element of `invΓ ⊗ invΓ`.
pub type Inv2 = LinComb<(usize, usize)>;

pub const DEFAULT_WORD_BOUND: usize = 6;

/// Registration data for a calculus.
#[derive(Debug, Clone)]
pub struct CalculusSpec {
    pub name: String,
    /// Generators of the right ideal `ℛ ⊆ Ker ε`.
    pub ideal: Vec<Elem>,
    /// Basis names with a preimage `h_i` such that `θ_i = π(h_i)`.
    pub basis: Vec<(String, Elem)>,
    /// Embedded differential; `None` uses `θ ↦ -π(h⁽¹⁾)⊗π(h⁽²⁾)`.
    pub delta: Option<Vec<Inv2>>,
    pub word_bound: usize,
}

// Echelon keys order words by length first so bounded subspaces are read off pivots.
type Key = (usize, Word);

fn keyed(e: &Elem) -> LinComb<Key> {
    e.iter().map(|(w, c)| ((w.len(), w.clone()), c.clone())).collect()
}

#[derive(Debug, Clone)]
pub struct Calculus {
    pub hopf: Arc<Hopf>,
    name: String,
    names: Vec<String>,
    preimages: Vec<Elem>,
    ideal: Vec<Elem>,
    ideal_rows: Vec<Elem>,
    space: Echelon<Key>,
    basis_ids: Vec<usize>,
    bound: usize,
    ad: Vec<Vec<Elem>>,
    star: Vec<(Scalar, usize)>,
    delta: Vec<Inv2>,
    wedge: Echelon<(usize, usize)>,
}

impl Calculus {
    pub fn new(hopf: Arc<Hopf>, spec: CalculusSpec) -> Result<Self> {
        let galg = hopf.alg.clone();
        let g = &*galg;
        let bound = spec.word_bound;
        let mut space = Echelon::new();
        let mut inserted = 0usize;
        let mut ideal_rows = Vec::new();
        let words = g.irreducible_words(bound);
        for r in &spec.ideal {
            let r = g.nf(r)?;
            if !hopf.counit(&r).is_zero() {
                return Err(Error::DimensionMismatch(format!("ideal generator {} is not in Ker ε", g.fmt(&r))));
            }
            for w in &words {
                let row = g.mul(&r, &Elem::single(w.clone(), Scalar::one()))?;
                space.insert(&keyed(&row));
                inserted += 1;
                ideal_rows.push(row);
            }
        }
        let mut basis_ids = Vec::new();
        let mut preimages = Vec::new();
        for (name, h) in &spec.basis {
            let h = g.nf(h)?;
            let v = &h - &g.scalar(hopf.counit(&h));
            if !space.insert(&keyed(&v)) {
                return Err(Error::DimensionMismatch(format!("preimage of {name} lies in ℛ ⊕ ℂ𝟙")));
            }
            basis_ids.push(inserted);
            inserted += 1;
            preimages.push(h);
        }
        let mut c = Calculus {
            hopf,
            name: spec.name,
            names: spec.basis.iter().map(|(n, _)| n.clone()).collect(),
            preimages,
            ideal: spec.ideal,
            ideal_rows,
            space,
            basis_ids,
            bound,
            ad: Vec::new(),
            star: Vec::new(),
            delta: Vec::new(),
            wedge: Echelon::new(),
        };
        for i in 0..c.dim() {
            let ad = c.ad_from_preimage(&c.preimages[i].clone())?;
            c.ad.push(ad);
        }
        for i in 0..c.dim() {
            let h = c.preimages[i].clone();
            let ks = g.star(&c.hopf.antipode(&h)?)?;
            let s = -&c.germs(&ks)?;
            if s.len() != 1 {
                return Err(Error::StarMismatch { generator: c.names[i].clone() });
            }
            let (j, k) = s.iter().next().map(|(j, k)| (*j, k.clone())).expect("one term");
            c.star.push((k, j));
        }
        // S^∧ from the ideal rows whose coproduct stays inside the table
        let mut wedge = Echelon::new();
        for r in c.ideal.clone().iter() {
            for w in g.irreducible_words(2) {
                let row = g.mul(r, &Elem::single(w, Scalar::one()))?;
                wedge.insert(&c.germs2(&c.hopf.coproduct(&row)?)?);
            }
        }
        c.wedge = wedge;
        c.delta = match spec.delta {
            Some(d) if d.len() == c.dim() => d,
            Some(_) => return Err(Error::DimensionMismatch("δ table".into())),
            None => (0..c.dim())
                .map(|i| Ok(-&c.germs2(&c.hopf.coproduct(&c.preimages[i])?)?))
                .collect::<Result<_>>()?,
        };
        Ok(c)
    }

    pub fn name(&self) -> &str {
        &self.name
    }
    pub fn dim(&self) -> usize {
        self.names.len()
    }
    pub fn basis_names(&self) -> &[String] {
        &self.names
    }
    pub fn preimage(&self, i: usize) -> &Elem {
        &self.preimages[i]
    }
    pub fn ideal(&self) -> &[Elem] {
        &self.ideal
    }
    pub fn word_bound(&self) -> usize {
        self.bound
    }

    /// `π(g)`: reduction of `g - ε(g)𝟙` modulo `ℛ` into the basis.
    pub fn germs(&self, e: &Elem) -> Result<Inv> {
        let g = &*self.hopf.alg;
        let v = g.nf(e)?;
        let v = &v - &g.scalar(self.hopf.counit(&v));
        let (rem, tags) = self.space.reduce(&keyed(&v));
        if !rem.is_zero() {
            return Err(Error::OutsideTable(format!("π of {} beyond word bound {}", g.fmt(e), self.bound)));
        }
        let mut out = Inv::zero();
        for (i, id) in self.basis_ids.iter().enumerate() {
            out.add_term(i, tags.coeff(id));
        }
        Ok(out)
    }

    /// `(π⊗π)` on a tensor over `G⊗G`.
    pub fn germs2(&self, t: &Tensor) -> Result<Inv2> {
        let mut out = Inv2::zero();
        for (ks, c) in t.iter() {
            let a = self.germs(&Elem::single(ks[0].clone(), Scalar::one()))?;
            let b = self.germs(&Elem::single(ks[1].clone(), Scalar::one()))?;
            for (i, x) in a.iter() {
                for (j, y) in b.iter() {
                    out.add_term((*i, *j), &(c * x) * y);
                }
            }
        }
        Ok(out)
    }

    /// `θ ∘ g = π(hg) - ε(h)π(g)` for `θ = π(h)`.
    pub fn circ(&self, theta: &Inv, e: &Elem) -> Result<Inv> {
        let g = &*self.hopf.alg;
        let mut out = Inv::zero();
        for (i, c) in theta.iter() {
            let h = &self.preimages[*i];
            let hg = g.mul(h, e)?;
            let mut v = self.germs(&hg)?;
            v.add_scaled(&self.germs(e)?, &-&self.hopf.counit(h));
            out.add_scaled(&v, c);
        }
        Ok(out)
    }

    fn ad_from_preimage(&self, h: &Elem) -> Result<Vec<Elem>> {
        let g = &*self.hopf.alg;
        let mut out = vec![Elem::zero(); self.dim()];
        for (w, c) in self.big_adjoint(h)?.iter() {
            let right = Elem::single(w[1].clone(), Scalar::one());
            for (j, d) in self.germs(&Elem::single(w[0].clone(), Scalar::one()))?.iter() {
                out[*j].add_scaled(&right, &(c * d));
            }
        }
        for o in out.iter_mut() {
            *o = g.nf(o)?;
        }
        Ok(out)
    }

    /// `Ad(g) = g⁽²⁾ ⊗ κ(g⁽¹⁾)g⁽³⁾` on `G`.
    pub fn big_adjoint(&self, e: &Elem) -> Result<Tensor> {
        let g = &*self.hopf.alg;
        let mut out = Tensor::zero();
        for (ks, c) in self.hopf.coproduct(e)?.iter() {
            let k = self.hopf.antipode_word(&ks[0])?;
            for (ls, d) in self.hopf.coproduct_word(&ks[1])?.iter() {
                let right = g.mul(&k, &Elem::single(ls[1].clone(), Scalar::one()))?;
                let left = Elem::single(ls[0].clone(), Scalar::one());
                out.add_scaled(&tensor::pure(&[&left, &right]), &(c * d));
            }
        }
        Ok(out)
    }

    /// `ad(θ_i) = Σ_j θ_j ⊗ ad_ij`.
    pub fn ad(&self, i: usize) -> &[Elem] {
        &self.ad[i]
    }

    /// `θ_i* = c θ_j` as `(c, j)`.
    pub fn star(&self, i: usize) -> (Scalar, usize) {
        self.star[i].clone()
    }

    pub fn star_inv(&self, v: &Inv) -> Inv {
        let mut out = Inv::zero();
        for (i, c) in v.iter() {
            let (k, j) = &self.star[*i];
            out.add_term(*j, c.conj() * k);
        }
        out
    }

    pub fn delta(&self, i: usize) -> &Inv2 {
        &self.delta[i]
    }

    pub fn wedge_relations(&self) -> &Echelon<(usize, usize)> {
        &self.wedge
    }

    /// Internal consistency report: germs kernel by dimension count, ad
    /// compatibility, star compatibility and the δ conditions.
    pub fn validate(&self) -> Result<Vec<String>> {
        let g = &*self.hopf.alg;
        let mut bad = Vec::new();
        for r in &self.ideal_rows {
            if r.keys().all(|w| w.len() <= 4) && !self.germs(r)?.is_zero() {
                bad.push(format!("π({}) ≠ 0 on ℛ", g.fmt(r)));
            }
        }
        // dim Ker π ∩ Ker ε≤4 = dim ℛ ∩ span(words ≤ 4)
        let words4 = g.irreducible_words(4);
        let mut img = Echelon::new();
        let mut rank = 0usize;
        let mut dim_ker_eps = 0usize;
        for w in &words4 {
            if w.is_empty() {
                continue;
            }
            dim_ker_eps += 1;
            if img.insert(&self.germs(&Elem::single(w.clone(), Scalar::one()))?) {
                rank += 1;
            }
        }
        let mut ideal_span = Echelon::new();
        for r in &self.ideal_rows {
            ideal_span.insert(&keyed(r));
        }
        let ideal_low = ideal_span.rows().filter(|(k, _)| k.0 <= 4).count();
        if dim_ker_eps - rank != ideal_low {
            bad.push(format!(
                "Ker π has dimension {} on Ker ε up to length 4, ℛ has {}",
                dim_ker_eps - rank,
                ideal_low
            ));
        }
        if rank != self.dim() {
            bad.push(format!("π is not onto the {}-dimensional basis", self.dim()));
        }
        // ad∘π = (π⊗id)∘Ad on short words
        for w in g.irreducible_words(2) {
            let e = Elem::single(w, Scalar::one());
            let lhs = self.ad_of(&self.germs(&e)?)?;
            let rhs = self.ad_from_preimage(&(&e - &g.scalar(self.hopf.counit(&e))))?;
            if lhs != rhs {
                bad.push(format!("ad∘π ≠ (π⊗id)Ad on {}", g.fmt(&e)));
            }
        }
        for x in 0..g.num_gens() as Gen {
            let e = g.gen_elem(x);
            let lhs = self.star_inv(&self.germs(&e)?);
            let rhs = -&self.germs(&g.star(&self.hopf.antipode(&e)?)?)?;
            if lhs != rhs {
                bad.push(format!("π(g)* ≠ -π(κ(g)*) on {}", g.gen_info(x).name));
            }
            let ks = g.star(&self.hopf.antipode(&e)?)?;
            for i in 0..self.dim() {
                let th = Inv::single(i, Scalar::one());
                let lhs = self.star_inv(&self.circ(&th, &e)?);
                let rhs = self.circ(&self.star_inv(&th), &ks)?;
                if lhs != rhs {
                    bad.push(format!("(θ∘g)* ≠ θ*∘κ(g)* on ({}, {})", self.names[i], g.gen_info(x).name));
                }
            }
        }
        for i in 0..self.dim() {
            let d = &self.delta[i];
            let mut s = d.clone();
            s.add_assign(&self.germs2(&self.hopf.coproduct(&self.preimages[i])?)?);
            if !self.wedge.contains(&s) {
                bad.push(format!("δ({}) does not agree with dθ modulo S^∧", self.names[i]));
            }
        }
        Ok(bad)
    }

    fn ad_of(&self, v: &Inv) -> Result<Vec<Elem>> {
        let mut out = vec![Elem::zero(); self.dim()];
        for (i, c) in v.iter() {
            for (j, e) in self.ad[*i].iter().enumerate() {
                out[j].add_scaled(e, c);
            }
        }
        Ok(out)
    }

    /// Build the envelope `Γ^∧` over this calculus.
    pub fn envelope(self: &Arc<Self>) -> Result<Envelope> {
        Envelope::new(self.clone())
    }
}

/// The universal differential envelope: `G` generators followed by the
/// basis of `invΓ` in degree 1, with its graded Hopf structure and `d`.
#[derive(Debug, Clone)]
pub struct Envelope {
    pub calc: Arc<Calculus>,
    pub dga: DgAlgebra,
    pub hopf: Hopf,
    offset: Gen,
}

fn names_of(a: &Algebra, w: &[Gen]) -> Vec<String> {
    w.iter().map(|&g| a.gen_info(g).name.clone()).collect()
}

impl Envelope {
    fn new(calc: Arc<Calculus>) -> Result<Self> {
        let g = &*calc.hopf.alg;
        let n = g.num_gens();
        let gp = g.presentation();
        let tn = calc.basis_names();
        let mut p = Presentation {
            name: format!("Γ^∧({})", calc.name()),
            generators: gp.generators.clone(),
            rules: gp.rules.clone(),
            order: gp.order.clone(),
            subalgebras: vec![("G".into(), gp.generators.iter().map(|s| s.name.clone()).collect())],
        };
        for (i, name) in tn.iter().enumerate() {
            let (c, j) = calc.star(i);
            p.generators.push(GenSpec::new(name, 1, &tn[j]).with_star_coeff(c));
            p.order.push((name.clone(), 1));
        }
        let rule = |lhs: Vec<String>, rhs: Vec<(Scalar, Vec<String>)>| RuleSpec { lhs, rhs };
        for (i, name) in tn.iter().enumerate() {
            let th = Inv::single(i, Scalar::one());
            for x in 0..n as Gen {
                let mut rhs = Vec::new();
                for (ks, c) in calc.hopf.coproduct_word(&[x])?.iter() {
                    let circ = calc.circ(&th, &Elem::single(ks[1].clone(), Scalar::one()))?;
                    for (j, d) in circ.iter() {
                        let mut w = names_of(g, &ks[0]);
                        w.push(tn[*j].clone());
                        rhs.push((c * d, w));
                    }
                }
                p.rules.push(rule(vec![name.clone(), g.gen_info(x).name.clone()], rhs));
            }
        }
        for ((a, b), row) in calc.wedge_relations().rows() {
            let rhs = row
                .iter()
                .filter(|(k, _)| **k != (*a, *b))
                .map(|((x, y), c)| (-c, vec![tn[*x].clone(), tn[*y].clone()]))
                .collect();
            p.rules.push(rule(vec![tn[*a].clone(), tn[*b].clone()], rhs));
        }
        let alg = Arc::new(Algebra::new(p)?);
        let offset = n as Gen;
        let theta = |i: usize| Elem::single(vec![offset + i as Gen], Scalar::one());
        let lift = |e: &Elem| -> Elem { e.clone() };
        let mut d = Vec::new();
        for x in 0..n as Gen {
            let mut v = Elem::zero();
            for (ks, c) in calc.hopf.coproduct_word(&[x])?.iter() {
                for (j, k) in calc.germs(&Elem::single(ks[1].clone(), Scalar::one()))?.iter() {
                    let mut w = ks[0].clone();
                    w.push(offset + *j as Gen);
                    v.add_term(w, c * k);
                }
            }
            d.push(v);
        }
        for i in 0..calc.dim() {
            let mut v = Elem::zero();
            for ((a, b), c) in calc.delta(i).iter() {
                v.add_term(vec![offset + *a as Gen, offset + *b as Gen], c.clone());
            }
            d.push(v);
        }
        let dga = DgAlgebra::new(alg.clone(), d)?;
        let one = alg.one();
        let mut coprod = Vec::new();
        let mut counit = Vec::new();
        let mut antipode = Vec::new();
        for x in 0..n as Gen {
            coprod.push(calc.hopf.coproduct_word(&[x])?);
            counit.push(calc.hopf.counit_word(&[x]));
            antipode.push(lift(&calc.hopf.antipode_word(&[x])?));
        }
        for i in 0..calc.dim() {
            let mut t = tensor::pure(&[&one, &theta(i)]);
            let mut k = Elem::zero();
            for (j, e) in calc.ad(i).iter().enumerate() {
                t.add_assign(&tensor::pure(&[&theta(j), e]));
                let ke = calc.hopf.antipode(e)?;
                k.add_assign(&-&alg.mul(&theta(j), &ke)?);
            }
            coprod.push(t);
            counit.push(Scalar::zero());
            antipode.push(k);
        }
        let hopf = Hopf::new(alg, coprod, counit, antipode)?;
        Ok(Envelope { calc, dga, hopf, offset })
    }

    pub fn alg(&self) -> &Arc<Algebra> {
        &self.dga.alg
    }

    /// Generator id of `θ_i`.
    pub fn theta_gen(&self, i: usize) -> Gen {
        self.offset + i as Gen
    }

    pub fn theta(&self, i: usize) -> Elem {
        Elem::single(vec![self.theta_gen(i)], Scalar::one())
    }

    /// Basis index of a degree-1 generator.
    pub fn theta_index(&self, g: Gen) -> Option<usize> {
        (g >= self.offset).then(|| (g - self.offset) as usize)
    }

    pub fn inv_elem(&self, v: &Inv) -> Elem {
        v.iter().map(|(i, c)| (vec![self.theta_gen(*i)], c.clone())).collect()
    }

    /// Read an element of degree 1 spanned by the `θ_i` back into the basis.
    pub fn as_inv(&self, e: &Elem) -> Result<Inv> {
        let mut out = Inv::zero();
        for (w, c) in e.iter() {
            match w.as_slice() {
                [g] if self.theta_index(*g).is_some() => out.add_term(self.theta_index(*g).unwrap(), c.clone()),
                _ => return Err(Error::DegreeMismatch(format!("{} is not in invΓ", self.alg().fmt(e)))),
            }
        }
        Ok(out)
    }

    pub fn inv2_tensor(&self, v: &Inv2) -> Tensor {
        v.iter().map(|((a, b), c)| (vec![vec![self.theta_gen(*a)], vec![self.theta_gen(*b)]], c.clone())).collect()
    }

    /// `π` with values in the envelope.
    pub fn germs(&self, g: &Elem) -> Result<Elem> {
        Ok(self.inv_elem(&self.calc.germs(g)?))
    }

    /// `ad(θ) = θ⁽⁰⁾ ⊗ θ⁽¹⁾` as a tensor over `[Γ^∧, Γ^∧]`.
    pub fn ad(&self, theta: &Inv) -> Tensor {
        let mut t = Tensor::zero();
        for (i, c) in theta.iter() {
            for (j, e) in self.calc.ad(*i).iter().enumerate() {
                t.add_scaled(&tensor::pure(&[&self.theta(j), e]), c);
            }
        }
        t
    }

    /// `Ad(v) = (-1)^{∂v⁽¹⁾∂v⁽²⁾} v⁽²⁾ ⊗ κ(v⁽¹⁾)v⁽³⁾`.
    pub fn big_adjoint(&self, v: &Elem) -> Result<Tensor> {
        let a = &**self.alg();
        let mut out = Tensor::zero();
        for (ks, c) in self.hopf.coproduct(v)?.iter() {
            let k = self.hopf.antipode_word(&ks[0])?;
            let d1 = a.word_degree(&ks[0]);
            for (ls, d) in self.hopf.coproduct_word(&ks[1])?.iter() {
                let s = Scalar::sign(d1 * a.word_degree(&ls[0]));
                let right = a.mul(&k, &Elem::single(ls[1].clone(), Scalar::one()))?;
                let left = Elem::single(ls[0].clone(), Scalar::one());
                out.add_scaled(&tensor::pure(&[&left, &right]), &(&(c * d) * &s));
            }
        }
        Ok(out)
    }

    /// `d π(g) = -π(g⁽¹⁾)π(g⁽²⁾)`.
    pub fn d_germs(&self, g: &Elem) -> Result<Elem> {
        let a = &**self.alg();
        let t = self.inv2_tensor(&self.calc.germs2(&self.calc.hopf.coproduct(g)?)?);
        Ok(-&tensor::multiply_out(a, &t)?)
    }

    /// Identity checks of the germs map on the generators of `G` and on
    /// products of two generators.
    pub fn germs_identities(&self) -> Result<Vec<String>> {
        let a = &**self.alg();
        let gh = &self.calc.hopf;
        let mut bad = Vec::new();
        for w in gh.alg.irreducible_words(2) {
            let e = Elem::single(w, Scalar::one());
            let show = gh.alg.fmt(&e);
            let mut rhs = Elem::zero();
            for (ks, c) in gh.coproduct(&e)?.iter() {
                let p = self.germs(&Elem::single(ks[1].clone(), Scalar::one()))?;
                rhs.add_scaled(&a.mul(&Elem::single(ks[0].clone(), Scalar::one()), &p)?, c);
            }
            if self.dga.d(&e)? != rhs {
                bad.push(format!("dg ≠ g⁽¹⁾π(g⁽²⁾) on {show}"));
            }
            let mut alt = Elem::zero();
            for (ks, c) in gh.coproduct(&e)?.iter() {
                let dk = self.dga.d(&gh.antipode_word(&ks[0])?)?;
                alt.add_scaled(&a.mul(&dk, &Elem::single(ks[1].clone(), Scalar::one()))?, &-c);
            }
            if alt != self.germs(&e)? {
                bad.push(format!("π(g) ≠ -(dκ(g⁽¹⁾))g⁽²⁾ on {show}"));
            }
            let lhs = a.star(&self.germs(&e)?)?;
            let rhs = -&self.germs(&gh.alg.star(&gh.antipode(&e)?)?)?;
            if lhs != rhs {
                bad.push(format!("π(g)* ≠ -π(κ(g)*) on {show}"));
            }
            if self.dga.d(&self.germs(&e)?)? != self.d_germs(&e)? {
                bad.push(format!("dπ(g) ≠ -π(g⁽¹⁾)π(g⁽²⁾) on {show}"));
            }
        }
        Ok(bad)
    }

    pub fn name_of(&self, i: usize) -> String {
        self.calc.basis_names()[i].to_string()
    }
}

#[cfg(test)]
pub(crate) mod tests {
    use super::*;
    use crate::hopf::tests::u1_hopf;
    use crate::ncalg::{GenSpec, Presentation, RuleSpec};

    pub fn circle_calculus(hopf: Arc<Hopf>, quantum: bool) -> Calculus {
        let a = hopf.alg.clone();
        let r = if quantum { a.parse("z z - (1 + q^-2) z + q^-2") } else { a.parse("z z - 2 z + 1") }.unwrap();
        Calculus::new(
            hopf,
            CalculusSpec {
                name: if quantum { "q-U(1)" } else { "U(1)" }.into(),
                ideal: vec![r],
                basis: vec![("ς".into(), a.g("z").unwrap())],
                delta: Some(vec![Inv2::single((0, 0), Scalar::one())]),
                word_bound: DEFAULT_WORD_BOUND,
            },
        )
        .unwrap()
    }

    pub fn z2_hopf() -> Hopf {
        let a = Arc::new(
            Algebra::new(Presentation {
                name: "Z2".into(),
                generators: vec![GenSpec::new("t", 0, "t")],
                rules: vec![RuleSpec::new(&["t", "t"], &[(Scalar::one(), &[])])],
                order: vec![("t".into(), 1)],
                subalgebras: vec![],
            })
            .unwrap(),
        );
        Hopf::from_strs(a, &[("t", "t⊗t", "1", "t")]).unwrap()
    }

    pub fn z2_calculus() -> Calculus {
        let h = Arc::new(z2_hopf());
        let t = h.alg.g("t").unwrap();
        Calculus::new(
            h,
            CalculusSpec {
                name: "Z2".into(),
                ideal: vec![],
                basis: vec![("θ".into(), t)],
                delta: None,
                word_bound: DEFAULT_WORD_BOUND,
            },
        )
        .unwrap()
    }

    fn sig() -> Inv {
        Inv::single(0, Scalar::one())
    }

    #[test]
    fn circle_germs() {
        let c = circle_calculus(Arc::new(u1_hopf()), false);
        let a = c.hopf.alg.clone();
        assert!(c.germs(&a.one()).unwrap().is_zero());
        assert_eq!(c.germs(&a.g("z").unwrap()).unwrap(), sig());
        assert_eq!(c.germs(&a.g("z*").unwrap()).unwrap(), -&sig());
        assert_eq!(c.germs(&a.parse("z z").unwrap()).unwrap(), sig().scale(&Scalar::int(2)));
        assert_eq!(c.circ(&sig(), &a.g("z").unwrap()).unwrap(), sig());
        assert_eq!(c.circ(&sig(), &a.one()).unwrap(), sig());
        assert_eq!(c.ad(0), &[a.one()][..]);
        assert_eq!(c.star(0), (Scalar::int(-1), 0));
        assert_eq!(c.validate().unwrap(), Vec::<String>::new());
    }

    #[test]
    fn circle_module_law() {
        let c = circle_calculus(Arc::new(u1_hopf()), true);
        let a = c.hopf.alg.clone();
        for (x, y) in [("z", "z"), ("z", "z*"), ("z* z*", "z")] {
            let (x, y) = (a.parse(x).unwrap(), a.parse(y).unwrap());
            let l = c.circ(&c.circ(&sig(), &x).unwrap(), &y).unwrap();
            let r = c.circ(&sig(), &a.mul(&x, &y).unwrap()).unwrap();
            assert_eq!(l, r);
        }
        assert_eq!(c.circ(&sig(), &a.g("z").unwrap()).unwrap(), sig().scale(&Scalar::q_pow(-2)));
        assert_eq!(c.validate().unwrap(), Vec::<String>::new());
    }

    #[test]
    fn circle_envelope() {
        for quantum in [false, true] {
            let c = Arc::new(circle_calculus(Arc::new(u1_hopf()), quantum));
            let e = c.envelope().unwrap();
            let a = e.alg().clone();
            assert!(a.parse("ς ς").unwrap().is_zero());
            assert_eq!(e.dga.validate().unwrap(), Vec::<String>::new());
            assert_eq!(e.hopf.validate().unwrap(), Vec::<String>::new());
            assert_eq!(e.germs_identities().unwrap(), Vec::<String>::new());
            assert_eq!(e.dga.d(&a.g("z").unwrap()).unwrap(), a.parse("z ς").unwrap());
            if quantum {
                assert_eq!(a.parse("ς z").unwrap(), a.parse("q^-2 z ς").unwrap());
                assert_eq!(e.dga.d(&a.g("z*").unwrap()).unwrap(), a.parse("-q^2 z* ς").unwrap());
            } else {
                assert_eq!(a.parse("ς z").unwrap(), a.parse("z ς").unwrap());
            }
            assert_eq!(a.star(&a.g("ς").unwrap()).unwrap(), a.parse("-ς").unwrap());
            let adz = e.big_adjoint(&a.parse("z ς").unwrap()).unwrap();
            assert_eq!(adz, crate::expr::parse_tensor(&[&a, &a], "(z ς)⊗1").unwrap());
        }
    }

    #[test]
    fn z2_calculus_and_envelope() {
        let c = Arc::new(z2_calculus());
        assert_eq!(c.validate().unwrap(), Vec::<String>::new());
        let t = c.hopf.alg.g("t").unwrap();
        assert_eq!(c.circ(&sig(), &t).unwrap(), -&sig());
        assert_eq!(c.ad(0), &[c.hopf.alg.one()][..]);
        assert_eq!(c.delta(0), &Inv2::single((0, 0), Scalar::int(-1)));
        let e = c.envelope().unwrap();
        let a = e.alg().clone();
        let th = a.g("θ").unwrap();
        assert_eq!(a.pow(&th, 2).unwrap(), a.word(&["θ", "θ"]).unwrap());
        assert!(!a.pow(&th, 2).unwrap().is_zero());
        assert_eq!(e.dga.d(&th).unwrap(), -&a.pow(&th, 2).unwrap());
        assert_eq!(a.parse("θ t").unwrap(), a.parse("-t θ").unwrap());
        assert_eq!(a.star(&th).unwrap(), -&th);
        assert_eq!(e.dga.validate().unwrap(), Vec::<String>::new());
        assert_eq!(e.hopf.validate().unwrap(), Vec::<String>::new());
        assert_eq!(e.germs_identities().unwrap(), Vec::<String>::new());
    }

    #[test]
    fn preimage_in_ideal_is_rejected() {
        let h = Arc::new(u1_hopf());
        let a = h.alg.clone();
        let r = Calculus::new(
            h,
            CalculusSpec {
                name: "bad".into(),
                ideal: vec![a.parse("z - 1").unwrap()],
                basis: vec![("ς".into(), a.g("z").unwrap())],
                delta: None,
                word_bound: 3,
            },
        );
        assert!(r.is_err());
    }
}

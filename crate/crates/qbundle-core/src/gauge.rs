//! Quantum translation map, gauge transformations, their action on
//! connections and on sections of associated bundles.

use alloc::collections::BTreeMap;
use alloc::format;
use alloc::string::String;
use alloc::vec;
use alloc::vec::Vec;

use crate::assoc::{Assoc, Section, Side};
use crate::bundle::{BaseRecognizer, Bundle, Connection};
use crate::error::{Error, Result};
use crate::fodc::Envelope;
use crate::hopf::{Character, Hopf};
use crate::ncalg::{Algebra, Elem, Gen, Word};
use crate::scalars::Scalar;
use crate::tensor::{self, Tensor};

fn unit(w: &[Gen]) -> Elem {
    Elem::single(w.to_vec(), Scalar::one())
}

/// Normal words of `Γ^∧` of degree at most one with at most `len` letters
/// from `G`.
pub fn spanning_words(env: &Envelope, len: usize) -> Vec<Word> {
    let a = env.alg();
    a.irreducible_words(len + 1)
        .into_iter()
        .filter(|w| {
            let d = a.word_degree(w);
            d <= 1 && w.len() - d <= len
        })
        .collect()
}

// ---- translation map

/// `qtrs` on `Γ^∧` in degrees 0 and 1, with values over `[Ω(GM), Ω(GM)]`
/// read in `Ω(GM) ⊗_{Ω(M)} Ω(GM)`.
pub struct Translation<'a> {
    pub bundle: &'a Bundle,
    pub connection: &'a Connection,
    gens: Vec<Option<Tensor>>,
    thetas: Vec<Tensor>,
}

impl<'a> Translation<'a> {
    pub fn new(bundle: &'a Bundle, connection: &'a Connection) -> Result<Self> {
        if let Some(s) = bundle.connection_failures(connection)?.into_iter().next() {
            return Err(Error::NotAConnection(s));
        }
        let h = &bundle.env.calc.hopf;
        let gens = (0..h.alg.num_gens() as Gen).map(|g| bundle.qtrs_generator(g).ok()).collect();
        let mut t = Translation { bundle, connection, gens, thetas: Vec::new() };
        let a = bundle.alg();
        let algs = t.algs();
        let mut thetas = Vec::new();
        for i in 0..bundle.env.calc.dim() {
            let mut v = tensor::pure(&[&a.one(), &connection.table[i]]);
            for (j, e) in bundle.env.calc.ad(i).iter().enumerate() {
                let left = tensor::pure(&[&connection.table[j], &a.one()]);
                v.add_scaled(&tensor::mul(&algs, &left, &t.eval(e)?)?, &Scalar::int(-1));
            }
            thetas.push(tensor::nf(&algs, &v)?);
        }
        t.thetas = thetas;
        Ok(t)
    }

    fn algs(&self) -> [&'a Algebra; 2] {
        let a = &**self.bundle.alg();
        [a, a]
    }

    /// `Σ [x]₁[u]₁ ⊗ [u]₂[x]₂` from `qtrs(u)` and `qtrs(x)`.
    fn append(&self, u: &Tensor, x: &Tensor) -> Result<Tensor> {
        let a = &**self.bundle.alg();
        let mut out = Tensor::zero();
        for (ku, cu) in u.iter() {
            for (kx, cx) in x.iter() {
                let l = a.mul(&unit(&kx[0]), &unit(&ku[0]))?;
                let r = a.mul(&unit(&ku[1]), &unit(&kx[1]))?;
                out.add_scaled(&tensor::pure(&[&l, &r]), &(cu * cx));
            }
        }
        Ok(out)
    }

    pub fn word(&self, w: &[Gen]) -> Result<Tensor> {
        let env = &self.bundle.env;
        let g = env.alg();
        let a = self.bundle.alg();
        let mut acc = tensor::pure(&[&a.one(), &a.one()]);
        for (pos, &x) in w.iter().enumerate() {
            let next = match env.theta_index(x) {
                Some(i) if pos + 1 == w.len() => &self.thetas[i],
                Some(_) => return Err(Error::GradeOverflow(format!("qtrs on {}", g.word_str(w)))),
                None => self.gens[x as usize]
                    .as_ref()
                    .ok_or_else(|| Error::OutsideTable(format!("no translation of {}", g.gen_info(x).name)))?,
            };
            acc = self.append(&acc, next)?;
        }
        Ok(acc)
    }

    /// `qtrs` on an element of `Γ^∧` of degree at most one.
    pub fn eval(&self, v: &Elem) -> Result<Tensor> {
        let mut out = Tensor::zero();
        for (w, c) in v.iter() {
            out.add_scaled(&self.word(w)?, c);
        }
        Ok(out)
    }

    /// `β̃`, injective on `Ω(GM) ⊗_{Ω(M)} Ω(GM)`.
    pub fn beta(&self, t: &Tensor) -> Result<Tensor> {
        self.bundle.beta(t)
    }

    /// `(a⊗1)Ψ(b) ⊗ c` on `[Ω(GM), Ω(GM), Γ^∧]`.
    fn beta_first(&self, t: &Tensor) -> Result<Tensor> {
        let mut out = Tensor::zero();
        for (k, c) in t.iter() {
            let two = self.beta(&Tensor::single(vec![k[0].clone(), k[1].clone()], Scalar::one()))?;
            for (k2, d) in two.iter() {
                out.add_term(vec![k2[0].clone(), k2[1].clone(), k[2].clone()], c * d);
            }
        }
        Ok(out)
    }

    /// `a⊗c⊗b ↦ (-1)^{|c||b⁽⁰⁾|} a b⁽⁰⁾ ⊗ c ⊗ b⁽¹⁾` on `[Ω(GM), Γ^∧, Ω(GM)]`.
    fn beta_last(&self, t: &Tensor) -> Result<Tensor> {
        let a = &**self.bundle.alg();
        let g = self.bundle.galg();
        let mut out = Tensor::zero();
        for (k, c) in t.iter() {
            for (kb, d) in self.bundle.psi_word(&k[2])?.iter() {
                let s = Scalar::sign(g.word_degree(&k[1]) * a.word_degree(&kb[0]));
                let l = a.mul(&unit(&k[0]), &unit(&kb[0]))?;
                for (w, e) in l.iter() {
                    out.add_term(vec![w.clone(), k[1].clone(), kb[1].clone()], &(&(c * d) * e) * &s);
                }
            }
        }
        Ok(out)
    }

    /// Words `v` where `β̃(qtrs(v)) ≠ 𝟙⊗v`.
    pub fn definition_failures(&self, words: &[Word]) -> Result<Vec<String>> {
        let g = self.bundle.galg();
        let one = self.bundle.alg().one();
        let mut bad = Vec::new();
        for w in words {
            if self.beta(&self.word(w)?)? != tensor::pure(&[&one, &unit(w)]) {
                bad.push(format!("β̃(qtrs({})) ≠ 𝟙⊗{}", g.word_str(w), g.word_str(w)));
            }
        }
        Ok(bad)
    }

    /// Failures of property `k` (1..=6) on the given words; property 6
    /// uses the base samples.
    pub fn property_failures(&self, k: u8, words: &[Word], base: &[Elem]) -> Result<Vec<String>> {
        let b = self.bundle;
        let a = &**b.alg();
        let g = &**b.galg();
        let env = &b.env;
        let mut bad = Vec::new();
        for w in words {
            let show = g.word_str(w);
            let v = unit(w);
            let q = self.word(w)?;
            let deg = g.word_degree(w);
            match k {
                1 if deg == 0 => {
                    let lhs = self.eval(&env.dga.d(&v)?)?;
                    let mut rhs = Tensor::zero();
                    for (ks, c) in q.iter() {
                        let (x, y) = (unit(&ks[0]), unit(&ks[1]));
                        rhs.add_scaled(&tensor::pure(&[&b.d(&x)?, &y]), c);
                        let s = Scalar::sign(a.word_degree(&ks[0]));
                        rhs.add_scaled(&tensor::pure(&[&x, &b.d(&y)?]), &(c * &s));
                    }
                    if self.beta(&lhs)? != self.beta(&rhs)? {
                        bad.push(format!("qtrs∘d ≠ d∘qtrs on {show}"));
                    }
                }
                2 if w.len() == 1 && deg == 1 => {
                    if self.beta(&q)? != tensor::pure(&[&a.one(), &v]) {
                        bad.push(format!("translation formula fails on {show}"));
                    }
                }
                3 => {
                    let e = env.hopf.counit_word(w);
                    if tensor::multiply_out(a, &q)? != a.scalar(e) {
                        bad.push(format!("[v]₁[v]₂ ≠ ε(v) on {show}"));
                    }
                }
                4 => {
                    let mut lhs = Tensor::zero();
                    for (ks, c) in q.iter() {
                        for (kp, d) in b.psi_word(&ks[1])?.iter() {
                            lhs.add_term(vec![ks[0].clone(), kp[0].clone(), kp[1].clone()], c * d);
                        }
                    }
                    let mut rhs = Tensor::zero();
                    for (ks, c) in env.hopf.coproduct_word(w)?.iter() {
                        for (kq, d) in self.word(&ks[0])?.iter() {
                            rhs.add_term(vec![kq[0].clone(), kq[1].clone(), ks[1].clone()], c * d);
                        }
                    }
                    if self.beta_first(&lhs)? != self.beta_first(&rhs)? {
                        bad.push(format!("translation is not coaction compatible on {show}"));
                    }
                }
                5 => {
                    let mut lhs = Tensor::zero();
                    for (ks, c) in q.iter() {
                        for (kp, d) in b.psi_word(&ks[0])?.iter() {
                            lhs.add_term(vec![kp[0].clone(), kp[1].clone(), ks[1].clone()], c * d);
                        }
                    }
                    let mut rhs = Tensor::zero();
                    for (ks, c) in env.hopf.coproduct_word(w)?.iter() {
                        let kap = env.hopf.antipode_word(&ks[0])?;
                        let kd = g.word_degree(&ks[0]);
                        for (kq, d) in self.word(&ks[1])?.iter() {
                            let s = Scalar::sign(kd * a.word_degree(&kq[0]));
                            for (kw, e) in kap.iter() {
                                rhs.add_term(vec![kq[0].clone(), kw.clone(), kq[1].clone()], &(&(c * d) * e) * &s);
                            }
                        }
                    }
                    if self.beta_last(&lhs)? != self.beta_last(&rhs)? {
                        bad.push(format!("twisted coaction property fails on {show}"));
                    }
                }
                6 => {
                    for mu in base {
                        let m = a.degree(mu).unwrap_or(0);
                        let left = tensor::mul(&self.algs(), &tensor::pure(&[mu, &a.one()]), &q)?;
                        let s = Scalar::sign(m * deg);
                        let mut plain = Tensor::zero();
                        for (ks, c) in q.iter() {
                            let y = a.mul(&unit(&ks[1]), mu)?;
                            plain.add_scaled(&tensor::pure(&[&unit(&ks[0]), &y]), &(c * &s));
                        }
                        if self.beta(&left)? != self.beta(&plain)? {
                            bad.push(format!("base element {} does not graded-commute with qtrs({show})", a.fmt(mu)));
                        }
                    }
                }
                _ => {}
            }
        }
        Ok(bad)
    }

    /// Words on which this translation and one built from another
    /// connection have different `β̃` images.
    pub fn independence_failures(&self, other: &Translation<'_>, words: &[Word]) -> Result<Vec<String>> {
        let g = self.bundle.galg();
        let mut bad = Vec::new();
        for w in words {
            if self.beta(&self.word(w)?)? != other.beta(&other.word(w)?)? {
                bad.push(format!("qtrs({}) depends on the connection", g.word_str(w)));
            }
        }
        Ok(bad)
    }
}

/// Base elements among the irreducible words of `Ω(GM)` up to length `len`.
pub fn base_samples(b: &Bundle, len: usize) -> Result<Vec<Elem>> {
    let mut out = Vec::new();
    for w in b.alg().irreducible_words(len) {
        let e = unit(&w);
        if !w.is_empty() && b.is_base(&e)? {
            out.push(e);
        }
    }
    Ok(out)
}

// ---- gauge transformations

#[derive(Debug, Clone, PartialEq, Eq)]
pub enum GaugeKind {
    /// `χ` on `G`, zero in positive degree, with `χ⁻¹ = χ∘κ`.
    Character { chi: Character, inv: Character },
    /// Values of `f` and `f⁻¹` on normal words of `Γ^∧`.
    Table { f: BTreeMap<Word, Elem>, finv: BTreeMap<Word, Elem> },
}

/// A gauge transformation `f: Γ^∧ → Ω(GM)`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Gauge {
    pub name: String,
    pub kind: GaugeKind,
}

/// Word length of the spanning window used for character transformations.
pub const CHARACTER_WINDOW: usize = 3;

impl Gauge {
    pub fn identity(b: &Bundle) -> Gauge {
        let h = &b.env.calc.hopf;
        Gauge { name: "1ε".into(), kind: GaugeKind::Character { chi: Character::counit(h), inv: Character::counit(h) } }
    }

    /// `Δ(χ)`. The character must respect the relations of `G` and
    /// commute with the coproduct of `Γ^∧`.
    pub fn from_character(b: &Bundle, name: &str, chi: Character) -> Result<Gauge> {
        let h = &b.env.calc.hopf;
        if chi.0.len() != h.alg.num_gens() {
            return Err(Error::DimensionMismatch(format!("character {name} needs {} values", h.alg.num_gens())));
        }
        if !chi.respects_relations(h) {
            return Err(Error::NotCovariant(format!("{name} is not multiplicative")));
        }
        check_character_centrality(&b.env.hopf, name, &chi)?;
        let inv = chi.inverse(h)?;
        Ok(Gauge { name: name.into(), kind: GaugeKind::Character { chi, inv } })
    }

    pub fn from_table(name: &str, f: BTreeMap<Word, Elem>, finv: BTreeMap<Word, Elem>) -> Gauge {
        Gauge { name: name.into(), kind: GaugeKind::Table { f, finv } }
    }

    pub fn inverse(&self) -> Gauge {
        let kind = match &self.kind {
            GaugeKind::Character { chi, inv } => GaugeKind::Character { chi: inv.clone(), inv: chi.clone() },
            GaugeKind::Table { f, finv } => GaugeKind::Table { f: finv.clone(), finv: f.clone() },
        };
        Gauge { name: format!("{}⁻¹", self.name), kind }
    }

    pub fn is_character(&self) -> bool {
        matches!(self.kind, GaugeKind::Character { .. })
    }

    fn word_value(&self, b: &Bundle, w: &[Gen], inverse: bool) -> Result<Elem> {
        match &self.kind {
            GaugeKind::Character { chi, inv } => {
                let c = if inverse { inv } else { chi };
                Ok(b.alg().scalar(c.eval_word(&b.env.hopf, w)))
            }
            GaugeKind::Table { f, finv } => {
                let t = if inverse { finv } else { f };
                t.get(w).cloned().ok_or_else(|| {
                    Error::OutsideTable(format!("{} on {}", self.name, b.galg().word_str(w)))
                })
            }
        }
    }

    fn apply(&self, b: &Bundle, v: &Elem, inverse: bool) -> Result<Elem> {
        let mut out = Elem::zero();
        for (w, c) in v.iter() {
            out.add_scaled(&self.word_value(b, w, inverse)?, c);
        }
        Ok(out)
    }

    /// `f(v)` for `v ∈ Γ^∧`.
    pub fn eval(&self, b: &Bundle, v: &Elem) -> Result<Elem> {
        self.apply(b, v, false)
    }

    pub fn eval_inv(&self, b: &Bundle, v: &Elem) -> Result<Elem> {
        self.apply(b, v, true)
    }

    fn induced(&self, b: &Bundle, x: &Elem, inverse: bool) -> Result<Elem> {
        let a = b.alg();
        let mut out = Elem::zero();
        for (k, c) in b.psi(x)?.iter() {
            let v = self.word_value(b, &k[1], inverse)?;
            out.add_scaled(&a.mul(&unit(&k[0]), &v)?, c);
        }
        Ok(out)
    }

    /// `F_f = m(id⊗f)Ψ` on `Ω(GM)`.
    pub fn transform(&self, b: &Bundle, x: &Elem) -> Result<Elem> {
        self.induced(b, x, false)
    }

    /// `F_{f⁻¹}`.
    pub fn transform_inv(&self, b: &Bundle, x: &Elem) -> Result<Elem> {
        self.induced(b, x, true)
    }

    /// The words where this transformation is known.
    pub fn window(&self, b: &Bundle) -> Vec<Word> {
        match &self.kind {
            GaugeKind::Character { .. } => spanning_words(&b.env, CHARACTER_WINDOW),
            GaugeKind::Table { f, .. } => f.keys().cloned().collect(),
        }
    }

    /// Unit, grading, convolution inverse and Ad-covariance on the window.
    pub fn validate(&self, b: &Bundle) -> Result<Vec<String>> {
        let a = &**b.alg();
        let g = &**b.galg();
        let env = &b.env;
        let mut bad = Vec::new();
        if self.eval(b, &g.one())? != a.one() {
            bad.push(format!("{}(1) ≠ 1", self.name));
        }
        let f = |v: &Elem| self.eval(b, v);
        let finv = |v: &Elem| self.eval_inv(b, v);
        for w in self.window(b) {
            let v = unit(&w);
            let show = g.word_str(&w);
            let fv = self.eval(b, &v)?;
            if fv.keys().any(|k| a.word_degree(k) != g.word_degree(&w)) {
                bad.push(format!("{} does not preserve the degree of {show}", self.name));
            }
            let e = a.scalar(env.hopf.counit_word(&w));
            if convolve_at(b, &f, &finv, &v)? != e || convolve_at(b, &finv, &f, &v)? != e {
                bad.push(format!("{} is not convolution invertible on {show}", self.name));
            }
            let mut lhs = Tensor::zero();
            for (k, c) in env.big_adjoint(&v)?.iter() {
                for (x, d) in self.eval(b, &unit(&k[0]))?.iter() {
                    lhs.add_term(vec![x.clone(), k[1].clone()], c * d);
                }
            }
            if tensor::nf(&[a, g], &lhs)? != b.psi(&fv)? {
                bad.push(format!("{} is not Ad-covariant on {show}", self.name));
            }
        }
        Ok(bad)
    }

    /// `f ∗ other` and its inverse `other⁻¹ ∗ f⁻¹` tabulated on `words`.
    pub fn convolve(&self, other: &Gauge, b: &Bundle, words: &[Word]) -> Result<Gauge> {
        let f1 = |v: &Elem| self.eval(b, v);
        let f2 = |v: &Elem| other.eval(b, v);
        let i1 = |v: &Elem| self.eval_inv(b, v);
        let i2 = |v: &Elem| other.eval_inv(b, v);
        let mut f = BTreeMap::new();
        let mut finv = BTreeMap::new();
        for w in words {
            let v = unit(w);
            f.insert(w.clone(), convolve_at(b, &f1, &f2, &v)?);
            finv.insert(w.clone(), convolve_at(b, &i2, &i1, &v)?);
        }
        Ok(Gauge::from_table(&format!("{}∗{}", self.name, other.name), f, finv))
    }
}

/// `(f₁ ∗ f₂)(v) = m(f₁⊗f₂)φ(v)`.
pub fn convolve_at(
    b: &Bundle,
    f1: &dyn Fn(&Elem) -> Result<Elem>,
    f2: &dyn Fn(&Elem) -> Result<Elem>,
    v: &Elem,
) -> Result<Elem> {
    let a = b.alg();
    let mut out = Elem::zero();
    for (k, c) in b.env.hopf.coproduct(v)?.iter() {
        out.add_scaled(&a.mul(&f1(&unit(&k[0]))?, &f2(&unit(&k[1]))?)?, c);
    }
    Ok(out)
}

/// `(id⊗χ)φ = (χ⊗id)φ` on the generators of a Hopf algebra.
pub fn check_character_centrality(h: &Hopf, name: &str, chi: &Character) -> Result<()> {
    for x in 0..h.alg.num_gens() as Gen {
        let mut l = Elem::zero();
        let mut r = Elem::zero();
        for (ks, c) in h.coproduct_word(&[x])?.iter() {
            l.add_term(ks[0].clone(), c * &chi.eval_word(h, &ks[1]));
            r.add_term(ks[1].clone(), c * &chi.eval_word(h, &ks[0]));
        }
        if h.alg.nf(&l)? != h.alg.nf(&r)? {
            return Err(Error::CentralityViolated(format!("{name} on {}", h.alg.gen_info(x).name)));
        }
    }
    Ok(())
}

/// Samples where `(F⊗id)Ψ ≠ ΨF`.
pub fn map_covariance_failures(b: &Bundle, map: &dyn Fn(&Elem) -> Result<Elem>, samples: &[Elem]) -> Result<Vec<String>> {
    let a = &**b.alg();
    let mut bad = Vec::new();
    for x in samples {
        let mut lhs = Tensor::zero();
        for (k, c) in b.psi(x)?.iter() {
            for (y, d) in map(&unit(&k[0]))?.iter() {
                lhs.add_term(vec![y.clone(), k[1].clone()], c * d);
            }
        }
        if tensor::nf(&[a, b.galg()], &lhs)? != b.psi(&map(x)?)? {
            bad.push(format!("map is not covariant on {}", a.fmt(x)));
        }
    }
    Ok(bad)
}

/// `f_F = m(id⊗F)qtrs` and `f_{F⁻¹}` on `words`, after checking the
/// covariance of `F` on `samples`.
pub fn from_map(
    tr: &Translation<'_>,
    name: &str,
    map: &dyn Fn(&Elem) -> Result<Elem>,
    map_inv: &dyn Fn(&Elem) -> Result<Elem>,
    words: &[Word],
    samples: &[Elem],
) -> Result<Gauge> {
    let b = tr.bundle;
    let a = b.alg();
    for m in [map, map_inv] {
        if let Some(s) = map_covariance_failures(b, m, samples)?.into_iter().next() {
            return Err(Error::NotCovariant(s));
        }
    }
    let apply = |m: &dyn Fn(&Elem) -> Result<Elem>, w: &Word| -> Result<Elem> {
        let mut out = Elem::zero();
        for (k, c) in tr.word(w)?.iter() {
            out.add_scaled(&a.mul(&unit(&k[0]), &m(&unit(&k[1]))?)?, c);
        }
        Ok(out)
    };
    let mut f = BTreeMap::new();
    let mut finv = BTreeMap::new();
    for w in words {
        f.insert(w.clone(), apply(map, w)?);
        finv.insert(w.clone(), apply(map_inv, w)?);
    }
    Ok(Gauge::from_table(name, f, finv))
}

/// `f⊛ω(θ) = F_f(ω(θ))`.
pub fn act(b: &Bundle, f: &Gauge, w: &Connection) -> Result<Connection> {
    let table = w.table.iter().map(|e| f.transform(b, e)).collect::<Result<Vec<_>>>()?;
    Ok(Connection::new(&format!("{}⊛{}", f.name, w.name), table))
}

/// `Σ_j λ(θ_j) f(a_ij)` for `ad(θ_i) = Σ_j θ_j ⊗ a_ij`.
fn along_ad(b: &Bundle, f: &Gauge, table: &[Elem], i: usize) -> Result<Elem> {
    let a = b.alg();
    let mut out = Elem::zero();
    for (j, e) in b.env.calc.ad(i).iter().enumerate() {
        out.add_assign(&a.mul(&table[j], &f.eval(b, e)?)?);
    }
    Ok(out)
}

/// Basis elements where `F_f(ω(θ)) ≠ m(ω⊗f)ad(θ) + f(θ)`.
pub fn action_formula_failures(b: &Bundle, f: &Gauge, w: &Connection) -> Result<Vec<String>> {
    let mut bad = Vec::new();
    for i in 0..w.table.len() {
        let lhs = f.transform(b, &w.table[i])?;
        let rhs = &along_ad(b, f, &w.table, i)? + &f.eval(b, &b.env.theta(i))?;
        if lhs != rhs {
            bad.push(format!("{} on {} at {}", f.name, w.name, b.env.name_of(i)));
        }
    }
    Ok(bad)
}

/// Certificate that `F_f` is a graded differential *-algebra morphism,
/// checked on generators and products of two generators.
pub fn certify_morphism(b: &Bundle, f: &Gauge) -> Result<()> {
    let a = &**b.alg();
    let gens: Vec<Elem> = (0..a.num_gens() as Gen).map(|g| a.gen_elem(g)).collect();
    let fail = |what: &str, e: &Elem| Err(Error::NotDifferentialMorphism(format!("{} {what} on {}", f.name, a.fmt(e))));
    for x in &gens {
        let fx = f.transform(b, x)?;
        if f.transform(b, &a.star(x)?)? != a.star(&fx)? {
            return fail("does not commute with *", x);
        }
        if f.transform(b, &b.d(x)?)? != b.d(&fx)? {
            return fail("does not commute with d", x);
        }
    }
    for x in &gens {
        for y in &gens {
            let xy = a.mul(x, y)?;
            if f.transform(b, &xy)? != a.mul(&f.transform(b, x)?, &f.transform(b, y)?)? {
                return fail("is not multiplicative", &unit(&[x.keys().next().unwrap()[0], y.keys().next().unwrap()[0]]));
            }
        }
    }
    Ok(())
}

/// Curvature covariance under the action and `D^{f⊛ω}∘F_f = F_f∘D^ω` on the
/// horizontal spanning set. Requires the morphism certificate.
pub fn curvature_failures(b: &Bundle, f: &Gauge, w: &Connection) -> Result<Vec<String>> {
    certify_morphism(b, f)?;
    let a = b.alg();
    let fw = act(b, f, w)?;
    let n = w.table.len();
    let rs = (0..n).map(|i| b.curvature(w, i)).collect::<Result<Vec<_>>>()?;
    let mut bad = Vec::new();
    for i in 0..n {
        let moved = f.transform(b, &rs[i])?;
        if moved != b.curvature(&fw, i)? {
            bad.push(format!("F(R) ≠ R of the transformed connection at {}", b.env.name_of(i)));
        }
        if moved != along_ad(b, f, &rs, i)? {
            bad.push(format!("F(R) ≠ m(R⊗f)ad at {}", b.env.name_of(i)));
        }
    }
    for word in b.horizontal_words() {
        let phi = unit(&word);
        if b.cov_deriv(&fw, &f.transform(b, &phi)?)? != f.transform(b, &b.cov_deriv(w, &phi)?)? {
            bad.push(format!("D does not intertwine F on {}", a.fmt(&phi)));
        }
    }
    Ok(bad)
}

// ---- sections

/// `A_f(T) = F_f∘T` on the left, `Â_f(T) = *F_f*∘T` on the right.
pub fn section_transform(m: &Assoc<'_>, f: &Gauge, t: &Section, side: Side) -> Result<Section> {
    let b = m.bundle;
    let a = b.alg();
    match side {
        Side::Left => m.map_values(t, &|v| f.transform(b, v)),
        Side::Right => m.map_values(t, &|v| a.star(&f.transform(b, &a.star(v)?)?)),
    }
}

/// `⟨A_f T₁, T₂⟩ - ⟨T₁, A_f⁻¹ T₂⟩` on the given side.
pub fn adjoint_defect(m: &Assoc<'_>, f: &Gauge, t1: &Section, t2: &Section, side: Side) -> Result<Elem> {
    let inv = f.inverse();
    let (l, r) = (section_transform(m, f, t1, side)?, section_transform(m, &inv, t2, side)?);
    Ok(match side {
        Side::Left => &m.herm_l(&l, t2)? - &m.herm_l(t1, &r)?,
        Side::Right => &m.herm_r(&l, t2)? - &m.herm_r(t1, &r)?,
    })
}

/// `Σ_k μ_k F(T_k)` as values.
fn coords_through(m: &Assoc<'_>, f: &Gauge, mu: &[Elem]) -> Result<Vec<Elem>> {
    let b = m.bundle;
    let a = b.alg();
    let mut out = vec![Elem::zero(); m.rep.n()];
    for (k, c) in mu.iter().enumerate() {
        let t = section_transform(m, f, &m.left_generator(k), Side::Left)?;
        for (o, v) in out.iter_mut().zip(&t.values) {
            o.add_assign(&a.mul(c, v)?);
        }
    }
    Ok(out)
}

/// Generator sections where `(id⊗A_f)∇^ω ≠ ∇^{f⊛ω}A_f` or where the
/// curvature conjugation fails. Requires the morphism certificate.
pub fn intertwining_failures(m: &Assoc<'_>, f: &Gauge, w: &Connection) -> Result<Vec<String>> {
    let b = m.bundle;
    certify_morphism(b, f)?;
    let fw = act(b, f, w)?;
    let mut bad = Vec::new();
    for k in 0..m.rep.d() {
        let t = m.left_generator(k);
        let at = section_transform(m, f, &t, Side::Left)?;
        if coords_through(m, f, &m.nabla_coords(w, &t)?)? != m.nabla(&fw, &at)?.values {
            bad.push(format!("connection intertwining fails on generator {k} of {}", m.rep.name()));
        }
        let lhs = m.upsilon_inv(&m.curvature(&fw, &at)?)?.values;
        if coords_through(m, f, &m.curvature(w, &t)?)? != lhs {
            bad.push(format!("curvature conjugation fails on generator {k} of {}", m.rep.name()));
        }
    }
    Ok(bad)
}

/// Coordinate lists where `(A_f⊗id)σ ≠ σ(id⊗A_f)`. Requires the morphism
/// certificate.
pub fn sigma_interchange_failures(m: &Assoc<'_>, f: &Gauge, samples: &[Vec<Elem>]) -> Result<Vec<String>> {
    let b = m.bundle;
    certify_morphism(b, f)?;
    let a = b.alg();
    let mut bad = Vec::new();
    for mu in samples {
        let rhs = coords_through(m, f, mu)?;
        let right = m.tilde_upsilon(&m.upsilon_inv(mu)?)?;
        let mut lhs = vec![Elem::zero(); m.rep.n()];
        for (k, c) in right.iter().enumerate() {
            let t = section_transform(m, f, &m.right_generator(k), Side::Left)?;
            for (o, v) in lhs.iter_mut().zip(&t.values) {
                o.add_assign(&a.mul(v, c)?);
            }
        }
        if lhs != rhs {
            let shown: Vec<String> = mu.iter().map(|e| a.fmt(e)).collect();
            bad.push(format!("σ interchange fails on ({})", shown.join(", ")));
        }
    }
    Ok(bad)
}

// ---- trivial bundles

/// Number of base generators when `Ω(GM) = Ω(M) ⊗ Γ^∧` with the base
/// generators first and the `Γ^∧` generators after them under their names.
fn trivial_split(b: &Bundle) -> Result<usize> {
    let a = b.alg();
    let g = b.galg();
    let nb = match &b.base {
        BaseRecognizer::Generators(gs) if gs.iter().enumerate().all(|(i, &x)| x as usize == i) => gs.len(),
        _ => return Err(Error::NotTrivialBundle(format!("{} has no product base", b.name))),
    };
    if a.num_gens() != nb + g.num_gens()
        || (0..g.num_gens() as Gen).any(|x| a.gen_info(x + nb as Gen).name != g.gen_info(x).name)
    {
        return Err(Error::NotTrivialBundle(format!("{} is not Ω(M)⊗Γ^∧", b.name)));
    }
    Ok(nb)
}

/// `Γ^∧ → Ω(GM)`, `v ↦ 𝟙⊗v` on a trivial bundle.
pub fn lift(b: &Bundle, v: &Elem) -> Result<Elem> {
    let nb = trivial_split(b)? as Gen;
    Ok(v.iter().map(|(w, c)| (w.iter().map(|x| x + nb).collect(), c.clone())).collect())
}

/// `(id⊗ε)` on a trivial bundle.
fn counit_part(b: &Bundle, e: &Elem) -> Result<Elem> {
    let nb = trivial_split(b)? as Gen;
    let h = &b.env.hopf;
    let mut out = Elem::zero();
    for (w, c) in e.iter() {
        let base: Word = w.iter().copied().filter(|&x| x < nb).collect();
        let rest: Word = w.iter().copied().filter(|&x| x >= nb).map(|x| x - nb).collect();
        if b.galg().word_degree(&rest) > 0 {
            continue;
        }
        out.add_term(base, c * &h.counit_word(&rest));
    }
    b.alg().nf(&out)
}

/// Gauge potential `A(θ) = (id⊗ε)(ω(θ) - 𝟙⊗θ)`, so that
/// `ω = (A⊗id)ad + ω^triv`.
pub fn potential(b: &Bundle, w: &Connection) -> Result<Vec<Elem>> {
    let mut out = Vec::new();
    for i in 0..w.table.len() {
        out.push(counit_part(b, &(&w.table[i] - &lift(b, &b.env.theta(i))?))?);
    }
    Ok(out)
}

/// `F = dA - ⟨A, A⟩`.
pub fn field_strength(b: &Bundle, pot: &[Elem]) -> Result<Vec<Elem>> {
    trivial_split(b)?;
    let a = b.alg();
    let mut out = Vec::new();
    for i in 0..pot.len() {
        let mut f = b.d(&pot[i])?;
        for ((x, y), c) in b.env.calc.delta(i).iter() {
            f.add_scaled(&a.mul(&pot[*x], &pot[*y])?, &-c);
        }
        out.push(f);
    }
    Ok(out)
}

/// Reconstruction of `ω` from its potential and of `R^ω` from the field
/// strength, plus base-valuedness of both.
pub fn potential_failures(b: &Bundle, w: &Connection) -> Result<Vec<String>> {
    let a = b.alg();
    let pot = potential(b, w)?;
    let field = field_strength(b, &pot)?;
    let mut bad = Vec::new();
    for i in 0..w.table.len() {
        let name = b.env.name_of(i);
        let mut rebuilt = lift(b, &b.env.theta(i))?;
        let mut curv = Elem::zero();
        for (j, e) in b.env.calc.ad(i).iter().enumerate() {
            let g = lift(b, e)?;
            rebuilt.add_assign(&a.mul(&pot[j], &g)?);
            curv.add_assign(&a.mul(&field[j], &g)?);
        }
        if rebuilt != w.table[i] {
            bad.push(format!("{} is not rebuilt from its potential at {name}", w.name));
        }
        if curv != b.curvature(w, i)? {
            bad.push(format!("curvature of {} is not (F⊗id)ad at {name}", w.name));
        }
        if !b.recognizer_accepts(&pot[i])? || !b.recognizer_accepts(&field[i])? {
            bad.push(format!("potential of {} leaves the base at {name}", w.name));
        }
    }
    Ok(bad)
}

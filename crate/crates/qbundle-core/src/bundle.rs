//! Quantum principal bundles with a differential calculus and the
//! connection layer on them.

use alloc::format;
use alloc::string::String;
use alloc::sync::Arc;
use alloc::vec;
use alloc::vec::Vec;

use crate::dga::DgAlgebra;
use crate::error::{Error, Result};
use crate::fodc::{Envelope, Inv};
use crate::hopf::Corep;
use crate::linalg;
use crate::ncalg::{Algebra, Elem, Gen, Word};
use crate::scalars::Scalar;
use crate::tensor::{self, Tensor};

/// Membership test for the base algebra `Ω(M)`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub enum BaseRecognizer {
    /// Words in a fixed set of generators.
    Generators(Vec<Gen>),
    /// Invariance under the coaction.
    Invariance,
}

/// A corepresentation with its generating intertwiners `x_ki` and the
/// matrices `Z` (positive, `d×d`) and `C` (`n×n`).
#[derive(Debug, Clone)]
pub struct RepData {
    pub corep: Corep,
    pub x: Vec<Vec<Elem>>,
    pub z: Vec<Vec<Scalar>>,
    pub c: Vec<Vec<Scalar>>,
}

fn identity(n: usize) -> Vec<Vec<Scalar>> {
    (0..n).map(|i| (0..n).map(|j| if i == j { Scalar::one() } else { Scalar::zero() }).collect()).collect()
}

impl RepData {
    pub fn new(corep: Corep, x: Vec<Vec<Elem>>, z: Vec<Vec<Scalar>>, c: Vec<Vec<Scalar>>) -> Result<Self> {
        let n = corep.dim();
        let d = x.len();
        if d == 0 || x.iter().any(|r| r.len() != n) {
            return Err(Error::DimensionMismatch(format!("generators of {} must be d×{n}", corep.name)));
        }
        if z.len() != d || z.iter().any(|r| r.len() != d) || c.len() != n || c.iter().any(|r| r.len() != n) {
            return Err(Error::DimensionMismatch(format!("Z or C for {}", corep.name)));
        }
        Ok(RepData { corep, x, z, c })
    }

    pub fn with_unit_matrices(corep: Corep, x: Vec<Vec<Elem>>) -> Result<Self> {
        let (d, n) = (x.len(), corep.dim());
        RepData::new(corep, x, identity(d), identity(n))
    }

    pub fn name(&self) -> &str {
        &self.corep.name
    }
    /// Number of generators `T^L_k`.
    pub fn d(&self) -> usize {
        self.x.len()
    }
    pub fn n(&self) -> usize {
        self.corep.dim()
    }

    /// `Y = Z⁻¹`.
    pub fn y(&self) -> Result<Vec<Vec<Scalar>>> {
        linalg::invert(&self.z).ok_or_else(|| Error::Unsolvable(format!("Z of {} is singular", self.name())))
    }

    /// `W = Z X C⁻¹`.
    pub fn w(&self) -> Result<Vec<Vec<Elem>>> {
        let ci = linalg::invert(&self.c).ok_or_else(|| Error::Unsolvable(format!("C of {} is singular", self.name())))?;
        let (d, n) = (self.d(), self.n());
        let mut out = vec![vec![Elem::zero(); n]; d];
        for (k, row) in out.iter_mut().enumerate() {
            for (i, o) in row.iter_mut().enumerate() {
                for l in 0..d {
                    for j in 0..n {
                        o.add_scaled(&self.x[l][j], &(&self.z[k][l] * &ci[j][i]));
                    }
                }
            }
        }
        Ok(out)
    }
}

#[derive(Debug, Clone)]
pub struct BundleSpec {
    pub name: String,
    pub omega: DgAlgebra,
    pub env: Arc<Envelope>,
    /// `Ψ` on every generator, as tensors over `[Ω(GM), Γ^∧]`.
    pub psi: Vec<Tensor>,
    pub base: BaseRecognizer,
    /// Letters spanning the horizontal forms.
    pub horizontal: Vec<Gen>,
    pub reps: Vec<RepData>,
    /// Word length of the horizontal spanning set.
    pub budget: usize,
}

pub const DEFAULT_BUDGET: usize = 4;

#[derive(Debug, Clone)]
pub struct Bundle {
    pub name: String,
    pub omega: DgAlgebra,
    pub env: Arc<Envelope>,
    psi: Vec<Tensor>,
    pub base: BaseRecognizer,
    horizontal: Vec<Gen>,
    pub reps: Vec<RepData>,
    pub budget: usize,
}

/// Connection form: the image of each basis element of `invΓ`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Connection {
    pub name: String,
    pub table: Vec<Elem>,
}

impl Connection {
    pub fn new(name: &str, table: Vec<Elem>) -> Self {
        Connection { name: name.into(), table }
    }
    pub fn displaced(&self, name: &str, lambda: &[Elem]) -> Connection {
        Connection { name: name.into(), table: self.table.iter().zip(lambda).map(|(a, b)| a + b).collect() }
    }
    pub fn difference(&self, other: &Connection) -> Vec<Elem> {
        self.table.iter().zip(&other.table).map(|(a, b)| a - b).collect()
    }
}

impl Bundle {
    pub fn new(spec: BundleSpec) -> Result<Self> {
        let a = &*spec.omega.alg;
        if spec.psi.len() != a.num_gens() {
            return Err(Error::DimensionMismatch("coaction table must cover every generator".into()));
        }
        let algs = [a, &**spec.env.alg()];
        let psi = spec.psi.iter().map(|t| tensor::nf(&algs, t)).collect::<Result<Vec<_>>>()?;
        Ok(Bundle {
            name: spec.name,
            omega: spec.omega,
            env: spec.env,
            psi,
            base: spec.base,
            horizontal: spec.horizontal,
            reps: spec.reps,
            budget: spec.budget,
        })
    }

    pub fn alg(&self) -> &Arc<Algebra> {
        &self.omega.alg
    }
    pub fn galg(&self) -> &Arc<Algebra> {
        self.env.alg()
    }
    fn algs(&self) -> [&Algebra; 2] {
        [&self.omega.alg, self.env.alg()]
    }
    pub fn d(&self, e: &Elem) -> Result<Elem> {
        self.omega.d(e)
    }
    pub fn rep(&self, name: &str) -> Result<&RepData> {
        self.reps
            .iter()
            .find(|r| r.name() == name)
            .ok_or_else(|| Error::RepresentationMismatch(format!("no representation `{name}` on {}", self.name)))
    }

    pub fn psi_word(&self, w: &[Gen]) -> Result<Tensor> {
        let algs = self.algs();
        let one = tensor::pure(&[&self.alg().one(), &self.galg().one()]);
        let mut acc = one;
        for &g in w {
            acc = tensor::mul(&algs, &acc, &self.psi[g as usize])?;
        }
        Ok(acc)
    }

    pub fn psi(&self, e: &Elem) -> Result<Tensor> {
        let mut out = Tensor::zero();
        for (w, c) in e.iter() {
            out.add_scaled(&self.psi_word(w)?, c);
        }
        Ok(out)
    }

    /// `d⊗id + (-1)^{|a|} id⊗d` on `[Ω(GM), Γ^∧]`.
    pub fn d_tensor(&self, t: &Tensor) -> Result<Tensor> {
        let a = self.alg();
        let mut out = Tensor::zero();
        for (ks, c) in t.iter() {
            let x = Elem::single(ks[0].clone(), Scalar::one());
            let y = Elem::single(ks[1].clone(), Scalar::one());
            out.add_scaled(&tensor::pure(&[&self.d(&x)?, &y]), c);
            let s = Scalar::sign(a.word_degree(&ks[0]));
            out.add_scaled(&tensor::pure(&[&x, &self.env.dga.d(&y)?]), &(c * &s));
        }
        Ok(out)
    }

    pub fn is_horizontal(&self, e: &Elem) -> Result<bool> {
        let g = self.galg();
        Ok(self.psi(e)?.keys().all(|k| g.word_degree(&k[1]) == 0))
    }

    pub fn is_base(&self, e: &Elem) -> Result<bool> {
        Ok(self.psi(e)? == tensor::pure(&[e, &self.galg().one()]))
    }

    pub fn recognizer_accepts(&self, e: &Elem) -> Result<bool> {
        match &self.base {
            BaseRecognizer::Generators(gs) => Ok(e.keys().all(|w| w.iter().all(|g| gs.contains(g)))),
            BaseRecognizer::Invariance => self.is_base(e),
        }
    }

    pub fn horizontal_generators(&self) -> &[Gen] {
        &self.horizontal
    }

    /// Spanning set of horizontal forms: irreducible words over the
    /// horizontal letters up to the budget.
    pub fn horizontal_words(&self) -> Vec<Word> {
        self.alg().irreducible_words_in(&self.horizontal, self.budget)
    }

    /// `β̃(a⊗b) = (a⊗1)Ψ(b)` on `[Ω(GM), Ω(GM)]`.
    pub fn beta(&self, t: &Tensor) -> Result<Tensor> {
        let algs = self.algs();
        let one = self.galg().one();
        let mut out = Tensor::zero();
        for (ks, c) in t.iter() {
            let a = Elem::single(ks[0].clone(), Scalar::one());
            let left = tensor::pure(&[&a, &one]);
            let b = self.psi_word(&ks[1])?;
            out.add_scaled(&tensor::mul(&algs, &left, &b)?, c);
        }
        Ok(out)
    }

    /// `qtrs` on a generator of the structure group that occurs as a
    /// matrix entry `g_ij` of a registered corepresentation.
    pub fn qtrs_generator(&self, g: Gen) -> Result<Tensor> {
        let h = &self.env.calc.hopf;
        let ge = h.alg.gen_elem(g);
        for r in &self.reps {
            for i in 0..r.n() {
                for j in 0..r.n() {
                    if r.corep.entry(i, j) == &ge {
                        return self.qtrs_entry(r, i, j);
                    }
                }
            }
        }
        Err(Error::OutsideTable(format!("{} is not a registered matrix entry", h.alg.gen_info(g).name)))
    }

    /// `Σ_k x*_ki ⊗ x_kj`.
    pub fn qtrs_entry(&self, r: &RepData, i: usize, j: usize) -> Result<Tensor> {
        let a = self.alg();
        let mut t = Tensor::zero();
        for k in 0..r.d() {
            t.add_assign(&tensor::pure(&[&a.star(&r.x[k][i])?, &r.x[k][j]]));
        }
        Ok(t)
    }

    /// Structural report: coaction axioms, base characterization, the
    /// conditions on every registered representation and β-surjectivity.
    pub fn check_qpb(&self) -> Result<Vec<String>> {
        let a = &**self.alg();
        let g = &**self.galg();
        let algs = self.algs();
        let gh = &self.env.hopf;
        let mut bad = Vec::new();
        for x in 0..a.num_gens() as Gen {
            let name = &a.gen_info(x).name;
            let e = a.gen_elem(x);
            let p = &self.psi[x as usize];
            if p.keys().any(|k| a.word_degree(&k[0]) + g.word_degree(&k[1]) != a.gen_info(x).degree as usize) {
                bad.push(format!("Ψ({name}) is not homogeneous"));
            }
            let mut co = Elem::zero();
            for (k, c) in p.iter() {
                co.add_term(k[0].clone(), c * &gh.counit_word(&k[1]));
            }
            if a.nf(&co)? != e {
                bad.push(format!("(id⊗ε)Ψ({name}) ≠ {name}"));
            }
            let mut l3 = Tensor::zero();
            let mut r3 = Tensor::zero();
            for (k, c) in p.iter() {
                for (k0, d) in self.psi_word(&k[0])?.iter() {
                    l3.add_term(vec![k0[0].clone(), k0[1].clone(), k[1].clone()], c * d);
                }
                for (k1, d) in gh.coproduct_word(&k[1])?.iter() {
                    r3.add_term(vec![k[0].clone(), k1[0].clone(), k1[1].clone()], c * d);
                }
            }
            if l3 != r3 {
                bad.push(format!("coaction is not coassociative on {name}"));
            }
            if self.psi(&a.star(&e)?)? != tensor::star(&algs, p)? {
                bad.push(format!("Ψ does not commute with * on {name}"));
            }
            if self.psi(&self.d(&e)?)? != self.d_tensor(p)? {
                bad.push(format!("Ψ does not commute with d on {name}"));
            }
        }
        for r in a.rules() {
            if self.psi_word(&r.lhs)? != self.psi(&r.rhs)? {
                bad.push(format!("Ψ does not respect {} -> {}", a.word_str(&r.lhs), a.fmt(&r.rhs)));
            }
        }
        for w in a.irreducible_words(3) {
            let e = Elem::single(w, Scalar::one());
            if self.recognizer_accepts(&e)? != self.is_base(&e)? {
                bad.push(format!("base recognizer disagrees with invariance on {}", a.fmt(&e)));
            }
        }
        for r in &self.reps {
            bad.extend(self.check_rep(r)?);
        }
        let hg = &self.env.calc.hopf.alg;
        for x in 0..hg.num_gens() as Gen {
            match self.qtrs_generator(x) {
                Ok(t) => {
                    let want = tensor::pure(&[&a.one(), &hg.gen_elem(x)]);
                    if self.beta(&t)? != want {
                        bad.push(format!("β(qtrs({})) ≠ 1⊗{}", hg.gen_info(x).name, hg.gen_info(x).name));
                    }
                }
                Err(_) => bad.push(format!("no translation witness for {}", hg.gen_info(x).name)),
            }
        }
        Ok(bad)
    }

    /// The normalization identities and intertwining of the `x_ki`.
    pub fn check_rep(&self, r: &RepData) -> Result<Vec<String>> {
        let a = &**self.alg();
        let mut bad = Vec::new();
        let n = r.n();
        let delta = |i: usize, j: usize| if i == j { a.one() } else { Elem::zero() };
        let w = r.w()?;
        for i in 0..n {
            for j in 0..n {
                let mut s = Elem::zero();
                let mut t = Elem::zero();
                for k in 0..r.d() {
                    s.add_assign(&a.mul(&a.star(&r.x[k][i])?, &r.x[k][j])?);
                    t.add_assign(&a.mul(&w[k][i], &a.star(&r.x[k][j])?)?);
                }
                if s != delta(i, j) {
                    bad.push(format!("Σ_k x*_ki x_kj ≠ δ_ij for ({}, {i}, {j}): {}", r.name(), a.fmt(&s)));
                }
                if t != delta(i, j) {
                    bad.push(format!("Σ_k w_ki x*_kj ≠ δ_ij for ({}, {i}, {j}): {}", r.name(), a.fmt(&t)));
                }
            }
        }
        for k in 0..r.d() {
            if !self.is_intertwiner(r, &r.x[k])? {
                bad.push(format!("generator {k} of {} is not an intertwiner", r.name()));
            }
        }
        if r.y().is_err() {
            bad.push(format!("Z of {} is singular", r.name()));
        }
        Ok(bad)
    }

    /// `Ψ(τ(e_i)) = Σ_j τ(e_j) ⊗ g_ji`.
    pub fn is_intertwiner(&self, r: &RepData, values: &[Elem]) -> Result<bool> {
        crate::hopf::is_intertwiner(&r.corep, values, &|e| self.psi(e))
    }

    // ---- connections

    pub fn omega_of(&self, w: &Connection, v: &Inv) -> Elem {
        let mut out = Elem::zero();
        for (i, c) in v.iter() {
            out.add_scaled(&w.table[*i], c);
        }
        out
    }

    /// `(λ⊗id)ad(θ)` for a table `λ` on the basis.
    pub fn ad_image(&self, table: &dyn Fn(usize) -> Result<Elem>, i: usize) -> Result<Tensor> {
        let mut t = Tensor::zero();
        for (j, e) in self.env.calc.ad(i).iter().enumerate() {
            t.add_assign(&tensor::pure(&[&table(j)?, e]));
        }
        Ok(t)
    }

    /// Basis elements where `Ψ(ω(θ)) ≠ (ω⊗id)ad(θ) + 𝟙⊗θ`.
    pub fn connection_failures(&self, w: &Connection) -> Result<Vec<String>> {
        let mut bad = Vec::new();
        if w.table.len() != self.env.calc.dim() {
            bad.push(format!("{} has {} entries", w.name, w.table.len()));
            return Ok(bad);
        }
        for i in 0..w.table.len() {
            let mut want = self.ad_image(&|j| Ok(w.table[j].clone()), i)?;
            want.add_assign(&tensor::pure(&[&self.alg().one(), &self.env.theta(i)]));
            if self.psi(&w.table[i])? != want {
                bad.push(format!("{} fails the connection condition on {}", w.name, self.env.name_of(i)));
            }
        }
        Ok(bad)
    }

    pub fn check_connection(&self, w: &Connection) -> Result<bool> {
        Ok(self.connection_failures(w)?.is_empty())
    }

    fn require(&self, w: &Connection) -> Result<()> {
        match self.connection_failures(w)?.into_iter().next() {
            Some(s) => Err(Error::NotAConnection(s)),
            None => Ok(()),
        }
    }

    /// `λ ∈ Mor¹(ad, Ψ)`: covariant degree-1 horizontal table.
    pub fn is_displacement(&self, lambda: &[Elem]) -> Result<bool> {
        for (i, l) in lambda.iter().enumerate() {
            if self.psi(l)? != self.ad_image(&|j| Ok(lambda[j].clone()), i)? || !self.is_horizontal(l)? {
                return Ok(false);
            }
        }
        Ok(true)
    }

    /// `ω̂(θ) = ω(θ*)*`.
    pub fn dual(&self, w: &Connection) -> Result<Connection> {
        let a = self.alg();
        let mut table = Vec::new();
        for i in 0..w.table.len() {
            let (c, j) = self.env.calc.star(i);
            table.push(a.star(&w.table[j].scale(&c))?);
        }
        Ok(Connection { name: format!("{}^", w.name), table })
    }

    pub fn is_real(&self, w: &Connection) -> Result<bool> {
        Ok(self.dual(w)?.table == w.table)
    }

    pub fn is_imaginary(&self, w: &Connection) -> Result<bool> {
        Ok(self.dual(w)?.table.iter().zip(&w.table).all(|(a, b)| a == &-b))
    }

    /// `Ψ(φ) = Σ φ⁽⁰⁾ ⊗ φ⁽¹⁾` with `φ⁽¹⁾ ∈ G`, as `(φ⁽⁰⁾ word, φ⁽¹⁾ word, coefficient)`.
    fn horizontal_legs(&self, e: &Elem) -> Result<Tensor> {
        let t = self.psi(e)?;
        let g = self.galg();
        if let Some(k) = t.keys().find(|k| g.word_degree(&k[1]) > 0) {
            return Err(Error::NotHorizontal(format!(
                "{} has vertical leg {}",
                self.alg().fmt(e),
                g.word_str(&k[1])
            )));
        }
        Ok(t)
    }

    /// `D(φ) = dφ - (-1)^k φ⁽⁰⁾ω(π(φ⁽¹⁾))`.
    pub fn cov_deriv(&self, w: &Connection, phi: &Elem) -> Result<Elem> {
        let a = self.alg();
        let calc = &self.env.calc;
        let mut out = self.d(phi)?;
        for (k, c) in self.horizontal_legs(phi)?.iter() {
            let p = calc.germs(&Elem::single(k[1].clone(), Scalar::one()))?;
            let s = Scalar::sign(a.word_degree(&k[0]));
            let x = a.mul(&Elem::single(k[0].clone(), Scalar::one()), &self.omega_of(w, &p))?;
            out.add_scaled(&x, &-&(c * &s));
        }
        Ok(out)
    }

    /// `D̂ = * ∘ D ∘ *`.
    pub fn dual_cov_deriv(&self, w: &Connection, phi: &Elem) -> Result<Elem> {
        let a = self.alg();
        a.star(&self.cov_deriv(w, &a.star(phi)?)?)
    }

    /// `ℓ(θ, φ) = ω(θ)φ - (-1)^k φ⁽⁰⁾ω(θ∘φ⁽¹⁾)`.
    pub fn ell(&self, w: &Connection, theta: &Inv, phi: &Elem) -> Result<Elem> {
        let a = self.alg();
        let calc = &self.env.calc;
        let mut out = a.mul(&self.omega_of(w, theta), phi)?;
        for (k, c) in self.horizontal_legs(phi)?.iter() {
            let p = calc.circ(theta, &Elem::single(k[1].clone(), Scalar::one()))?;
            let s = Scalar::sign(a.word_degree(&k[0]));
            let x = a.mul(&Elem::single(k[0].clone(), Scalar::one()), &self.omega_of(w, &p))?;
            out.add_scaled(&x, &-&(c * &s));
        }
        Ok(out)
    }

    /// Witnesses `(θ, φ)` with `ℓ(θ, φ) ≠ 0` on the horizontal spanning set.
    pub fn regularity_witnesses(&self, w: &Connection) -> Result<Vec<(usize, Word, Elem)>> {
        self.require(w)?;
        let mut out = Vec::new();
        for word in self.horizontal_words() {
            let phi = Elem::single(word.clone(), Scalar::one());
            for i in 0..self.env.calc.dim() {
                let l = self.ell(w, &Inv::single(i, Scalar::one()), &phi)?;
                if !l.is_zero() {
                    out.push((i, word.clone(), l));
                }
            }
        }
        Ok(out)
    }

    pub fn is_regular(&self, w: &Connection) -> Result<bool> {
        Ok(self.regularity_witnesses(w)?.is_empty())
    }

    /// `m(ω⊗ω)` vanishes on `(π⊗π)φ(ℛ)`.
    pub fn is_multiplicative(&self, w: &Connection) -> Result<bool> {
        let a = self.alg();
        for (_, row) in self.env.calc.wedge_relations().rows() {
            let mut s = Elem::zero();
            for ((i, j), c) in row.iter() {
                s.add_scaled(&a.mul(&w.table[*i], &w.table[*j])?, c);
            }
            if !s.is_zero() {
                return Ok(false);
            }
        }
        Ok(true)
    }

    /// `R(θ) = dω(θ) - m(ω⊗ω)δ(θ)`.
    pub fn curvature(&self, w: &Connection, i: usize) -> Result<Elem> {
        let a = self.alg();
        let mut r = self.d(&w.table[i])?;
        for ((x, y), c) in self.env.calc.delta(i).iter() {
            r.add_scaled(&a.mul(&w.table[*x], &w.table[*y])?, &-c);
        }
        Ok(r)
    }

    /// `Ψ(R(θ)) = (R⊗id)ad(θ)` on the basis.
    pub fn curvature_is_covariant(&self, w: &Connection) -> Result<bool> {
        let n = self.env.calc.dim();
        let rs = (0..n).map(|i| self.curvature(w, i)).collect::<Result<Vec<_>>>()?;
        for (i, r) in rs.iter().enumerate() {
            if self.psi(r)? != self.ad_image(&|j| Ok(rs[j].clone()), i)? {
                return Ok(false);
            }
        }
        Ok(true)
    }

    /// Failures of the covariant-derivative identities on the horizontal
    /// spanning set: horizontality and covariance of `D` and `D̂`, `D = d`
    /// on the base, the dual formula, and the Leibniz and star defect formulas
    /// on pairs of short words.
    pub fn cov_deriv_identities(&self, w: &Connection) -> Result<Vec<String>> {
        self.require(w)?;
        let a = &**self.alg();
        let calc = &self.env.calc;
        let gh = &calc.hopf;
        let hat = self.dual(w)?;
        let diff = w.difference(&hat);
        let diffc = Connection::new("ω-ω^", diff);
        let mut bad = Vec::new();
        let words = self.horizontal_words();
        for word in &words {
            let phi = Elem::single(word.clone(), Scalar::one());
            let show = a.fmt(&phi);
            let dphi = self.cov_deriv(w, &phi)?;
            let dhat = self.dual_cov_deriv(w, &phi)?;
            for (label, v) in [("D", &dphi), ("D^", &dhat)] {
                if !self.is_horizontal(v)? {
                    bad.push(format!("{label}({show}) is not horizontal"));
                    continue;
                }
                let mut want = Tensor::zero();
                for (k, c) in self.psi(&phi)?.iter() {
                    let x = Elem::single(k[0].clone(), Scalar::one());
                    let y = Elem::single(k[1].clone(), Scalar::one());
                    let dx = if label == "D" { self.cov_deriv(w, &x)? } else { self.dual_cov_deriv(w, &x)? };
                    want.add_scaled(&tensor::pure(&[&dx, &y]), c);
                }
                if self.psi(v)? != want {
                    bad.push(format!("{label} is not covariant on {show}"));
                }
            }
            if self.recognizer_accepts(&phi)? && dphi != self.d(&phi)? {
                bad.push(format!("D ≠ d on base element {show}"));
            }
            // D̂φ = Dφ + ℓ^{ω̂}(π(κ⁻¹(φ⁽¹⁾)), φ⁽⁰⁾) + (-1)^k φ⁽⁰⁾(ω-ω̂)(π(φ⁽¹⁾))
            let mut rhs = dphi.clone();
            for (k, c) in self.psi(&phi)?.iter() {
                let x = Elem::single(k[0].clone(), Scalar::one());
                let g = Elem::single(k[1].clone(), Scalar::one());
                let th = calc.germs(&gh.antipode_inv(&g)?)?;
                rhs.add_scaled(&self.ell(&hat, &th, &x)?, c);
                let s = Scalar::sign(a.word_degree(&k[0]));
                let p = calc.germs(&g)?;
                rhs.add_scaled(&a.mul(&x, &self.omega_of(&diffc, &p))?, &(c * &s));
            }
            if rhs != dhat {
                bad.push(format!("dual covariant derivative formula fails on {show}"));
            }
            // D(ψ)* = D^{ω̂}(ψ*) + ℓ^{ω̂}(π(κ(ψ⁽¹⁾)*), ψ⁽⁰⁾*)
            let mut rhs = self.cov_deriv(&hat, &a.star(&phi)?)?;
            for (k, c) in self.psi(&phi)?.iter() {
                let x = Elem::single(k[0].clone(), Scalar::one());
                let g = Elem::single(k[1].clone(), Scalar::one());
                let th = calc.germs(&gh.alg.star(&gh.antipode(&g)?)?)?;
                rhs.add_scaled(&self.ell(&hat, &th, &a.star(&x)?)?, &c.conj());
            }
            if a.star(&dphi)? != rhs {
                bad.push(format!("star formula for D fails on {show}"));
            }
        }
        let short: Vec<&Word> = words.iter().filter(|w| w.len() <= 2).collect();
        for u in &short {
            for v in &short {
                let phi = Elem::single((*u).clone(), Scalar::one());
                let psi = Elem::single((*v).clone(), Scalar::one());
                let k = a.word_degree(u);
                let s = Scalar::sign(k);
                let lhs = self.cov_deriv(w, &a.mul(&phi, &psi)?)?;
                let mut rhs = a.mul(&self.cov_deriv(w, &phi)?, &psi)?;
                rhs.add_scaled(&a.mul(&phi, &self.cov_deriv(w, &psi)?)?, &s);
                for (kk, c) in self.psi(&phi)?.iter() {
                    let x = Elem::single(kk[0].clone(), Scalar::one());
                    let p = calc.germs(&Elem::single(kk[1].clone(), Scalar::one()))?;
                    rhs.add_scaled(&a.mul(&x, &self.ell(w, &p, &psi)?)?, &(c * &s));
                }
                if lhs != rhs {
                    bad.push(format!("Leibniz defect formula fails on ({}, {})", a.fmt(&phi), a.fmt(&psi)));
                }
            }
        }
        Ok(bad)
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn unit_matrices() {
        assert_eq!(identity(2)[1][1], Scalar::one());
        assert!(identity(2)[0][1].is_zero());
    }
}

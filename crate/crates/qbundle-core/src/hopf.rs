//! Hopf *-algebra structure on a presented (possibly graded) algebra,
//! corepresentations, convolution and characters.

use alloc::format;
use alloc::string::String;
use alloc::sync::Arc;
use alloc::vec;
use alloc::vec::Vec;

use crate::error::{Error, Result};
use crate::ncalg::{Algebra, Elem, Gen, Word};
use crate::scalars::Scalar;
use crate::tensor::{self, Tensor};

/// Coproduct, counit and antipode given on generators. Graded algebras use
/// the Koszul sign rule in the coproduct and a graded antipode.
#[derive(Debug, Clone)]
pub struct Hopf {
    pub alg: Arc<Algebra>,
    coprod: Vec<Tensor>,
    counit: Vec<Scalar>,
    antipode: Vec<Elem>,
}

impl Hopf {
    pub fn new(alg: Arc<Algebra>, coprod: Vec<Tensor>, counit: Vec<Scalar>, antipode: Vec<Elem>) -> Result<Self> {
        let n = alg.num_gens();
        if coprod.len() != n || counit.len() != n || antipode.len() != n {
            return Err(Error::DimensionMismatch("Hopf tables must cover every generator".into()));
        }
        let a2 = [&*alg, &*alg];
        let coprod = coprod.iter().map(|t| tensor::nf(&a2, t)).collect::<Result<Vec<_>>>()?;
        let antipode = antipode.iter().map(|e| alg.nf(e)).collect::<Result<Vec<_>>>()?;
        Ok(Hopf { alg, coprod, counit, antipode })
    }

    /// Parse generator tables written in the expression grammar.
    pub fn from_strs(alg: Arc<Algebra>, table: &[(&str, &str, &str, &str)]) -> Result<Self> {
        let n = alg.num_gens();
        let mut coprod = vec![None; n];
        let mut counit = vec![None; n];
        let mut antipode = vec![None; n];
        for (g, phi, eps, kappa) in table {
            let i = alg.gen(g)? as usize;
            coprod[i] = Some(crate::expr::parse_tensor(&[&alg, &alg], phi)?);
            counit[i] = Some(Scalar::parse(eps)?);
            antipode[i] = Some(alg.parse(kappa)?);
        }
        let missing = || Error::DimensionMismatch("Hopf table misses a generator".into());
        let coprod = coprod.into_iter().map(|x| x.ok_or_else(missing)).collect::<Result<Vec<_>>>()?;
        let counit = counit.into_iter().map(|x| x.ok_or_else(missing)).collect::<Result<Vec<_>>>()?;
        let antipode = antipode.into_iter().map(|x| x.ok_or_else(missing)).collect::<Result<Vec<_>>>()?;
        Hopf::new(alg, coprod, counit, antipode)
    }

    fn a2(&self) -> [&Algebra; 2] {
        [&self.alg, &self.alg]
    }

    pub fn coproduct_word(&self, w: &[Gen]) -> Result<Tensor> {
        let a2 = self.a2();
        let mut acc = tensor::pure(&[&self.alg.one(), &self.alg.one()]);
        for &g in w {
            acc = tensor::mul(&a2, &acc, &self.coprod[g as usize])?;
        }
        Ok(acc)
    }

    pub fn coproduct(&self, e: &Elem) -> Result<Tensor> {
        let mut out = Tensor::zero();
        for (w, c) in e.iter() {
            out.add_scaled(&self.coproduct_word(w)?, c);
        }
        Ok(out)
    }

    pub fn counit_word(&self, w: &[Gen]) -> Scalar {
        let mut acc = Scalar::one();
        for &g in w {
            if self.alg.gen_info(g).degree > 0 {
                return Scalar::zero();
            }
            acc *= &self.counit[g as usize];
        }
        acc
    }

    pub fn counit(&self, e: &Elem) -> Scalar {
        let mut acc = Scalar::zero();
        for (w, c) in e.iter() {
            acc = acc + c * &self.counit_word(w);
        }
        acc
    }

    /// Graded antimultiplicative extension: `κ(ab) = (-1)^{|a||b|} κ(b)κ(a)`.
    pub fn antipode_word(&self, w: &[Gen]) -> Result<Elem> {
        let mut acc = self.alg.one();
        for &g in w {
            // prepend κ(g) to the product built so far
            acc = self.alg.mul(&self.antipode[g as usize], &acc)?;
        }
        Ok(acc.scale(&self.alg.reversal_sign(w)))
    }

    pub fn antipode(&self, e: &Elem) -> Result<Elem> {
        e.map_linear(|w| self.antipode_word(w))
    }

    /// `κ⁻¹ = * ∘ κ ∘ *`.
    pub fn antipode_inv(&self, e: &Elem) -> Result<Elem> {
        self.alg.star(&self.antipode(&self.alg.star(e)?)?)
    }

    /// Axioms on generators, compatibility with every relation and with `*`.
    /// Returns the failing items.
    pub fn validate(&self) -> Result<Vec<String>> {
        let a = &*self.alg;
        let a2 = self.a2();
        let a3 = [a, a, a];
        let mut bad = Vec::new();
        for g in 0..a.num_gens() as Gen {
            let x = a.gen_elem(g);
            let name = &a.gen_info(g).name;
            let phi = &self.coprod[g as usize];
            let mut left = Elem::zero();
            let mut right = Elem::zero();
            for (ks, c) in phi.iter() {
                left.add_term(ks[1].clone(), c * &self.counit_word(&ks[0]));
                right.add_term(ks[0].clone(), c * &self.counit_word(&ks[1]));
            }
            if left != x || right != x {
                bad.push(format!("counit law fails on {name}"));
            }
            let mut l3 = Tensor::zero();
            let mut r3 = Tensor::zero();
            for (ks, c) in phi.iter() {
                for (k1, d) in self.coproduct_word(&ks[0])?.iter() {
                    l3.add_term(vec![k1[0].clone(), k1[1].clone(), ks[1].clone()], c * d);
                }
                for (k2, d) in self.coproduct_word(&ks[1])?.iter() {
                    r3.add_term(vec![ks[0].clone(), k2[0].clone(), k2[1].clone()], c * d);
                }
            }
            if tensor::nf(&a3, &l3)? != tensor::nf(&a3, &r3)? {
                bad.push(format!("coassociativity fails on {name}"));
            }
            let eps = a.scalar(self.counit_word(&[g]));
            let mut m1 = Elem::zero();
            let mut m2 = Elem::zero();
            for (ks, c) in phi.iter() {
                let k0 = self.antipode_word(&ks[0])?;
                m1.add_scaled(&a.mul(&k0, &Elem::single(ks[1].clone(), Scalar::one()))?, c);
                let k1 = self.antipode_word(&ks[1])?;
                m2.add_scaled(&a.mul(&Elem::single(ks[0].clone(), Scalar::one()), &k1)?, c);
            }
            if m1 != eps || m2 != eps {
                bad.push(format!("antipode law fails on {name}"));
            }
            let star_phi = tensor::star(&a2, phi)?;
            if self.coproduct(&a.star(&x)?)? != star_phi {
                bad.push(format!("coproduct does not commute with * on {name}"));
            }
            if self.counit(&a.star(&x)?) != self.counit_word(&[g]).conj() {
                bad.push(format!("counit does not commute with * on {name}"));
            }
            let kk = a.star(&self.antipode(&a.star(&self.antipode(&x)?)?)?)?;
            if kk != x {
                bad.push(format!("κ(κ(g)*)* ≠ g on {name}"));
            }
        }
        for r in a.rules() {
            let lhs = Elem::single(r.lhs.clone(), Scalar::one());
            let show = format!("{} -> {}", a.word_str(&r.lhs), a.fmt(&r.rhs));
            if self.coproduct(&lhs)? != self.coproduct(&r.rhs)? {
                bad.push(format!("coproduct does not respect {show}"));
            }
            if self.counit(&lhs) != self.counit(&r.rhs) {
                bad.push(format!("counit does not respect {show}"));
            }
            if self.antipode(&lhs)? != self.antipode(&r.rhs)? {
                bad.push(format!("antipode does not respect {show}"));
            }
        }
        Ok(bad)
    }

    /// `m ∘ (f ⊗ g) ∘ φ` evaluated on `e`, for even maps into `target`.
    pub fn convolve(
        &self,
        target: &Algebra,
        f: &dyn Fn(&Word) -> Result<Elem>,
        g: &dyn Fn(&Word) -> Result<Elem>,
        e: &Elem,
    ) -> Result<Elem> {
        let mut out = Elem::zero();
        for (ks, c) in self.coproduct(e)?.iter() {
            out.add_scaled(&target.mul(&f(&ks[0])?, &g(&ks[1])?)?, c);
        }
        Ok(out)
    }
}

/// Finite-dimensional corepresentation `e_i ↦ Σ_j e_j ⊗ g_ji`.
#[derive(Debug, Clone)]
pub struct Corep {
    pub name: String,
    pub matrix: Vec<Vec<Elem>>,
}

/// Outcome of the corepresentation checks, one list of failures per identity.
#[derive(Debug, Clone, Default, PartialEq, Eq)]
pub struct CorepReport {
    pub comatrix: Vec<String>,
    pub antipode_orthogonality: Vec<String>,
    pub unitarity: Vec<String>,
    pub invariance: Vec<String>,
}

impl CorepReport {
    pub fn passed(&self) -> bool {
        self.comatrix.is_empty()
            && self.antipode_orthogonality.is_empty()
            && self.unitarity.is_empty()
            && self.invariance.is_empty()
    }
}

impl Corep {
    pub fn new(name: &str, matrix: Vec<Vec<Elem>>) -> Result<Self> {
        let n = matrix.len();
        if n == 0 || matrix.iter().any(|r| r.len() != n) {
            return Err(Error::DimensionMismatch(format!("corepresentation {name} needs a square matrix")));
        }
        Ok(Corep { name: name.into(), matrix })
    }
    pub fn from_strs(h: &Hopf, name: &str, rows: &[&[&str]]) -> Result<Self> {
        let m = rows.iter().map(|r| r.iter().map(|s| h.alg.parse(s)).collect::<Result<Vec<_>>>()).collect::<Result<_>>()?;
        Corep::new(name, m)
    }
    pub fn dim(&self) -> usize {
        self.matrix.len()
    }
    pub fn entry(&self, i: usize, j: usize) -> &Elem {
        &self.matrix[i][j]
    }

    /// Comatrix identities, `Σ_k g*_ik κ(g*_kj) = δ_ij`, `Σ_k g*_ki g_kj = δ_ij`
    /// and invariance of the standard inner product.
    pub fn check(&self, h: &Hopf) -> Result<CorepReport> {
        let a = &*h.alg;
        let n = self.dim();
        let mut rep = CorepReport::default();
        let delta = |i: usize, j: usize| if i == j { a.one() } else { Elem::zero() };
        for i in 0..n {
            for j in 0..n {
                let mut want = Tensor::zero();
                for k in 0..n {
                    want.add_assign(&tensor_pair(&self.matrix[i][k], &self.matrix[k][j]));
                }
                if h.coproduct(&self.matrix[i][j])? != want {
                    rep.comatrix.push(format!("φ(g_{i}{j}) ≠ Σ g_{i}k ⊗ g_k{j}"));
                }
                let e = h.counit(&self.matrix[i][j]);
                let want_e = if i == j { Scalar::one() } else { Scalar::zero() };
                if e != want_e {
                    rep.comatrix.push(format!("ε(g_{i}{j}) = {e}"));
                }
                let mut s1 = Elem::zero();
                let mut s2 = Elem::zero();
                for k in 0..n {
                    let gik = a.star(&self.matrix[i][k])?;
                    let gkj = a.star(&self.matrix[k][j])?;
                    s1.add_assign(&a.mul(&gik, &h.antipode(&gkj)?)?);
                    let gki = a.star(&self.matrix[k][i])?;
                    s2.add_assign(&a.mul(&gki, &self.matrix[k][j])?);
                }
                if s1 != delta(i, j) {
                    rep.antipode_orthogonality.push(format!("Σ_k g*_{i}k κ(g*_k{j}) = {}", a.fmt(&s1)));
                }
                if s2 != delta(i, j) {
                    rep.unitarity.push(format!("Σ_k g*_k{i} g_k{j} = {}", a.fmt(&s2)));
                }
            }
        }
        // ⟨v1|v2⟩ 1 = Σ ⟨v1k|v2l⟩ g*_1k g_2l on pairs of basis vectors
        for i in 0..n {
            for j in 0..n {
                let mut s = Elem::zero();
                for k in 0..n {
                    let c = a.star(&self.matrix[k][i])?;
                    s.add_assign(&a.mul(&c, &self.matrix[k][j])?);
                }
                if s != delta(i, j) {
                    rep.invariance.push(format!("inner product not invariant on (e_{i}, e_{j})"));
                }
            }
        }
        Ok(rep)
    }

    /// `Σ_k g*_ik g_jk`, the row-wise variant of the unitarity sum.
    pub fn row_unitarity_sum(&self, h: &Hopf, i: usize, j: usize) -> Result<Elem> {
        let a = &*h.alg;
        let mut s = Elem::zero();
        for k in 0..self.dim() {
            s.add_assign(&a.mul(&a.star(&self.matrix[i][k])?, &self.matrix[j][k])?);
        }
        Ok(s)
    }

    /// Coaction on a coordinate vector: `Σ_i v_i Σ_j e_j ⊗ g_ji`, returned per `e_j`.
    pub fn apply(&self, v: &[Scalar]) -> Result<Vec<Elem>> {
        let n = self.dim();
        if v.len() != n {
            return Err(Error::DimensionMismatch(format!("vector of length {} for {n}-dimensional {}", v.len(), self.name)));
        }
        let mut out = vec![Elem::zero(); n];
        for (i, vi) in v.iter().enumerate() {
            for (j, o) in out.iter_mut().enumerate() {
                o.add_scaled(&self.matrix[j][i], vi);
            }
        }
        Ok(out)
    }

    /// Direct sum of two corepresentations.
    pub fn direct_sum(&self, other: &Corep) -> Corep {
        let (n, m) = (self.dim(), other.dim());
        let mut mat = vec![vec![Elem::zero(); n + m]; n + m];
        for i in 0..n {
            for j in 0..n {
                mat[i][j] = self.matrix[i][j].clone();
            }
        }
        for i in 0..m {
            for j in 0..m {
                mat[n + i][n + j] = other.matrix[i][j].clone();
            }
        }
        Corep { name: format!("{}⊕{}", self.name, other.name), matrix: mat }
    }

    /// Diagonal witness of reducibility: all off-diagonal entries vanish.
    pub fn is_diagonal(&self) -> bool {
        let n = self.dim();
        (0..n).all(|i| (0..n).all(|j| i == j || self.matrix[i][j].is_zero()))
    }
}

fn tensor_pair(a: &Elem, b: &Elem) -> Tensor {
    tensor::pure(&[a, b])
}

/// `(T ⊗ id) ∘ α = β ∘ T` on the basis of `V^α`. `values[i]` is `T(e_i)` in the
/// target, and `target_coaction` evaluates `β`, both as tensors over
/// `[target, G]`.
pub fn is_intertwiner(
    corep: &Corep,
    values: &[Elem],
    target_coaction: &dyn Fn(&Elem) -> Result<Tensor>,
) -> Result<bool> {
    if values.len() != corep.dim() {
        return Err(Error::DimensionMismatch("intertwiner values".into()));
    }
    for i in 0..corep.dim() {
        let mut lhs = Tensor::zero();
        for (j, v) in values.iter().enumerate() {
            lhs.add_assign(&tensor::pure(&[v, &corep.matrix[j][i]]));
        }
        if target_coaction(&values[i])? != lhs {
            return Ok(false);
        }
    }
    Ok(true)
}

/// A character: scalar values on generators extended multiplicatively.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Character(pub Vec<Scalar>);

impl Character {
    pub fn counit(h: &Hopf) -> Character {
        Character((0..h.alg.num_gens() as Gen).map(|g| h.counit_word(&[g])).collect())
    }

    pub fn eval_word(&self, h: &Hopf, w: &[Gen]) -> Scalar {
        let mut acc = Scalar::one();
        for &g in w {
            if h.alg.gen_info(g).degree > 0 {
                return Scalar::zero();
            }
            acc *= &self.0[g as usize];
        }
        acc
    }

    pub fn eval(&self, h: &Hopf, e: &Elem) -> Scalar {
        e.iter().fold(Scalar::zero(), |acc, (w, c)| acc + c * &self.eval_word(h, w))
    }

    /// Multiplicativity on every relation.
    pub fn respects_relations(&self, h: &Hopf) -> bool {
        h.alg.rules().iter().all(|r| self.eval_word(h, &r.lhs) == self.eval(h, &r.rhs))
    }

    /// `(χ₁ ∗ χ₂)(g) = (χ₁ ⊗ χ₂) φ(g)` on generators.
    pub fn convolve(&self, other: &Character, h: &Hopf) -> Result<Character> {
        let mut v = Vec::new();
        for g in 0..h.alg.num_gens() as Gen {
            let mut s = Scalar::zero();
            for (ks, c) in h.coproduct_word(&[g])?.iter() {
                s = s + c * &(self.eval_word(h, &ks[0]) * other.eval_word(h, &ks[1]));
            }
            v.push(s);
        }
        Ok(Character(v))
    }

    /// `χ⁻¹ = χ ∘ κ`.
    pub fn inverse(&self, h: &Hopf) -> Result<Character> {
        let mut v = Vec::new();
        for g in 0..h.alg.num_gens() as Gen {
            v.push(self.eval(h, &h.antipode_word(&[g])?));
        }
        Ok(Character(v))
    }

    /// `(id ⊗ χ)φ = (χ ⊗ id)φ` on generators.
    pub fn is_central(&self, h: &Hopf) -> Result<bool> {
        for g in 0..h.alg.num_gens() as Gen {
            let phi = h.coproduct_word(&[g])?;
            let mut l = Elem::zero();
            let mut r = Elem::zero();
            for (ks, c) in phi.iter() {
                l.add_term(ks[0].clone(), c * &self.eval_word(h, &ks[1]));
                r.add_term(ks[1].clone(), c * &self.eval_word(h, &ks[0]));
            }
            if h.alg.nf(&l)? != h.alg.nf(&r)? {
                return Ok(false);
            }
        }
        Ok(true)
    }
}

#[cfg(test)]
pub(crate) mod tests {
    use super::*;
    use crate::ncalg::tests::{suq2, u1};

    pub fn u1_hopf() -> Hopf {
        let a = Arc::new(u1());
        Hopf::from_strs(a, &[("z", "z⊗z", "1", "z*"), ("z*", "z*⊗z*", "1", "z")]).unwrap()
    }

    pub fn suq2_hopf() -> Hopf {
        let a = Arc::new(suq2());
        Hopf::from_strs(
            a,
            &[
                ("α", "α⊗α - q γ*⊗γ", "1", "α*"),
                ("α*", "α*⊗α* - q γ⊗γ*", "1", "α"),
                ("γ", "γ⊗α + α*⊗γ", "0", "-q γ"),
                ("γ*", "γ*⊗α* + α⊗γ*", "0", "-q^-1 γ*"),
            ],
        )
        .unwrap()
    }

    fn fundamental(h: &Hopf) -> Corep {
        Corep::from_strs(h, "fundamental", &[&["α", "-q γ*"], &["γ", "α*"]]).unwrap()
    }

    #[test]
    fn circle_hopf_axioms() {
        let h = u1_hopf();
        assert!(h.validate().unwrap().is_empty());
        let a = &h.alg;
        let z = a.g("z").unwrap();
        assert_eq!(h.coproduct(&z).unwrap(), tensor::pure(&[&z, &z]));
        assert_eq!(h.coproduct(&a.one()).unwrap(), tensor::pure(&[&a.one(), &a.one()]));
        assert_eq!(h.counit(&z), Scalar::one());
        assert_eq!(h.antipode(&z).unwrap(), a.g("z*").unwrap());
        assert_eq!(h.antipode(&a.one()).unwrap(), a.one());
        let z2 = a.parse("z z").unwrap();
        assert_eq!(h.coproduct(&z2).unwrap(), crate::expr::parse_tensor(&[a, a], "(z z)⊗(z z)").unwrap());
    }

    #[test]
    fn suq2_hopf_axioms() {
        let h = suq2_hopf();
        assert_eq!(h.validate().unwrap(), Vec::<String>::new());
        let a = &h.alg;
        let al = a.g("α").unwrap();
        assert_eq!(h.coproduct(&al).unwrap(), crate::expr::parse_tensor(&[a, a], "α⊗α - q γ*⊗γ").unwrap());
        assert_eq!(h.counit(&al), Scalar::one());
    }

    #[test]
    fn broken_antipode_is_reported() {
        let a = Arc::new(u1());
        let h = Hopf::from_strs(a, &[("z", "z⊗z", "1", "z"), ("z*", "z*⊗z*", "1", "z*")]).unwrap();
        assert!(h.validate().unwrap().iter().any(|s| s.contains("antipode law")));
    }

    #[test]
    fn circle_weights_are_unitary() {
        let h = u1_hopf();
        for n in -3i32..=3 {
            let s = if n >= 0 { "z " } else { "z* " }.repeat(n.unsigned_abs() as usize);
            let s = if s.is_empty() { "1".into() } else { s };
            let c = Corep::from_strs(&h, "weight", &[&[s.as_str()]]).unwrap();
            assert!(c.check(&h).unwrap().passed(), "weight {n}");
        }
    }

    #[test]
    fn suq2_fundamental_orthogonality() {
        let h = suq2_hopf();
        let c = fundamental(&h);
        let rep = c.check(&h).unwrap();
        assert!(rep.passed(), "{rep:?}");
        // the row-wise sum is not the identity for q ≠ 1
        let a = &h.alg;
        assert_eq!(c.row_unitarity_sum(&h, 0, 0).unwrap(), a.parse("1 + (q^2 - 1) γ γ*").unwrap());
    }

    #[test]
    fn diagonal_sum_is_a_reducible_corep() {
        let h = u1_hopf();
        let c = Corep::from_strs(&h, "diag", &[&["z", "0"], &["0", "z z"]]).unwrap();
        let rep = c.check(&h).unwrap();
        assert!(rep.comatrix.is_empty());
        assert!(c.is_diagonal());
    }

    #[test]
    fn apply_and_intertwiners() {
        let h = u1_hopf();
        let c = Corep::from_strs(&h, "weight", &[&["z"]]).unwrap();
        let v = c.apply(&[Scalar::int(2)]).unwrap();
        assert_eq!(v[0], h.alg.parse("2 z").unwrap());
        let coact = |e: &Elem| h.coproduct(e);
        assert!(is_intertwiner(&c, &[h.alg.g("z").unwrap()], &coact).unwrap());
        assert!(!is_intertwiner(&c, &[h.alg.one()], &coact).unwrap());
    }

    #[test]
    fn characters_and_convolution() {
        let h = u1_hopf();
        let i = Character(vec![Scalar::i(), -Scalar::i()]);
        assert!(i.respects_relations(&h));
        let m1 = Character(vec![Scalar::int(-1), Scalar::int(-1)]);
        let prod = i.convolve(&m1, &h).unwrap();
        assert_eq!(prod.0[0], -Scalar::i());
        let eps = Character::counit(&h);
        assert_eq!(i.convolve(&i.inverse(&h).unwrap(), &h).unwrap(), eps);
        assert!(i.is_central(&h).unwrap());
        // f ∗ 1ε = f for a map into the circle algebra itself
        let a = h.alg.clone();
        let f = |w: &Word| Ok(a.nf(&Elem::single(w.clone(), Scalar::one()))?.scale(&Scalar::int(3)));
        let unit = |w: &Word| Ok(a.scalar(h.counit_word(w)));
        let zz = a.parse("z z + 2 z*").unwrap();
        assert_eq!(h.convolve(&a, &f, &unit, &zz).unwrap(), zz.scale(&Scalar::int(3)));
    }
}

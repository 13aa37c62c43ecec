//! Associated quantum vector bundles: intertwiner modules, their left and
//! right coordinates, induced linear connections and hermitian structures.

use alloc::format;
use alloc::string::String;
use alloc::vec;
use alloc::vec::Vec;

use crate::bundle::{Bundle, Connection, RepData};
use crate::error::{Error, Result};
use crate::ncalg::{Algebra, Elem};
use crate::scalars::Scalar;

pub type Matrix = Vec<Vec<Elem>>;

/// Values `T(e_1), …, T(e_n)` of an intertwiner `V → Ω(GM)`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Section {
    pub rep: String,
    pub values: Vec<Elem>,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Side {
    Left,
    Right,
}

/// One registered representation of a bundle with the associated module data.
pub struct Assoc<'a> {
    pub bundle: &'a Bundle,
    pub rep: &'a RepData,
    /// `(ZX)_kj`, values of the right generators.
    right_gens: Matrix,
    /// `(Y^T W*)_kj`, so that `μ̃_k = Σ_j rc_kj τ(e_j)`.
    right_coeff: Matrix,
}

impl<'a> Assoc<'a> {
    pub fn new(bundle: &'a Bundle, rep: &str) -> Result<Self> {
        let r = bundle.rep(rep)?;
        let a = bundle.alg();
        let (d, n) = (r.d(), r.n());
        let y = r.y()?;
        let w = r.w()?;
        let mut right_gens = vec![vec![Elem::zero(); n]; d];
        let mut right_coeff = vec![vec![Elem::zero(); n]; d];
        for k in 0..d {
            for j in 0..n {
                for i in 0..d {
                    right_gens[k][j].add_scaled(&r.x[i][j], &r.z[k][i]);
                    right_coeff[k][j].add_scaled(&a.star(&w[i][j])?, &y[i][k]);
                }
            }
        }
        Ok(Assoc { bundle, rep: r, right_gens, right_coeff })
    }

    fn alg(&self) -> &Algebra {
        self.bundle.alg()
    }

    pub fn section(&self, values: Vec<Elem>) -> Result<Section> {
        let s = Section { rep: self.rep.name().into(), values };
        self.check(&s)?;
        Ok(s)
    }

    /// `T^L_k(e_i) = x_ki`.
    pub fn left_generator(&self, k: usize) -> Section {
        Section { rep: self.rep.name().into(), values: self.rep.x[k].clone() }
    }

    /// `T^R_k = Σ_i z_ki T^L_i`.
    pub fn right_generator(&self, k: usize) -> Section {
        Section { rep: self.rep.name().into(), values: self.right_gens[k].clone() }
    }

    /// Intertwiner condition against `Ψ`, and horizontality.
    pub fn check(&self, s: &Section) -> Result<()> {
        if s.rep != self.rep.name() {
            return Err(Error::RepresentationMismatch(format!("{} is not {}", s.rep, self.rep.name())));
        }
        if s.values.len() != self.rep.n() {
            return Err(Error::DimensionMismatch(format!("{} values for dimension {}", s.values.len(), self.rep.n())));
        }
        for v in &s.values {
            if !self.bundle.is_horizontal(v)? {
                return Err(Error::NotIntertwiner(format!("{} is not horizontal", self.alg().fmt(v))));
            }
        }
        if !self.bundle.is_intertwiner(self.rep, &s.values)? {
            return Err(Error::NotIntertwiner(format!("values of a {} section", self.rep.name())));
        }
        Ok(())
    }

    fn require_base(&self, coeffs: &[Elem]) -> Result<()> {
        for c in coeffs {
            if !self.bundle.recognizer_accepts(c)? {
                return Err(Error::NotBase(self.alg().fmt(c)));
            }
        }
        Ok(())
    }

    /// `Υ`: left coordinates `μ_k = Σ_i τ(e_i) x*_ki`.
    pub fn upsilon(&self, s: &Section) -> Result<Vec<Elem>> {
        self.check(s)?;
        let a = self.alg();
        let mut out = Vec::new();
        for k in 0..self.rep.d() {
            let mut m = Elem::zero();
            for (i, v) in s.values.iter().enumerate() {
                m.add_assign(&a.mul(v, &a.star(&self.rep.x[k][i])?)?);
            }
            out.push(m);
        }
        self.require_base(&out)?;
        Ok(out)
    }

    /// `Υ⁻¹(Σ μ_k ⊗ T^L_k)`.
    pub fn upsilon_inv(&self, mu: &[Elem]) -> Result<Section> {
        self.require_base(mu)?;
        let a = self.alg();
        let mut values = vec![Elem::zero(); self.rep.n()];
        for (k, m) in mu.iter().enumerate() {
            for (i, v) in values.iter_mut().enumerate() {
                v.add_assign(&a.mul(m, &self.rep.x[k][i])?);
            }
        }
        Ok(Section { rep: self.rep.name().into(), values })
    }

    /// `Ũ`: right coordinates `μ̃_k = Σ_{i,j} y_ik w*_ij τ(e_j)`.
    pub fn tilde_upsilon(&self, s: &Section) -> Result<Vec<Elem>> {
        self.check(s)?;
        let a = self.alg();
        let mut out = Vec::new();
        for row in &self.right_coeff {
            let mut m = Elem::zero();
            for (c, v) in row.iter().zip(&s.values) {
                m.add_assign(&a.mul(c, v)?);
            }
            out.push(m);
        }
        self.require_base(&out)?;
        Ok(out)
    }

    /// `Ũ⁻¹(Σ T^R_k ⊗ μ̃_k)`.
    pub fn tilde_upsilon_inv(&self, mu: &[Elem]) -> Result<Section> {
        self.require_base(mu)?;
        let a = self.alg();
        let mut values = vec![Elem::zero(); self.rep.n()];
        for (k, m) in mu.iter().enumerate() {
            for (i, v) in values.iter_mut().enumerate() {
                v.add_assign(&a.mul(&self.right_gens[k][i], m)?);
            }
        }
        Ok(Section { rep: self.rep.name().into(), values })
    }

    pub fn left_decompose(&self, s: &Section) -> Result<Vec<Elem>> {
        self.upsilon(s)
    }
    pub fn right_decompose(&self, s: &Section) -> Result<Vec<Elem>> {
        self.tilde_upsilon(s)
    }

    /// `σ = Ũ ∘ Υ⁻¹`.
    pub fn sigma(&self, mu: &[Elem]) -> Result<Vec<Elem>> {
        self.tilde_upsilon(&self.upsilon_inv(mu)?)
    }

    /// `ϱ_kl(p) = Σ_i x_ki p x*_li`.
    pub fn rho(&self, p: &Elem) -> Result<Matrix> {
        let a = self.alg();
        let d = self.rep.d();
        let mut m = vec![vec![Elem::zero(); d]; d];
        for (k, row) in m.iter_mut().enumerate() {
            for (l, e) in row.iter_mut().enumerate() {
                for i in 0..self.rep.n() {
                    e.add_assign(&a.mul_all(&[&self.rep.x[k][i], p, &a.star(&self.rep.x[l][i])?])?);
                }
            }
        }
        Ok(m)
    }

    /// `ϱ(𝟙)`.
    pub fn idempotent(&self) -> Result<Matrix> {
        self.rho(&self.alg().one())
    }

    /// Failures of `P² = P`, `P† = P`, and `P` having base entries.
    pub fn idempotent_defects(&self) -> Result<Vec<String>> {
        let a = self.alg();
        let p = self.idempotent()?;
        let sq = mat_mul(a, &p, &p)?;
        let mut bad = Vec::new();
        if sq != p {
            bad.push(format!("ϱ(𝟙) of {} is not idempotent", self.rep.name()));
        }
        for (k, row) in p.iter().enumerate() {
            for (l, e) in row.iter().enumerate() {
                if a.star(e)? != p[l][k] {
                    bad.push(format!("ϱ(𝟙) of {} is not self-adjoint at ({k}, {l})", self.rep.name()));
                }
                if !self.bundle.recognizer_accepts(e)? {
                    bad.push(format!("ϱ(𝟙) of {} has an entry outside the base", self.rep.name()));
                }
            }
        }
        Ok(bad)
    }

    // ---- connections

    pub fn map_values(&self, s: &Section, f: &dyn Fn(&Elem) -> Result<Elem>) -> Result<Section> {
        Ok(Section { rep: s.rep.clone(), values: s.values.iter().map(f).collect::<Result<_>>()? })
    }

    /// `Υ⁻¹∘∇`: the values of `D∘T`.
    pub fn nabla(&self, w: &Connection, s: &Section) -> Result<Section> {
        self.map_values(s, &|v| self.bundle.cov_deriv(w, v))
    }

    /// `Ũ⁻¹∘∇̂`: the values of `D̂∘T`.
    pub fn hat_nabla(&self, w: &Connection, s: &Section) -> Result<Section> {
        self.map_values(s, &|v| self.bundle.dual_cov_deriv(w, v))
    }

    /// `∇T` in left coordinates.
    pub fn nabla_coords(&self, w: &Connection, s: &Section) -> Result<Vec<Elem>> {
        self.upsilon(&self.nabla(w, s)?)
    }

    /// `∇̂T` in right coordinates.
    pub fn hat_nabla_coords(&self, w: &Connection, s: &Section) -> Result<Vec<Elem>> {
        self.tilde_upsilon(&self.hat_nabla(w, s)?)
    }

    /// `d^∇ = Υ ∘ D ∘ Υ⁻¹` on left coordinates.
    pub fn ext_cov_deriv(&self, w: &Connection, mu: &[Elem]) -> Result<Vec<Elem>> {
        self.upsilon(&self.nabla(w, &self.upsilon_inv(mu)?)?)
    }

    /// `d^∇̂ = Ũ ∘ D̂ ∘ Ũ⁻¹` on right coordinates.
    pub fn hat_ext_cov_deriv(&self, w: &Connection, mu: &[Elem]) -> Result<Vec<Elem>> {
        self.tilde_upsilon(&self.hat_nabla(w, &self.tilde_upsilon_inv(mu)?)?)
    }

    /// `R^∇ = d^∇ ∘ ∇`, in left coordinates.
    pub fn curvature(&self, w: &Connection, s: &Section) -> Result<Vec<Elem>> {
        self.ext_cov_deriv(w, &self.nabla_coords(w, s)?)
    }

    pub fn hat_curvature(&self, w: &Connection, s: &Section) -> Result<Vec<Elem>> {
        self.hat_ext_cov_deriv(w, &self.hat_nabla_coords(w, s)?)
    }

    /// Failures of the Leibniz rules `d^∇(μ⊗T) = dμ⊗T + (-1)^k μ∇T` and its
    /// right analogue, for a base form `mu` and a section.
    pub fn leibniz_defects(&self, w: &Connection, mu: &Elem, s: &Section) -> Result<Vec<String>> {
        let a = self.alg();
        let b = self.bundle;
        let k = a.degree(mu).unwrap_or(0);
        let sign = Scalar::sign(k);
        let mut bad = Vec::new();
        let left = self.map_values(s, &|v| a.mul(mu, v))?;
        let lhs = self.nabla(w, &left)?;
        let dn = self.nabla(w, s)?;
        let dm = b.d(mu)?;
        for i in 0..s.values.len() {
            let mut rhs = a.mul(&dm, &s.values[i])?;
            rhs.add_scaled(&a.mul(mu, &dn.values[i])?, &sign);
            if lhs.values[i] != rhs {
                bad.push(format!("left Leibniz rule fails for {}", a.fmt(mu)));
            }
        }
        let right = self.map_values(s, &|v| a.mul(v, mu))?;
        let lhs = self.hat_nabla(w, &right)?;
        let dn = self.hat_nabla(w, s)?;
        for i in 0..s.values.len() {
            let deg = a.degree(&s.values[i]).unwrap_or(0);
            let mut rhs = a.mul(&dn.values[i], mu)?;
            rhs.add_scaled(&a.mul(&s.values[i], &dm)?, &Scalar::sign(deg));
            if lhs.values[i] != rhs {
                bad.push(format!("right Leibniz rule fails for {}", a.fmt(mu)));
            }
        }
        Ok(bad)
    }

    // ---- hermitian structures

    fn same_rep(&self, s: &Section, t: &Section) -> Result<()> {
        if s.rep != self.rep.name() || t.rep != self.rep.name() {
            return Err(Error::RepresentationMismatch(format!("{} and {} paired over {}", s.rep, t.rep, self.rep.name())));
        }
        Ok(())
    }

    /// `⟨T₁,T₂⟩_L = Σ T₁(e_i)T₂(e_i)*`, also on form-valued sections.
    pub fn herm_l(&self, s: &Section, t: &Section) -> Result<Elem> {
        self.same_rep(s, t)?;
        let a = self.alg();
        let mut out = Elem::zero();
        for (x, y) in s.values.iter().zip(&t.values) {
            out.add_assign(&a.mul(x, &a.star(y)?)?);
        }
        Ok(out)
    }

    /// `⟨T₁,T₂⟩_R = Σ T₁(e_i)*T₂(e_i)`.
    pub fn herm_r(&self, s: &Section, t: &Section) -> Result<Elem> {
        self.same_rep(s, t)?;
        let a = self.alg();
        let mut out = Elem::zero();
        for (x, y) in s.values.iter().zip(&t.values) {
            out.add_assign(&a.mul(&a.star(x)?, y)?);
        }
        Ok(out)
    }

    /// `Σ μ_k ϱ_kl(𝟙) ν_l*` on left coordinates.
    pub fn herm_l_coords(&self, mu: &[Elem], nu: &[Elem]) -> Result<Elem> {
        let a = self.alg();
        let p = self.idempotent()?;
        let mut out = Elem::zero();
        for (k, m) in mu.iter().enumerate() {
            for (l, n) in nu.iter().enumerate() {
                out.add_assign(&a.mul_all(&[m, &p[k][l], &a.star(n)?])?);
            }
        }
        Ok(out)
    }

    /// `Σ μ̃_k* Q_kl ν̃_l` with `Q_kl = ⟨T^R_k, T^R_l⟩_R`.
    pub fn herm_r_coords(&self, mu: &[Elem], nu: &[Elem]) -> Result<Elem> {
        let a = self.alg();
        let d = self.rep.d();
        let mut out = Elem::zero();
        for k in 0..d {
            for l in 0..d {
                let q = self.herm_r(&self.right_generator(k), &self.right_generator(l))?;
                out.add_assign(&a.mul_all(&[&a.star(&mu[k])?, &q, &nu[l]])?);
            }
        }
        Ok(out)
    }

    /// `⟨∇T₁,T₂⟩ + ⟨T₁,∇T₂⟩ - d⟨T₁,T₂⟩` on the given side.
    pub fn compat_defect(&self, w: &Connection, s: &Section, t: &Section, side: Side) -> Result<Elem> {
        let b = self.bundle;
        Ok(match side {
            Side::Left => {
                let lhs = &self.herm_l(&self.nabla(w, s)?, t)? + &self.herm_l(s, &self.nabla(w, t)?)?;
                &lhs - &b.d(&self.herm_l(s, t)?)?
            }
            Side::Right => {
                let lhs = &self.herm_r(&self.hat_nabla(w, s)?, t)? + &self.herm_r(s, &self.hat_nabla(w, t)?)?;
                &lhs - &b.d(&self.herm_r(s, t)?)?
            }
        })
    }

    /// `A_f(T) = T ∘ f` for a unitary intertwiner `f: V_self → V_source` given
    /// as a scalar matrix, `T` a section of `source`.
    pub fn unitary_pullback(&self, f: &[Vec<Scalar>], source: &Assoc<'_>, t: &Section) -> Result<Section> {
        let (n, m) = (self.rep.n(), source.rep.n());
        if f.len() != m || f.iter().any(|r| r.len() != n) {
            return Err(Error::DimensionMismatch(format!("morphism must be {m}×{n}")));
        }
        for i in 0..n {
            for j in 0..n {
                let mut s = Scalar::zero();
                for row in f {
                    s += &(row[i].conj() * &row[j]);
                }
                if s != if i == j { Scalar::one() } else { Scalar::zero() } {
                    return Err(Error::NotUnitary(format!("f†f ≠ 1 at ({i}, {j})")));
                }
            }
        }
        source.check(t)?;
        let mut values = vec![Elem::zero(); n];
        for (i, v) in values.iter_mut().enumerate() {
            for (j, row) in f.iter().enumerate() {
                v.add_scaled(&t.values[j], &row[i]);
            }
        }
        self.section(values)
    }
}

pub fn mat_mul(a: &Algebra, x: &Matrix, y: &Matrix) -> Result<Matrix> {
    let n = x.len();
    let m = y.first().map_or(0, |r| r.len());
    let mut out = vec![vec![Elem::zero(); m]; n];
    for i in 0..n {
        for j in 0..m {
            for (k, yk) in y.iter().enumerate() {
                out[i][j].add_assign(&a.mul(&x[i][k], &yk[j])?);
            }
        }
    }
    Ok(out)
}

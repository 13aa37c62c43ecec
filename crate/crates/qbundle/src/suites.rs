//! Identity suites over an example: each check is an independent job, run
//! in parallel and reported in declaration order.

use std::sync::Arc;
use std::time::Instant;

use rayon::prelude::*;

use qbundle_core::assoc::{Assoc, Section, Side};
use qbundle_core::bundle::{Bundle, Connection};
use qbundle_core::examples::{self, Example};
use qbundle_core::gauge::{self, Gauge, Translation};
use qbundle_core::{tensor, Algebra, Elem, Error, Scalar, Tensor};

use crate::format::Document;
use crate::report::{CheckRecord, Status, SuiteReport};
use crate::CliError;

pub const SUITES: [&str; 4] = ["connection", "hermitian", "gauge", "qtrs"];

/// Identity catalog: every check id starts with one of these keys.
pub const CATALOG: &[(&str, &str)] = &[
    ("group.hopf", "Hopf axioms of the structure group on generators and relations"),
    ("group.calculus", "bicovariant *-calculus: ideal, adjoint action, star and embedded differential"),
    ("group.germs", "germs map: dg = g⁽¹⁾π(g⁽²⁾), π(g)* = -π(κ(g)*), dπ(g) = -π(g⁽¹⁾)π(g⁽²⁾)"),
    ("group.orthogonality", "corepresentation coefficients: comatrix, orthogonality and unitarity"),
    ("presentation.confluence", "rewriting rules are locally confluent up to the overlap bound"),
    ("presentation.assertion", "declared table agrees with the computed structure"),
    ("bundle.dga", "total forms are a graded differential algebra"),
    ("bundle.star", "rewriting rules are compatible with the star"),
    ("bundle.principal", "coaction is a differential *-morphism and a coaction"),
    ("bundle.rep", "generating intertwiners satisfy the completeness relation"),
    ("connection.condition", "connection condition Ψω(θ) = (ω⊗id)ad(θ) + 1⊗θ"),
    ("connection.covariant-derivative", "covariant derivative is horizontal, covariant, d on the base, with Leibniz and star defects"),
    ("connection.curvature-covariance", "curvature is covariant: ΨR = (R⊗id)ad"),
    ("connection.real", "connection is real"),
    ("connection.regular", "connection is regular on the horizontal spanning set"),
    ("connection.non-regular", "connection is not regular: witness with ℓ(θ, φ) ≠ 0"),
    ("connection.multiplicative", "connection is multiplicative"),
    ("connection.flat", "curvature vanishes"),
    ("dunkl.operator", "covariant derivative equals f ↦ f′dx + κ(f(x) - f(-x))x⁻¹dx"),
    ("dunkl.even", "covariant derivative equals d on even elements"),
    ("assoc.projector", "projector of the associated module is a hermitian idempotent"),
    ("assoc.compatibility", "d⟨T₁, T₂⟩ = ⟨∇T₁, T₂⟩ + ⟨T₁, ∇T₂⟩ on both sides for real connections"),
    ("assoc.leibniz", "induced connections satisfy the module Leibniz rules"),
    ("assoc.induced-line", "line bundle: ∇(pzⁿ) = (dp - npμ)⊗zⁿ and ∇̂(pzⁿ) = (dp + nμ*p)⊗zⁿ"),
    ("assoc.fibration-display", "fibration pairings ⟨∇T, T⟩, ⟨T, ∇T⟩ and right analogues at T = αⁿ"),
    ("gauge.valid", "gauge transformation: unital, grading, convolution inverse and Ad-covariance"),
    ("gauge.action", "F_f(ω(θ)) = m(ω⊗f)ad(θ) + f(θ) and f⊛ω is a connection"),
    ("gauge.curvature", "R^{f⊛ω} = F_f R^ω and D^{f⊛ω}F_f = F_f D^ω"),
    ("gauge.adjoint", "⟨A_f T₁, T₂⟩ = ⟨T₁, A_f⁻¹ T₂⟩ on both sides"),
    ("gauge.intertwining", "(id⊗A_f)∇^ω = ∇^{f⊛ω}A_f and σ(id⊗A_f) = (A_f⊗id)σ on generator sections"),
    ("gauge.correspondence", "f ↦ F_f ↦ f round trip and F_f invertibility"),
    ("gauge.group-law", "F_{f₁∗f₂} = F_{f₂}F_{f₁} and (f₁∗f₂)⊛ω = f₂⊛(f₁⊛ω)"),
    ("gauge.potential", "flip transformation of the trivial connection has potential p*dp"),
    ("gauge.orbit", "registered transformation maps the canonical connection to the shifted one"),
    ("trivial.potential", "ω = (A⊗id)ad + ω^triv and R = (F⊗id)ad with F = dA - ⟨A, A⟩"),
    ("qtrs.definition", "β̃(qtrs(v)) = 1⊗v"),
    ("qtrs.property-1", "qtrs commutes with the differentials on degree-zero words"),
    ("qtrs.property-2", "qtrs(θ) = 1⊗ω(θ) - Σ ω(θⱼ)[aᵢⱼ]₁⊗[aᵢⱼ]₂"),
    ("qtrs.property-3", "[v]₁[v]₂ = ε(v)"),
    ("qtrs.property-4", "[v]₁⊗Ψ[v]₂ = [v⁽¹⁾]₁⊗[v⁽¹⁾]₂⊗v⁽²⁾"),
    ("qtrs.property-5", "Ψ[v]₁⊗[v]₂ = [v⁽²⁾]₁⊗κ(v⁽¹⁾)⊗[v⁽²⁾]₂ with graded signs"),
    ("qtrs.property-6", "base forms graded-commute with qtrs"),
    ("qtrs.independence", "qtrs does not depend on the connection"),
    ("qtrs.q-binomial", "qtrs(zⁿ) = Σₖ [n k]_{q⁻²} γ*ᵏα*ⁿ⁻ᵏ ⊗ αⁿ⁻ᵏγᵏ"),
];

pub fn reference(id: &str) -> Option<&'static str> {
    let key = id.split('/').next().unwrap_or(id);
    CATALOG.iter().find(|(k, _)| *k == key).map(|(_, r)| *r)
}

enum Outcome {
    Pass,
    Fail(String),
    Skip(String),
    /// Pass with a witness attached, for negative claims.
    Witness(String),
}

type Out = qbundle_core::Result<Outcome>;

fn failures(v: Vec<String>) -> Outcome {
    match v.len() {
        0 => Outcome::Pass,
        1..=3 => Outcome::Fail(v.join("; ")),
        n => Outcome::Fail(format!("{}; and {} more", v[..3].join("; "), n - 3)),
    }
}

fn expect(ok: bool, witness: impl FnOnce() -> String) -> Outcome {
    if ok {
        Outcome::Pass
    } else {
        Outcome::Fail(witness())
    }
}

struct Job<'a> {
    id: String,
    run: Box<dyn Fn() -> Out + Send + Sync + 'a>,
}

fn job<'a>(id: impl Into<String>, run: impl Fn() -> Out + Send + Sync + 'a) -> Job<'a> {
    Job { id: id.into(), run: Box::new(run) }
}

/// An example with the truncation budget and Dunkl multiplicity it is checked at.
pub struct Runner {
    pub ex: Example,
    pub budget: usize,
    pub kappa: Scalar,
}

impl Runner {
    pub fn new(mut ex: Example, budget: Option<usize>, kappa: Option<Scalar>) -> Self {
        if let Some(n) = budget {
            let mut b = (*ex.bundle).clone();
            b.budget = n;
            ex.bundle = Arc::new(b);
        }
        let budget = ex.bundle.budget;
        Runner { ex, budget, kappa: kappa.unwrap_or_else(Scalar::q) }
    }

    fn b(&self) -> &Bundle {
        &self.ex.bundle
    }

    fn span_len(&self) -> usize {
        self.budget.saturating_sub(1).max(1)
    }

    pub fn run(&self, suite: &str) -> Result<SuiteReport, CliError> {
        let start = Instant::now();
        let names: Vec<&str> = match suite {
            "all" => SUITES.to_vec(),
            s if SUITES.contains(&s) => vec![s],
            s => return Err(CliError::UnknownSuite(s.into())),
        };
        let mut jobs = Vec::new();
        for s in names {
            jobs.extend(match s {
                "connection" => self.connection_jobs(),
                "hermitian" => self.hermitian_jobs(),
                "gauge" => self.gauge_jobs(),
                _ => self.qtrs_jobs(),
            });
        }
        let checks = collect(jobs, self.budget);
        Ok(SuiteReport::new(&self.ex.name, suite, checks, start.elapsed().as_millis() as u64))
    }

    // ---- connection suite

    fn claims(&self, w: &str) -> &'static [&'static str] {
        match (self.ex.name.as_str(), w) {
            ("trivial-u1" | "trivial-u1-point", "trivial") => &["real", "regular", "multiplicative", "flat"],
            ("trivial-u1", "potential") => &["real"],
            ("hopf-fibration", "canonical") => &["real", "regular", "multiplicative"],
            ("hopf-fibration", "shifted") => &["real"],
            ("dunkl-rank1", "canonical") => &["real", "regular", "multiplicative", "flat"],
            ("dunkl-rank1", "dunkl") => &["multiplicative", "non-regular", "flat"],
            ("dunkl-rank1", "dunkl-real") => &["real", "multiplicative", "flat"],
            _ => &[],
        }
    }

    fn claim(&self, w: &Connection, c: &str) -> Out {
        let b = self.b();
        let a = b.alg();
        Ok(match c {
            "real" => {
                let hat = b.dual(w)?;
                let diff = w.difference(&hat);
                expect(diff.iter().all(Elem::is_zero), || format!("ω - ω^ = {}", diff.iter().map(|d| a.fmt(d)).collect::<Vec<_>>().join(", ")))
            }
            "regular" | "non-regular" => {
                let ws = b.regularity_witnesses(w)?;
                let show = |(i, word, l): &(usize, qbundle_core::Word, Elem)| {
                    format!("ℓ({}, {}) = {}", b.env.calc.basis_names()[*i], a.word_str(word), a.fmt(l))
                };
                match (c, ws.first()) {
                    ("regular", None) => Outcome::Pass,
                    ("regular", Some(x)) => Outcome::Fail(show(x)),
                    (_, Some(x)) => Outcome::Witness(show(x)),
                    (_, None) => Outcome::Fail(format!("regular on words of length ≤ {}", b.budget)),
                }
            }
            "multiplicative" => expect(b.is_multiplicative(w)?, || "m(ω⊗ω) does not vanish on the wedge relations".into()),
            _ => {
                let n = b.env.calc.dim();
                let rs = (0..n).map(|i| b.curvature(w, i)).collect::<qbundle_core::Result<Vec<_>>>()?;
                expect(rs.iter().all(Elem::is_zero), || format!("R = {}", rs.iter().map(|r| a.fmt(r)).collect::<Vec<_>>().join(", ")))
            }
        })
    }

    fn connection_jobs(&self) -> Vec<Job<'_>> {
        let b = self.b();
        let env = &b.env;
        let calc = &env.calc;
        let mut jobs = vec![
            job(format!("group.hopf/{}", calc.hopf.alg.name()), move || Ok(failures(calc.hopf.validate()?))),
            job(format!("group.calculus/{}", calc.name()), move || Ok(failures(calc.validate()?))),
            job(format!("group.germs/{}", calc.name()), move || Ok(failures(env.germs_identities()?))),
        ];
        for r in &b.reps {
            jobs.push(job(format!("group.orthogonality/{}", r.name()), move || {
                let rep = r.corep.check(&calc.hopf)?;
                Ok(failures([rep.comatrix, rep.antipode_orthogonality, rep.unitarity, rep.invariance].concat()))
            }));
        }
        jobs.push(job("bundle.dga", move || Ok(failures(b.omega.validate()?))));
        jobs.push(job("bundle.star", move || Ok(failures(b.alg().check_star_relations()?))));
        jobs.push(job("bundle.principal", move || Ok(failures(b.check_qpb()?))));
        for r in &b.reps {
            jobs.push(job(format!("bundle.rep/{}", r.name()), move || Ok(failures(b.check_rep(r)?))));
        }
        for w in &self.ex.connections {
            let n = &w.name;
            jobs.push(job(format!("connection.condition/{n}"), move || Ok(failures(b.connection_failures(w)?))));
            jobs.push(job(format!("connection.covariant-derivative/{n}"), move || Ok(failures(b.cov_deriv_identities(w)?))));
            jobs.push(job(format!("connection.curvature-covariance/{n}"), move || {
                Ok(expect(b.curvature_is_covariant(w)?, || "ΨR ≠ (R⊗id)ad".into()))
            }));
            for c in self.claims(n) {
                jobs.push(job(format!("connection.{c}/{n}"), move || self.claim(w, c)));
            }
        }
        if self.ex.name == "dunkl-rank1" {
            jobs.extend(self.dunkl_jobs());
        }
        jobs
    }

    fn dunkl_jobs(&self) -> Vec<Job<'_>> {
        let b = self.b();
        let mut jobs = Vec::new();
        if let Ok(w) = self.ex.connection("dunkl") {
            let mut fs: Vec<String> = (1..=6).map(|k| vec!["x"; k].join(" ")).collect();
            fs.extend(["s".into(), "x s".into()]);
            for f in fs {
                jobs.push(job(format!("dunkl.operator/{}", f.replace(' ', "")), move || {
                    let a = b.alg();
                    let phi = a.parse(&f)?;
                    let got = b.cov_deriv(w, &phi)?;
                    let want = dunkl_oracle(a, &phi, &self.kappa)?;
                    Ok(expect(got == want, || format!("D({f}) = {}, oracle {}", a.fmt(&got), a.fmt(&want))))
                }));
            }
        }
        for w in &self.ex.connections {
            jobs.push(job(format!("dunkl.even/{}", w.name), move || {
                let a = b.alg();
                let mut bad = Vec::new();
                for e in gauge::base_samples(b, 3)? {
                    if a.degree(&e) == Some(0) && b.cov_deriv(w, &e)? != b.d(&e)? {
                        bad.push(format!("D ≠ d on {}", a.fmt(&e)));
                    }
                }
                Ok(failures(bad))
            }));
        }
        jobs
    }

    // ---- hermitian suite

    fn generator_sections<'b>(&self, m: &Assoc<'b>) -> qbundle_core::Result<Vec<Section>> {
        let b = self.b();
        let a = b.alg();
        let base = gauge::base_samples(b, 2)?;
        let mut out = Vec::new();
        for k in 0..m.rep.d() {
            let t = m.left_generator(k);
            for c in base.iter().filter(|e| a.degree(e) == Some(0)).take(3) {
                out.push(m.section(t.values.iter().map(|v| a.mul(c, v)).collect::<qbundle_core::Result<_>>()?)?);
            }
            out.push(t);
        }
        Ok(out)
    }

    fn hermitian_jobs(&self) -> Vec<Job<'_>> {
        let b = self.b();
        let mut jobs = Vec::new();
        for r in &b.reps {
            let rn = r.name();
            jobs.push(job(format!("assoc.projector/{rn}"), move || Ok(failures(Assoc::new(b, rn)?.idempotent_defects()?))));
            for w in &self.ex.connections {
                jobs.push(job(format!("assoc.compatibility/{}/{rn}", w.name), move || {
                    if !b.is_real(w)? {
                        return Ok(Outcome::Skip("connection is not real".into()));
                    }
                    let m = Assoc::new(b, rn)?;
                    let secs = self.generator_sections(&m)?;
                    let mut bad = Vec::new();
                    for (i, s) in secs.iter().enumerate() {
                        for t in secs.iter().skip(i).take(4) {
                            for side in [Side::Left, Side::Right] {
                                let d = m.compat_defect(w, s, t, side)?;
                                if !d.is_zero() {
                                    bad.push(format!("{side:?} defect {}", b.alg().fmt(&d)));
                                }
                            }
                        }
                    }
                    Ok(failures(bad))
                }));
                jobs.push(job(format!("assoc.leibniz/{}/{rn}", w.name), move || {
                    let m = Assoc::new(b, rn)?;
                    let t = m.left_generator(0);
                    let mut bad = Vec::new();
                    for mu in gauge::base_samples(b, 2)?.iter().take(6) {
                        bad.extend(m.leibniz_defects(w, mu, &t)?);
                    }
                    Ok(failures(bad))
                }));
            }
        }
        match self.ex.name.as_str() {
            "hopf-fibration" => {
                if let Ok(w) = self.ex.connection("canonical") {
                    for n in 1..=3i64 {
                        jobs.push(job(format!("assoc.fibration-display/w{n}"), move || fibration_display(b, w, n)));
                    }
                }
            }
            "trivial-u1" => {
                if let Ok(w) = self.ex.connection("potential") {
                    for n in -3..=3i64 {
                        jobs.push(job(format!("assoc.induced-line/w{n}"), move || induced_line(b, w, n)));
                    }
                }
            }
            _ => {}
        }
        jobs
    }

    // ---- gauge suite

    fn gauge_jobs(&self) -> Vec<Job<'_>> {
        let b = self.b();
        let ex = &self.ex;
        let mut jobs = Vec::new();
        for f in &ex.gauges {
            let fname = &f.name;
            jobs.push(job(format!("gauge.valid/{fname}"), move || Ok(failures(f.validate(b)?))));
            jobs.push(job(format!("gauge.correspondence/{fname}"), move || correspondence(b, ex, f)));
            for w in &ex.connections {
                jobs.push(job(format!("gauge.action/{fname}/{}", w.name), move || {
                    let mut bad = gauge::action_formula_failures(b, f, w)?;
                    let fw = gauge::act(b, f, w)?;
                    bad.extend(b.connection_failures(&fw)?);
                    Ok(failures(bad))
                }));
                jobs.push(job(format!("gauge.curvature/{fname}/{}", w.name), move || match gauge::curvature_failures(b, f, w) {
                    Err(Error::NotDifferentialMorphism(s)) => Ok(Outcome::Skip(format!("not a differential morphism: {s}"))),
                    r => Ok(failures(r?)),
                }));
            }
            for r in &b.reps {
                let rn = r.name();
                jobs.push(job(format!("gauge.adjoint/{fname}/{rn}"), move || {
                    let m = Assoc::new(b, rn)?;
                    let secs = self.generator_sections(&m)?;
                    let mut bad = Vec::new();
                    for s in &secs {
                        for t in secs.iter().take(3) {
                            for side in [Side::Left, Side::Right] {
                                let d = gauge::adjoint_defect(&m, f, s, t, side)?;
                                if !d.is_zero() {
                                    bad.push(format!("{side:?} defect {}", b.alg().fmt(&d)));
                                }
                            }
                        }
                    }
                    Ok(failures(bad))
                }));
                for w in &ex.connections {
                    jobs.push(job(format!("gauge.intertwining/{fname}/{}/{rn}", w.name), move || {
                        let m = Assoc::new(b, rn)?;
                        let mut bad = match gauge::intertwining_failures(&m, f, w) {
                            Err(Error::NotDifferentialMorphism(s)) => return Ok(Outcome::Skip(format!("not a differential morphism: {s}"))),
                            r => r?,
                        };
                        let coords: Vec<Vec<Elem>> = (0..m.rep.d()).map(|k| m.upsilon(&m.left_generator(k))).collect::<qbundle_core::Result<_>>()?;
                        bad.extend(gauge::sigma_interchange_failures(&m, f, &coords)?);
                        Ok(failures(bad))
                    }));
                }
            }
            for g in &ex.gauges {
                jobs.push(job(format!("gauge.group-law/{fname}/{}", g.name), move || group_law(b, ex, f, g)));
            }
        }
        if let (Ok(f), Ok(w)) = (ex.gauge("flip"), ex.connection("trivial")) {
            jobs.push(job("gauge.potential/flip", move || {
                let a = b.alg();
                let p = a.parse(examples::FLIP)?;
                let want = a.mul(&a.star(&p)?, &b.d(&p)?)?;
                let got = gauge::potential(b, &gauge::act(b, f, w)?)?;
                Ok(expect(got == vec![want.clone()], || format!("A = {}, expected {}", a.fmt(&got[0]), a.fmt(&want))))
            }));
        }
        if let (Ok(f), Ok(w0), Ok(w1)) = (ex.gauge("shift"), ex.connection("canonical"), ex.connection("shifted")) {
            jobs.push(job("gauge.orbit/shift", move || {
                let got = gauge::act(b, f, w0)?;
                Ok(expect(got.table == w1.table, || format!("f⊛ω = {}", b.alg().fmt(&got.table[0]))))
            }));
        }
        for w in &ex.connections {
            jobs.push(job(format!("trivial.potential/{}", w.name), move || match gauge::potential_failures(b, w) {
                Err(Error::NotTrivialBundle(_)) => Ok(Outcome::Skip("bundle is not trivial".into())),
                r => Ok(failures(r?)),
            }));
        }
        jobs
    }

    // ---- translation map suite

    fn qtrs_jobs(&self) -> Vec<Job<'_>> {
        let b = self.b();
        let len = self.span_len();
        let mut jobs = Vec::new();
        for w in &self.ex.connections {
            jobs.push(job(format!("qtrs.definition/{}", w.name), move || {
                let tr = Translation::new(b, w)?;
                Ok(failures(tr.definition_failures(&gauge::spanning_words(&b.env, len))?))
            }));
            for k in 1..=6u8 {
                jobs.push(job(format!("qtrs.property-{k}/{}", w.name), move || {
                    let tr = Translation::new(b, w)?;
                    let base = gauge::base_samples(b, 2)?;
                    Ok(failures(tr.property_failures(k, &gauge::spanning_words(&b.env, len), &base)?))
                }));
            }
        }
        if let Some((w0, rest)) = self.ex.connections.split_first() {
            for w in rest {
                jobs.push(job(format!("qtrs.independence/{}/{}", w0.name, w.name), move || {
                    let t0 = Translation::new(b, w0)?;
                    let t1 = Translation::new(b, w)?;
                    Ok(failures(t0.independence_failures(&t1, &gauge::spanning_words(&b.env, len))?))
                }));
            }
        }
        if self.ex.name == "hopf-fibration" {
            if let Some(w) = self.ex.connections.first() {
                for n in 1..=3usize {
                    jobs.push(job(format!("qtrs.q-binomial/{n}"), move || q_binomial(b, w, n)));
                }
            }
        }
        jobs
    }
}

/// `f′dx + κ(f - σf)x⁻¹dx` for `f` a polynomial in `x`, `x⁻¹`, `s`, where
/// `σ` flips the sign of each letter.
pub fn dunkl_oracle(a: &Algebra, f: &Elem, kappa: &Scalar) -> qbundle_core::Result<Elem> {
    let (x, xi, s) = (a.gen("x")?, a.gen("x⁻¹")?, a.gen("s")?);
    let mut deriv = Elem::zero();
    let mut refl = Elem::zero();
    for (w, c) in f.iter() {
        for (i, &g) in w.iter().enumerate() {
            let dg = if g == x {
                a.one()
            } else if g == xi {
                -&a.parse("x⁻¹ x⁻¹")?
            } else if g == s {
                continue;
            } else {
                return Err(Error::NotBase(format!("{} is not a function", a.word_str(w))));
            };
            let pre = Elem::single(w[..i].to_vec(), c.clone());
            let post = Elem::single(w[i + 1..].to_vec(), Scalar::one());
            deriv.add_assign(&a.mul_all(&[&pre, &dg, &post])?);
        }
        refl.add_term(w.clone(), c * &Scalar::sign(w.len()));
    }
    let dx = a.g("dx")?;
    let diff = a.mul_all(&[&(f - &a.nf(&refl)?), &a.g("x⁻¹")?, &dx])?;
    Ok(&a.mul(&deriv, &dx)? + &diff.scale(kappa))
}

fn fibration_coeff(n: i64, tail: i64) -> qbundle_core::Result<Scalar> {
    Ok((-(Scalar::one() - Scalar::q_pow(2 * n)) * Scalar::q_pow(tail)).checked_div(&(Scalar::one() - Scalar::q_pow(2)))?)
}

fn fibration_display(b: &Bundle, w: &Connection, n: i64) -> Out {
    let a = b.alg();
    let m = Assoc::new(b, &format!("w{n}"))?;
    let g = |s: &str| a.g(s);
    let nu = n as usize;
    let (an, asn) = (a.pow(&g("α")?, nu)?, a.pow(&g("α*")?, nu)?);
    let (an1, as1) = (a.pow(&g("α")?, nu - 1)?, a.pow(&g("α*")?, nu - 1)?);
    let t = m.section(vec![an.clone()])?;
    let nt = m.nabla(w, &t)?;
    let ht = m.hat_nabla(w, &t)?;
    let cases = [
        ("⟨∇T,T⟩_L", m.herm_l(&nt, &t)?, a.mul_all(&[&an1, &asn, &g("γ*")?, &g("η₊")?])?.scale(&fibration_coeff(n, 3)?)),
        ("⟨T,∇T⟩_L", m.herm_l(&t, &nt)?, a.mul_all(&[&an, &as1, &g("γ")?, &g("η₋")?])?.scale(&fibration_coeff(n, 1)?)),
        ("⟨∇̂T,T⟩_R", m.herm_r(&ht, &t)?, a.mul_all(&[&as1, &an, &g("γ")?, &g("η₋")?])?.scale(&fibration_coeff(n, 1 - 2 * n)?)),
        ("⟨T,∇̂T⟩_R", m.herm_r(&t, &ht)?, a.mul_all(&[&asn, &an1, &g("γ*")?, &g("η₊")?])?.scale(&fibration_coeff(n, 3 - 2 * n)?)),
    ];
    let mut bad = Vec::new();
    for (label, got, want) in cases {
        if got != want {
            bad.push(format!("{label} = {}, expected {}", a.fmt(&got), a.fmt(&want)));
        }
    }
    for side in [Side::Left, Side::Right] {
        let d = m.compat_defect(w, &t, &t, side)?;
        if !d.is_zero() {
            bad.push(format!("{side:?} defect {}", a.fmt(&d)));
        }
    }
    Ok(failures(bad))
}

/// Fixed base element used by the line-bundle display checks.
pub const LINE_SAMPLE: &str = "2 + E11 - E12 + 3 E21";

fn induced_line(b: &Bundle, w: &Connection, n: i64) -> Out {
    let a = b.alg();
    let m = Assoc::new(b, &format!("w{n}"))?;
    let p = a.parse(LINE_SAMPLE)?;
    let zn = a.pow(&a.g(if n >= 0 { "z" } else { "z*" })?, n.unsigned_abs() as usize)?;
    let mu = gauge::potential(b, w)?.remove(0);
    let t = m.section(vec![a.mul(&p, &zn)?])?;
    let nn = Scalar::int(n);
    let dp = b.d(&p)?;
    let want = &dp - &a.mul(&p, &mu)?.scale(&nn);
    let want_hat = &dp + &a.mul(&a.star(&mu)?, &p)?.scale(&nn);
    let got = m.nabla_coords(w, &t)?;
    let got_hat = m.hat_nabla_coords(w, &t)?;
    let mut bad = Vec::new();
    if got != vec![want.clone()] {
        bad.push(format!("∇ coordinate {}, expected {}", a.fmt(&got[0]), a.fmt(&want)));
    }
    if got_hat != vec![want_hat.clone()] {
        bad.push(format!("∇̂ coordinate {}, expected {}", a.fmt(&got_hat[0]), a.fmt(&want_hat)));
    }
    Ok(failures(bad))
}

fn low_samples(b: &Bundle) -> Vec<Elem> {
    let a = b.alg();
    a.irreducible_words(2)
        .into_iter()
        .map(|w| Elem::single(w, Scalar::one()))
        .filter(|x| a.degree(x).is_some_and(|k| k <= 1))
        .collect()
}

fn correspondence(b: &Bundle, ex: &Example, f: &Gauge) -> Out {
    let tr = Translation::new(b, &ex.connections[0])?;
    let xs = low_samples(b);
    let ws = f.window(b);
    let fm = |x: &Elem| f.transform(b, x);
    let fi = |x: &Elem| f.transform_inv(b, x);
    let back = gauge::from_map(&tr, "back", &fm, &fi, &ws, &xs)?;
    let g = b.galg();
    let mut bad = Vec::new();
    for w in &ws {
        let v = Elem::single(w.clone(), Scalar::one());
        if back.eval(b, &v)? != f.eval(b, &v)? || back.eval_inv(b, &v)? != f.eval_inv(b, &v)? {
            bad.push(format!("round trip differs on {}", g.fmt(&v)));
        }
    }
    for x in &xs {
        if f.transform_inv(b, &f.transform(b, x)?)? != *x {
            bad.push(format!("F⁻¹F ≠ id on {}", b.alg().fmt(x)));
        }
    }
    Ok(failures(bad))
}

fn group_law(b: &Bundle, ex: &Example, f1: &Gauge, f2: &Gauge) -> Out {
    let ws = if f1.is_character() { f2.window(b) } else { f1.window(b) };
    let prod = f1.convolve(f2, b, &ws)?;
    let mut bad = prod.validate(b)?;
    for x in &low_samples(b) {
        if prod.transform(b, x)? != f2.transform(b, &f1.transform(b, x)?)? {
            bad.push(format!("F_(f₁∗f₂) ≠ F_f₂ F_f₁ on {}", b.alg().fmt(x)));
        }
    }
    for w in &ex.connections {
        if gauge::act(b, &prod, w)?.table != gauge::act(b, f2, &gauge::act(b, f1, w)?)?.table {
            bad.push(format!("action law fails on {}", w.name));
        }
    }
    Ok(failures(bad))
}

/// Gaussian binomial `[n k]_t` at `t = q⁻²`.
pub fn gaussian_binomial(n: usize, k: usize) -> qbundle_core::Result<Scalar> {
    let mut num = Scalar::one();
    let mut den = Scalar::one();
    for i in 0..k {
        num = num * (Scalar::one() - Scalar::q_pow(-2 * (n - i) as i64));
        den = den * (Scalar::one() - Scalar::q_pow(-2 * (i + 1) as i64));
    }
    Ok(num.checked_div(&den)?)
}

fn q_binomial(b: &Bundle, w: &Connection, n: usize) -> Out {
    let a = b.alg();
    let tr = Translation::new(b, w)?;
    let pw = |s: &str, e: usize| a.pow(&a.g(s)?, e);
    let mut want = Tensor::zero();
    for k in 0..=n {
        let l = a.mul(&pw("γ*", k)?, &pw("α*", n - k)?)?;
        let r = a.mul(&pw("α", n - k)?, &pw("γ", k)?)?;
        want.add_scaled(&tensor::pure(&[&l, &r]), &gaussian_binomial(n, k)?);
    }
    let g = b.galg();
    let got = tr.eval(&g.pow(&g.g("z")?, n)?)?;
    Ok(expect(got == want, || format!("qtrs(z^{n}) = {}", tensor::fmt(&[a, a], &got))))
}


fn collect(jobs: Vec<Job<'_>>, budget: usize) -> Vec<CheckRecord> {
    jobs.par_iter()
        .map(|j| {
            let (status, witness) = match (j.run)() {
                Ok(Outcome::Pass) => (Status::Pass, None),
                Ok(Outcome::Witness(w)) => (Status::Pass, Some(w)),
                Ok(Outcome::Fail(w)) => (Status::Fail, Some(w)),
                Ok(Outcome::Skip(w)) => (Status::Skipped, Some(w)),
                Err(e) => (Status::Fail, Some(format!("engine error: {e}"))),
            };
            let reference = reference(&j.id).unwrap_or("uncatalogued").to_string();
            CheckRecord { id: j.id.clone(), reference, status, witness, budget: Some(budget) }
        })
        .collect()
}

/// Structural checks on everything a presentation file declares.
pub fn check_document(doc: &Document, name: &str, budget: usize) -> SuiteReport {
    let start = Instant::now();
    let mut jobs = Vec::new();
    for a in &doc.algebras {
        jobs.push(job(format!("presentation.confluence/{}", a.name()), move || {
            let rep = qbundle_core::ncalg::check_local_confluence(a, budget.max(2))?;
            Ok(failures(
                rep.unresolved
                    .iter()
                    .map(|p| format!("{}: {} ≠ {}", a.word_str(&p.word), a.fmt(&p.via_first), a.fmt(&p.via_second)))
                    .collect(),
            ))
        }));
        jobs.push(job(format!("bundle.star/{}", a.name()), move || Ok(failures(a.check_star_relations()?))));
    }
    for d in &doc.dgas {
        jobs.push(job(format!("bundle.dga/{}", d.alg.name()), move || Ok(failures(d.validate()?))));
    }
    for h in &doc.hopfs {
        jobs.push(job(format!("group.hopf/{}", h.alg.name()), move || Ok(failures(h.validate()?))));
    }
    for (h, c) in &doc.coreps {
        jobs.push(job(format!("group.orthogonality/{}", c.name), move || {
            let rep = c.check(h)?;
            Ok(failures([rep.comatrix, rep.antipode_orthogonality, rep.unitarity, rep.invariance].concat()))
        }));
    }
    for env in &doc.envelopes {
        jobs.push(job(format!("group.calculus/{}", env.calc.name()), move || Ok(failures(env.calc.validate()?))));
        jobs.push(job(format!("group.germs/{}", env.calc.name()), move || Ok(failures(env.germs_identities()?))));
    }
    for a in &doc.assertions {
        jobs.push(job(format!("presentation.assertion/{}:{}", a.line, a.label), move || {
            Ok(match &a.failure {
                None => Outcome::Pass,
                Some(f) => Outcome::Fail(format!("line {}: {f}", a.line)),
            })
        }));
    }
    if let Some(b) = &doc.bundle {
        jobs.push(job("bundle.principal", move || Ok(failures(b.check_qpb()?))));
        for r in &b.reps {
            jobs.push(job(format!("bundle.rep/{}", r.name()), move || Ok(failures(b.check_rep(r)?))));
        }
        for w in &doc.connections {
            jobs.push(job(format!("connection.condition/{}", w.name), move || Ok(failures(b.connection_failures(w)?))));
        }
        for f in &doc.gauges {
            jobs.push(job(format!("gauge.valid/{}", f.name), move || Ok(failures(f.validate(b)?))));
        }
    }
    let checks = collect(jobs, budget);
    SuiteReport::new(name, "presentation", checks, start.elapsed().as_millis() as u64)
}

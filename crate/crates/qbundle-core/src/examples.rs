//! The registered example bundles: trivial U(1) bundles over a matrix
//! algebra or a point, the quantum Hopf fibration, and the rank-one Dunkl
//! bundle.

use alloc::collections::BTreeMap;
use alloc::format;
use alloc::string::{String, ToString};
use alloc::sync::Arc;
use alloc::vec;
use alloc::vec::Vec;

use crate::bundle::{BaseRecognizer, Bundle, BundleSpec, Connection, RepData, DEFAULT_BUDGET};
use crate::dga::DgAlgebra;
use crate::error::{Error, Result};
use crate::expr::parse_tensor;
use crate::fodc::{Calculus, CalculusSpec, Envelope, Inv2, DEFAULT_WORD_BOUND};
use crate::gauge::{spanning_words, Gauge};
use crate::hopf::{Character, Corep, Hopf};
use crate::ncalg::{Algebra, Elem, Gen, GenSpec, Presentation, RuleSpec};
use crate::scalars::Scalar;
use crate::tensor::{self, Tensor};

pub const NAMES: [&str; 3] = ["trivial-u1", "hopf-fibration", "dunkl-rank1"];

fn words(s: &str) -> Vec<String> {
    s.split_whitespace().map(|w| w.to_string()).collect()
}

/// `lhs -> Σ c·word`, words written as space-separated generator names.
pub fn rule(lhs: &str, rhs: &[(Scalar, &str)]) -> RuleSpec {
    RuleSpec { lhs: words(lhs), rhs: rhs.iter().map(|(c, w)| (c.clone(), words(w))).collect() }
}

fn swap(a: &str, b: &str, c: Scalar) -> RuleSpec {
    rule(&format!("{a} {b}"), &[(c, &format!("{b} {a}"))])
}

fn one() -> Scalar {
    Scalar::one()
}
fn int(n: i64) -> Scalar {
    Scalar::int(n)
}
fn qp(k: i64) -> Scalar {
    Scalar::q_pow(k)
}

fn dga_from(alg: Arc<Algebra>, table: &[(&str, &str)]) -> Result<DgAlgebra> {
    let mut d = vec![Elem::zero(); alg.num_gens()];
    for (g, e) in table {
        d[alg.gen(g)? as usize] = alg.parse(e)?;
    }
    DgAlgebra::new(alg, d)
}

// ---- structure groups

pub fn circle_algebra() -> Result<Algebra> {
    Algebra::new(Presentation {
        name: "U(1)".into(),
        generators: vec![GenSpec::new("z", 0, "z*"), GenSpec::new("z*", 0, "z")],
        rules: vec![rule("z z*", &[(one(), "")]), rule("z* z", &[(one(), "")])],
        order: vec![("z".into(), 1), ("z*".into(), 1)],
        subalgebras: vec![],
    })
}

pub fn circle_hopf() -> Result<Hopf> {
    Hopf::from_strs(Arc::new(circle_algebra()?), &[("z", "z⊗z", "1", "z*"), ("z*", "z*⊗z*", "1", "z")])
}

/// Weight-`n` corepresentation `[z^n]`.
pub fn weight_corep(h: &Hopf, n: i64) -> Result<Corep> {
    let a = &h.alg;
    let g = if n >= 0 { a.g("z")? } else { a.g("z*")? };
    Corep::new(&format!("w{n}"), vec![vec![a.pow(&g, n.unsigned_abs() as usize)?]])
}

/// The one-dimensional calculus on the circle: classical (`ℛ = Ker²ε`) or
/// its q-deformation with `ςz = q⁻²zς`.
pub fn circle_calculus(quantum: bool) -> Result<Arc<Calculus>> {
    let h = Arc::new(circle_hopf()?);
    let a = h.alg.clone();
    let r = if quantum { a.parse("z z - (1 + q^-2) z + q^-2")? } else { a.parse("z z - 2 z + 1")? };
    Ok(Arc::new(Calculus::new(
        h,
        CalculusSpec {
            name: if quantum { "q-U(1)" } else { "U(1)" }.into(),
            ideal: vec![r],
            basis: vec![("ς".into(), a.g("z")?)],
            delta: Some(vec![Inv2::single((0, 0), one())]),
            word_bound: DEFAULT_WORD_BOUND,
        },
    )?))
}

pub fn z2_hopf() -> Result<Hopf> {
    let a = Arc::new(Algebra::new(Presentation {
        name: "Z2".into(),
        generators: vec![GenSpec::new("t", 0, "t")],
        rules: vec![rule("t t", &[(one(), "")])],
        order: vec![("t".into(), 1)],
        subalgebras: vec![],
    })?);
    Hopf::from_strs(a, &[("t", "t⊗t", "1", "t")])
}

/// Universal calculus on `ℤ/2` (`ℛ = 0`).
pub fn z2_calculus() -> Result<Arc<Calculus>> {
    let h = Arc::new(z2_hopf()?);
    let t = h.alg.g("t")?;
    Ok(Arc::new(Calculus::new(
        h,
        CalculusSpec { name: "Z2".into(), ideal: vec![], basis: vec![("θ".into(), t)], delta: None, word_bound: DEFAULT_WORD_BOUND },
    )?))
}

pub fn suq2_presentation() -> Presentation {
    Presentation {
        name: "SUq2".into(),
        generators: vec![
            GenSpec::new("α", 0, "α*"),
            GenSpec::new("α*", 0, "α"),
            GenSpec::new("γ", 0, "γ*"),
            GenSpec::new("γ*", 0, "γ"),
        ],
        rules: vec![
            rule("γ α", &[(qp(-1), "α γ")]),
            rule("γ* α", &[(qp(-1), "α γ*")]),
            rule("γ* γ", &[(one(), "γ γ*")]),
            rule("α* α", &[(one(), ""), (int(-1), "γ γ*")]),
            rule("α α*", &[(one(), ""), (-qp(2), "γ γ*")]),
            rule("γ α*", &[(qp(1), "α* γ")]),
            rule("γ* α*", &[(qp(1), "α* γ*")]),
        ],
        order: vec![("α".into(), 2), ("α*".into(), 2), ("γ".into(), 1), ("γ*".into(), 1)],
        subalgebras: vec![],
    }
}

pub fn suq2_hopf() -> Result<Hopf> {
    Hopf::from_strs(
        Arc::new(Algebra::new(suq2_presentation())?),
        &[
            ("α", "α⊗α - q γ*⊗γ", "1", "α*"),
            ("α*", "α*⊗α* - q γ⊗γ*", "1", "α"),
            ("γ", "γ⊗α + α*⊗γ", "0", "-q γ"),
            ("γ*", "γ*⊗α* + α⊗γ*", "0", "-q^-1 γ*"),
        ],
    )
}

pub fn suq2_fundamental(h: &Hopf) -> Result<Corep> {
    Corep::from_strs(h, "fundamental", &[&["α", "-q γ*"], &["γ", "α*"]])
}

pub fn sign_corep(h: &Hopf) -> Result<Corep> {
    Corep::new("sign", vec![vec![h.alg.g("t")?]])
}

// ---- base algebras

/// Differential calculus on 2×2 matrices from inner derivations by
/// `E12`, `E21` and `H = E11 - E22`; `E22` is eliminated as `1 - E11`.
pub fn matrix_base() -> Result<DgAlgebra> {
    let e = ["E11", "E12", "E21"];
    let th = ["θ12", "θ21", "θH"];
    let mut rules = vec![
        rule("E11 E11", &[(one(), "E11")]),
        rule("E11 E12", &[(one(), "E12")]),
        rule("E11 E21", &[]),
        rule("E12 E11", &[]),
        rule("E12 E12", &[]),
        rule("E12 E21", &[(one(), "E11")]),
        rule("E21 E11", &[(one(), "E21")]),
        rule("E21 E12", &[(one(), ""), (int(-1), "E11")]),
        rule("E21 E21", &[]),
    ];
    for t in th {
        for x in e {
            rules.push(swap(t, x, one()));
        }
        rules.push(rule(&format!("{t} {t}"), &[]));
    }
    rules.push(swap("θ21", "θ12", int(-1)));
    rules.push(swap("θH", "θ12", int(-1)));
    rules.push(swap("θH", "θ21", int(-1)));
    let alg = Arc::new(Algebra::new(Presentation {
        name: "M2".into(),
        generators: vec![
            GenSpec::new("E11", 0, "E11"),
            GenSpec::new("E12", 0, "E21"),
            GenSpec::new("E21", 0, "E12"),
            GenSpec::new("θ12", 1, "θ21").with_star_coeff(int(-1)),
            GenSpec::new("θ21", 1, "θ12").with_star_coeff(int(-1)),
            GenSpec::new("θH", 1, "θH").with_star_coeff(int(-1)),
        ],
        rules,
        order: e.iter().chain(th.iter()).map(|s| (s.to_string(), 1)).collect(),
        subalgebras: vec![],
    })?);
    dga_from(
        alg,
        &[
            ("E11", "-E12 θ12 + E21 θ21"),
            ("E12", "(1 - 2 E11) θ21 + 2 E12 θH"),
            ("E21", "(2 E11 - 1) θ12 - 2 E21 θH"),
            ("θ12", "2 θ12 θH"),
            ("θ21", "-2 θ21 θH"),
            ("θH", "-θ12 θ21"),
        ],
    )
}

/// The one-point base `ℂ`.
pub fn point_base() -> Result<DgAlgebra> {
    let alg = Arc::new(Algebra::new(Presentation { name: "C".into(), ..Default::default() })?);
    DgAlgebra::new(alg, vec![])
}

// ---- examples

/// A fully registered example: the bundle with its named connections.
#[derive(Debug, Clone)]
pub struct Example {
    pub name: String,
    pub bundle: Arc<Bundle>,
    pub connections: Vec<Connection>,
    pub gauges: Vec<Gauge>,
}

impl Example {
    pub fn connection(&self, name: &str) -> Result<&Connection> {
        self.connections
            .iter()
            .find(|c| c.name == name)
            .ok_or_else(|| Error::NotAConnection(format!("no connection `{name}` on {}", self.name)))
    }

    pub fn gauge(&self, name: &str) -> Result<&Gauge> {
        self.gauges
            .iter()
            .find(|g| g.name == name)
            .ok_or_else(|| Error::OutsideTable(format!("no gauge transformation `{name}` on {}", self.name)))
    }
}

// ---- gauge fixtures

/// Word length of the tabulated gauge transformations.
pub const GAUGE_WINDOW: usize = DEFAULT_BUDGET;

/// `Δ(χ)` for the circle character `χ(z) = c`.
pub fn circle_character(b: &Bundle, name: &str, c: Scalar) -> Result<Gauge> {
    let h = &b.env.calc.hopf;
    let mut v = vec![Scalar::zero(); h.alg.num_gens()];
    v[h.alg.gen("z")? as usize] = c.clone();
    v[h.alg.gen("z*")? as usize] = c.inv()?;
    Gauge::from_character(b, name, Character(v))
}

/// Table on the circle words `zⁿ` and `zⁿς` of the window, with values
/// given per weight `n`: `(f(zⁿ), f(zⁿς), f⁻¹(zⁿ), f⁻¹(zⁿς))`.
fn circle_table(b: &Bundle, name: &str, values: &dyn Fn(i64) -> Result<[Elem; 4]>) -> Result<Gauge> {
    let env = &b.env;
    let g = env.alg();
    let z = g.gen("z")?;
    let mut f = BTreeMap::new();
    let mut finv = BTreeMap::new();
    for w in spanning_words(env, GAUGE_WINDOW) {
        let n = w.iter().map(|&x| if x == z { 1 } else if env.theta_index(x).is_some() { 0 } else { -1 }).sum();
        let [a, b, c, d] = values(n)?;
        if g.word_degree(&w) == 0 {
            f.insert(w.clone(), a);
            finv.insert(w, c);
        } else {
            f.insert(w.clone(), b);
            finv.insert(w, d);
        }
    }
    Ok(Gauge::from_table(name, f, finv))
}

/// Unitary of the matrix base swapping the two basis vectors.
pub const FLIP: &str = "E12 + E21";

/// `f(zⁿ) = pⁿ`, `f(zⁿς) = pⁿ p* dp` for the unitary `p` of the matrix base.
pub fn flip_gauge(b: &Bundle) -> Result<Gauge> {
    let a = b.alg();
    let p = a.parse(FLIP)?;
    let ps = a.star(&p)?;
    let dp = b.d(&p)?;
    let pw = |n: i64, x: &Elem, y: &Elem| a.pow(if n >= 0 { x } else { y }, n.unsigned_abs() as usize);
    let form = a.mul(&ps, &dp)?;
    circle_table(b, "flip", &|n| {
        Ok([
            pw(n, &p, &ps)?,
            a.mul(&pw(n, &p, &ps)?, &form)?,
            pw(n, &ps, &p)?,
            -&a.mul(&form, &pw(n, &ps, &p)?)?,
        ])
    })
}

/// `f = 𝟙ε` on the group and `f(gς) = ε(g)λ` for a base one-form `λ`.
pub fn shift_gauge(b: &Bundle, name: &str, lambda: &Elem) -> Result<Gauge> {
    let one = b.alg().one();
    circle_table(b, name, &|_| Ok([one.clone(), lambda.clone(), one.clone(), -lambda]))
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum TrivialBase {
    Matrices,
    Point,
}

/// `Ω(M) ⊗ Γ^∧` with graded-commuting factors, `Ψ = id ⊗ φ̂`.
pub fn trivial_bundle(name: &str, base: DgAlgebra, env: Arc<Envelope>, weights: &[i64]) -> Result<Bundle> {
    let ba = base.alg.clone();
    let ga = env.alg().clone();
    let bp = ba.presentation();
    let gp = ga.presentation();
    let mut p = Presentation {
        name: format!("{}⊗{}", bp.name, gp.name),
        generators: bp.generators.iter().chain(gp.generators.iter()).cloned().collect(),
        rules: bp.rules.iter().chain(gp.rules.iter()).cloned().collect(),
        order: bp.order.iter().chain(gp.order.iter()).cloned().collect(),
        subalgebras: vec![("M".into(), bp.generators.iter().map(|g| g.name.clone()).collect())],
    };
    for f in &gp.generators {
        for b in &bp.generators {
            let s = Scalar::sign(f.degree as usize * b.degree as usize);
            p.rules.push(swap(&f.name, &b.name, s));
        }
    }
    let alg = Arc::new(Algebra::new(p)?);
    let nb = ba.num_gens() as Gen;
    let shift = |w: &[Gen]| -> Vec<Gen> { w.iter().map(|g| g + nb).collect() };
    let lift = |e: &Elem| -> Elem { e.iter().map(|(w, c)| (shift(w), c.clone())).collect() };
    let mut d = Vec::new();
    for g in 0..nb {
        d.push(base.d_gen(g).clone());
    }
    for g in 0..ga.num_gens() as Gen {
        d.push(lift(env.dga.d_gen(g)));
    }
    let omega = DgAlgebra::new(alg.clone(), d)?;
    let mut psi = Vec::new();
    for g in 0..nb {
        psi.push(tensor::pure(&[&alg.gen_elem(g), &ga.one()]));
    }
    for g in 0..ga.num_gens() as Gen {
        let t: Tensor = env.hopf.coproduct_word(&[g])?.iter().map(|(k, c)| (vec![shift(&k[0]), k[1].clone()], c.clone())).collect();
        psi.push(t);
    }
    let h = &env.calc.hopf;
    let mut reps = Vec::new();
    for &n in weights {
        let corep = weight_corep(h, n)?;
        let x = lift(&corep.matrix[0][0]);
        reps.push(RepData::with_unit_matrices(corep, vec![vec![x]])?);
    }
    let g_gens: Vec<Gen> = (0..h.alg.num_gens() as Gen).map(|g| g + nb).collect();
    let horizontal = (0..nb).chain(g_gens).collect();
    Bundle::new(BundleSpec {
        name: name.into(),
        omega,
        env,
        psi,
        base: BaseRecognizer::Generators((0..nb).collect()),
        horizontal,
        reps,
        budget: DEFAULT_BUDGET,
    })
}

pub const TRIVIAL_WEIGHTS: [i64; 7] = [-3, -2, -1, 0, 1, 2, 3];

/// Trivial U(1) bundle with the trivial connection `ω(ς) = 𝟙⊗ς` and, over the
/// matrix base, a real line-bundle potential.
pub fn trivial_u1(base: TrivialBase) -> Result<Example> {
    let env = Arc::new(circle_calculus(false)?.envelope()?);
    let (b, name) = match base {
        TrivialBase::Matrices => (matrix_base()?, "trivial-u1"),
        TrivialBase::Point => (point_base()?, "trivial-u1-point"),
    };
    let bundle = Arc::new(trivial_bundle(name, b, env, &TRIVIAL_WEIGHTS)?);
    let a = bundle.alg().clone();
    let triv = Connection::new("trivial", vec![a.g("ς")?]);
    let mut connections = vec![triv.clone()];
    if base == TrivialBase::Matrices {
        connections.push(triv.displaced("potential", &[a.parse(LINE_POTENTIAL)?]));
    }
    let mut gauges = vec![Gauge::identity(&bundle), circle_character(&bundle, "character-i", Scalar::i())?];
    if base == TrivialBase::Matrices {
        gauges.push(flip_gauge(&bundle)?);
    }
    Ok(Example { name: name.into(), bundle, connections, gauges })
}

/// A real (`μ* = -μ`) potential on the matrix base.
pub const LINE_POTENTIAL: &str = "θH + E12 θ21 + E21 θ12";

/// Tensor-power family for weight `n`: all words in `{α, γ}^n` (or
/// `{α*, qγ*}^n`), with `Z` diagonal in powers of `q²` per `γ`-letter.
pub fn hopf_weight_rep(h: &Hopf, a: &Algebra, n: i64) -> Result<RepData> {
    let corep = weight_corep(h, n)?;
    let (letters, zf): ([(&str, Scalar); 2], Scalar) = if n >= 0 {
        ([("α", one()), ("γ", one())], qp(2))
    } else {
        ([("α*", one()), ("γ*", qp(1))], qp(-2))
    };
    let mut x = vec![(a.one(), one())];
    for _ in 0..n.unsigned_abs() {
        let mut next = Vec::new();
        for (w, z) in &x {
            for (i, (l, c)) in letters.iter().enumerate() {
                let e = a.mul(w, &a.g(l)?.scale(c))?;
                let zz = if i == 1 { z * &zf } else { z.clone() };
                next.push((e, zz));
            }
        }
        x = next;
    }
    let d = x.len();
    let mut zm = vec![vec![Scalar::zero(); d]; d];
    for (k, (_, z)) in x.iter().enumerate() {
        zm[k][k] = z.clone();
    }
    RepData::new(corep, x.into_iter().map(|(e, _)| vec![e]).collect(), zm, vec![vec![one()]])
}

pub const HOPF_WEIGHTS: [i64; 7] = [-3, -2, -1, 0, 1, 2, 3];

/// The quantum Hopf fibration over the Podleś sphere with the
/// three-dimensional calculus; `ϑ` is the vertical form and `η₊, η₋` span the
/// horizontal one-forms.
pub fn hopf_fibration() -> Result<Example> {
    let env = Arc::new(circle_calculus(true)?.envelope()?);
    let mut p = suq2_presentation();
    p.name = "Ω(SUq2)".into();
    p.generators.push(GenSpec::new("ϑ", 1, "ϑ").with_star_coeff(int(-1)));
    p.generators.push(GenSpec::new("η₋", 1, "η₊").with_star_coeff(qp(-1)));
    p.generators.push(GenSpec::new("η₊", 1, "η₋").with_star_coeff(qp(1)));
    let weight = [("α", 1), ("α*", -1), ("γ", 1), ("γ*", -1)];
    for (x, w) in weight {
        p.rules.push(swap("ϑ", x, qp(-2 * w)));
        p.rules.push(swap("η₋", x, qp(-w)));
        p.rules.push(swap("η₊", x, qp(-w)));
    }
    p.rules.push(rule("ϑ ϑ", &[]));
    p.rules.push(rule("η₋ η₋", &[]));
    p.rules.push(rule("η₊ η₊", &[]));
    p.rules.push(swap("η₋", "ϑ", -qp(-4)));
    p.rules.push(swap("η₊", "ϑ", -qp(4)));
    p.rules.push(swap("η₊", "η₋", -qp(2)));
    for g in ["ϑ", "η₋", "η₊"] {
        p.order.push((g.into(), 1));
    }
    let alg = Arc::new(Algebra::new(p)?);
    let omega = dga_from(
        alg.clone(),
        &[
            ("α", "α ϑ - q γ* η₊"),
            ("γ", "γ ϑ + α* η₊"),
            ("α*", "-q^2 α* ϑ - q γ η₋"),
            ("γ*", "-q^2 γ* ϑ + α η₋"),
            ("ϑ", "q η₋ η₊"),
            ("η₋", "-(1 + q^-2) ϑ η₋"),
            ("η₊", "(q^2 + q^4) ϑ η₊"),
        ],
    )?;
    let ga = env.alg().clone();
    let psi_src = [
        ("α", "α⊗z"),
        ("α*", "α*⊗z*"),
        ("γ", "γ⊗z"),
        ("γ*", "γ*⊗z*"),
        ("ϑ", "ϑ⊗1 + 1⊗ς"),
        ("η₋", "η₋⊗(z* z*)"),
        ("η₊", "η₊⊗(z z)"),
    ];
    let mut psi = vec![Tensor::zero(); alg.num_gens()];
    for (g, s) in psi_src {
        psi[alg.gen(g)? as usize] = parse_tensor(&[&alg, &ga], s)?;
    }
    let h = env.calc.hopf.clone();
    let reps = HOPF_WEIGHTS.iter().map(|&n| hopf_weight_rep(&h, &alg, n)).collect::<Result<Vec<_>>>()?;
    let horizontal = ["α", "α*", "γ", "γ*", "η₋", "η₊"].iter().map(|g| alg.gen(g)).collect::<Result<Vec<_>>>()?;
    let bundle = Arc::new(Bundle::new(BundleSpec {
        name: "hopf-fibration".into(),
        omega,
        env,
        psi,
        base: BaseRecognizer::Invariance,
        horizontal,
        reps,
        budget: DEFAULT_BUDGET,
    })?);
    let canonical = Connection::new("canonical", vec![alg.g("ϑ")?]);
    // a real base one-form shift
    let mu = alg.parse(HOPF_SHIFT)?;
    let shifted = canonical.displaced("shifted", &[&mu - &alg.star(&mu)?]);
    let gauges = vec![
        Gauge::identity(&bundle),
        circle_character(&bundle, "character-i", Scalar::i())?,
        shift_gauge(&bundle, "shift", &shifted.difference(&canonical)[0])?,
    ];
    Ok(Example { name: "hopf-fibration".into(), bundle, connections: vec![canonical, shifted], gauges })
}

/// Invariant one-form used to displace the canonical connection.
pub const HOPF_SHIFT: &str = "α* γ* η₊";

/// Rank-one Dunkl bundle over `ℝ∖{0}` with polynomial functions in `x`,
/// `x⁻¹` and the sign `s`; `dx` is the horizontal de Rham form and `ϑ`
/// the vertical form of the trivial-form connection. The multiplicity is
/// the scalar `kappa`.
pub fn dunkl_rank1(kappa: Scalar) -> Result<Example> {
    let env = Arc::new(z2_calculus()?.envelope()?);
    let gens = ["x", "x⁻¹", "s", "dx", "ϑ"];
    let mut rules = vec![
        rule("x x⁻¹", &[(one(), "")]),
        rule("x⁻¹ x", &[(one(), "")]),
        rule("s s", &[(one(), "")]),
        rule("dx dx", &[]),
        swap("s", "x", one()),
        swap("s", "x⁻¹", one()),
        swap("dx", "x", one()),
        swap("dx", "x⁻¹", one()),
        swap("dx", "s", one()),
        swap("ϑ", "dx", one()),
    ];
    for g in ["x", "x⁻¹", "s"] {
        rules.push(swap("ϑ", g, int(-1)));
    }
    let alg = Arc::new(Algebra::new(Presentation {
        name: "Ω(R∖0)".into(),
        generators: vec![
            GenSpec::new("x", 0, "x"),
            GenSpec::new("x⁻¹", 0, "x⁻¹"),
            GenSpec::new("s", 0, "s"),
            GenSpec::new("dx", 1, "dx"),
            GenSpec::new("ϑ", 1, "ϑ").with_star_coeff(int(-1)),
        ],
        rules,
        order: gens.iter().map(|g| (g.to_string(), 1)).collect(),
        subalgebras: vec![],
    })?);
    let omega = dga_from(
        alg.clone(),
        &[
            ("x", "dx + x ϑ"),
            ("x⁻¹", "-x⁻¹ x⁻¹ dx + x⁻¹ ϑ"),
            ("s", "s ϑ"),
            ("dx", "-dx ϑ"),
            ("ϑ", "-ϑ ϑ"),
        ],
    )?;
    let ga = env.alg().clone();
    let psi_src = [("x", "x⊗t"), ("x⁻¹", "x⁻¹⊗t"), ("s", "s⊗t"), ("dx", "dx⊗t"), ("ϑ", "ϑ⊗1 + 1⊗θ")];
    let mut psi = vec![Tensor::zero(); alg.num_gens()];
    for (g, s) in psi_src {
        psi[alg.gen(g)? as usize] = parse_tensor(&[&alg, &ga], s)?;
    }
    let h = env.calc.hopf.clone();
    let sign = RepData::with_unit_matrices(sign_corep(&h)?, vec![vec![alg.g("s")?]])?;
    let triv = RepData::with_unit_matrices(Corep::new("trivial", vec![vec![h.alg.one()]])?, vec![vec![alg.one()]])?;
    let horizontal = ["x", "x⁻¹", "s", "dx"].iter().map(|g| alg.gen(g)).collect::<Result<Vec<_>>>()?;
    let bundle = Arc::new(Bundle::new(BundleSpec {
        name: "dunkl-rank1".into(),
        omega,
        env,
        psi,
        base: BaseRecognizer::Invariance,
        horizontal,
        reps: vec![triv, sign],
        budget: DEFAULT_BUDGET,
    })?);
    let canonical = Connection::new("canonical", vec![alg.g("ϑ")?]);
    let lambda = dunkl_displacement(&alg, &kappa)?;
    let dunkl = canonical.displaced("dunkl", core::slice::from_ref(&lambda));
    let real = canonical.displaced("dunkl-real", &[lambda.scale(&Scalar::i())]);
    let sign = Character(vec![int(-1)]);
    let gauges = vec![Gauge::identity(&bundle), Gauge::from_character(&bundle, "character-sign", sign)?];
    Ok(Example { name: "dunkl-rank1".into(), bundle, connections: vec![canonical, dunkl, real], gauges })
}

/// `λ(θ) = -2κ x⁻¹dx`.
pub fn dunkl_displacement(a: &Algebra, kappa: &Scalar) -> Result<Elem> {
    Ok(a.parse("x⁻¹ dx")?.scale(&(kappa * &int(-2))))
}

pub fn by_name(name: &str, kappa: Option<Scalar>) -> Result<Example> {
    match name {
        "trivial-u1" => trivial_u1(TrivialBase::Matrices),
        "trivial-u1-point" => trivial_u1(TrivialBase::Point),
        "hopf-fibration" => hopf_fibration(),
        "dunkl-rank1" => dunkl_rank1(kappa.unwrap_or_else(Scalar::q)),
        _ => Err(Error::UnknownGenerator(format!("example `{name}`"))),
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn clean(v: Vec<String>) {
        assert_eq!(v, Vec::<String>::new());
    }

    #[test]
    fn matrix_base_is_a_dga() {
        let b = matrix_base().unwrap();
        clean(b.validate().unwrap());
        clean(b.alg.check_star_relations().unwrap());
        let a = &b.alg;
        assert_eq!(a.parse("E21 E12 + E11").unwrap(), a.one());
        assert_eq!(a.irreducible_words(1).len(), 7);
    }

    #[test]
    fn trivial_bundles_are_principal() {
        for base in [TrivialBase::Matrices, TrivialBase::Point] {
            let ex = trivial_u1(base).unwrap();
            let b = &ex.bundle;
            clean(b.omega.validate().unwrap());
            clean(b.check_qpb().unwrap());
            for c in &ex.connections {
                clean(b.connection_failures(c).unwrap());
            }
        }
    }

    #[test]
    fn hopf_fibration_is_principal() {
        let ex = hopf_fibration().unwrap();
        let b = &ex.bundle;
        clean(b.omega.validate().unwrap());
        clean(b.alg().check_star_relations().unwrap());
        clean(b.check_qpb().unwrap());
        for c in &ex.connections {
            clean(b.connection_failures(c).unwrap());
        }
    }

    #[test]
    fn dunkl_bundle_is_principal() {
        let ex = dunkl_rank1(Scalar::q()).unwrap();
        let b = &ex.bundle;
        clean(b.omega.validate().unwrap());
        clean(b.check_qpb().unwrap());
        for c in &ex.connections {
            clean(b.connection_failures(c).unwrap());
        }
        let a = b.alg();
        assert!(b.is_base(&a.parse("x⁻¹ dx").unwrap()).unwrap());
        assert!(!b.is_base(&a.parse("dx").unwrap()).unwrap());
    }
}

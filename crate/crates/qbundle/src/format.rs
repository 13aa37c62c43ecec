//! Sectioned text format for presentations, Hopf structures, calculi,
//! bundles, connections and gauge transformations.
//!
//! A file is a sequence of `[kind name]` headers, each followed by
//! `key [argument] = value` lines; `#` starts a comment.

use std::collections::BTreeMap;
use std::fmt::Write as _;
use std::sync::Arc;

use qbundle_core::bundle::{BaseRecognizer, Bundle, BundleSpec, Connection, RepData, DEFAULT_BUDGET};
use qbundle_core::dga::DgAlgebra;
use qbundle_core::examples::Example;
use qbundle_core::expr::parse_tensor;
use qbundle_core::fodc::{Calculus, CalculusSpec, Envelope, Inv, Inv2, DEFAULT_WORD_BOUND};
use qbundle_core::gauge::{Gauge, GaugeKind};
use qbundle_core::hopf::{Character, Corep, Hopf};
use qbundle_core::ncalg::{GenSpec, RuleSpec};
use qbundle_core::{tensor, Algebra, Elem, Gen, Presentation, Scalar, Tensor, Word};

#[derive(Debug, Clone, PartialEq, Eq, thiserror::Error)]
pub enum FormatError {
    #[error("{line}:{col}: {msg}")]
    Syntax { line: usize, col: usize, msg: String },
    #[error("line {line}: {err}")]
    Engine { line: usize, err: qbundle_core::Error },
}

type Res<T> = Result<T, FormatError>;

#[derive(Debug, Clone)]
struct Entry {
    line: usize,
    key: String,
    arg: String,
    value: String,
    /// 1-based character column where `value` starts.
    col: usize,
}

#[derive(Debug, Clone)]
struct Section {
    line: usize,
    kind: String,
    name: String,
    entries: Vec<Entry>,
}

impl Entry {
    fn syntax(&self, offset: usize, msg: impl Into<String>) -> FormatError {
        FormatError::Syntax { line: self.line, col: self.col + offset, msg: msg.into() }
    }
    /// Map an engine error raised while reading the value piece at `offset`.
    fn engine(&self, offset: usize, err: qbundle_core::Error) -> FormatError {
        match err {
            qbundle_core::Error::Parse { col, msg, .. } => self.syntax(offset + col - 1, msg),
            err => FormatError::Engine { line: self.line, err },
        }
    }
}

fn sections(src: &str) -> Res<Vec<Section>> {
    let mut out: Vec<Section> = Vec::new();
    for (i, raw) in src.lines().enumerate() {
        let line = i + 1;
        let text = raw.split('#').next().unwrap_or("");
        let lead = text.chars().take_while(|c| c.is_whitespace()).count();
        let t = text.trim();
        if t.is_empty() {
            continue;
        }
        if let Some(rest) = t.strip_prefix('[') {
            let Some(inner) = rest.strip_suffix(']') else {
                return Err(FormatError::Syntax { line, col: lead + t.chars().count() + 1, msg: "expected `]`".into() });
            };
            let inner = inner.trim();
            let (kind, name) = inner.split_once(char::is_whitespace).unwrap_or((inner, ""));
            if kind.is_empty() {
                return Err(FormatError::Syntax { line, col: lead + 2, msg: "empty section header".into() });
            }
            out.push(Section { line, kind: kind.into(), name: name.trim().into(), entries: Vec::new() });
            continue;
        }
        let Some(sec) = out.last_mut() else {
            return Err(FormatError::Syntax { line, col: lead + 1, msg: "entry outside of a section".into() });
        };
        let Some((head, value)) = t.split_once('=') else {
            return Err(FormatError::Syntax { line, col: lead + 1, msg: "expected `key = value`".into() });
        };
        let head = head.trim();
        let (key, arg) = head.split_once(char::is_whitespace).unwrap_or((head, ""));
        let vstart = head.len() + (t[head.len()..].find('=').unwrap_or(0)) + 1;
        let vpad = t[vstart..].chars().take_while(|c| c.is_whitespace()).count();
        let col = lead + t[..vstart].chars().count() + vpad + 1;
        let value = value.trim();
        if key.is_empty() {
            return Err(FormatError::Syntax { line, col: lead + 1, msg: "missing key".into() });
        }
        // an empty subalgebra is the scalars
        if value.is_empty() && key != "subalgebra" {
            return Err(FormatError::Syntax { line, col, msg: format!("missing value for `{key}`") });
        }
        sec.entries.push(Entry { line, key: key.into(), arg: arg.trim().into(), value: value.into(), col });
    }
    Ok(out)
}

/// Top-level pieces of `s` separated by `sep`, with their character offsets.
pub(crate) fn pieces<'s>(s: &'s str, sep: char) -> Vec<(usize, &'s str)> {
    let mut out = Vec::new();
    let mut depth = 0i32;
    let mut start = 0usize;
    let push = |out: &mut Vec<(usize, &'s str)>, a: usize, b: usize| {
        let p = &s[a..b];
        let lead = p.len() - p.trim_start().len();
        if !p.trim().is_empty() {
            out.push((s[..a + lead].chars().count(), p.trim()));
        }
    };
    for (i, c) in s.char_indices() {
        match c {
            '(' | '[' => depth += 1,
            ')' | ']' => depth -= 1,
            c if c == sep && depth == 0 => {
                push(&mut out, start, i);
                start = i + c.len_utf8();
            }
            _ => {}
        }
    }
    push(&mut out, start, s.len());
    out
}

fn bracketed<'a>(e: &Entry, off: usize, s: &'a str) -> Res<&'a str> {
    s.strip_prefix('[').and_then(|r| r.strip_suffix(']')).ok_or_else(|| e.syntax(off, "expected `[...]`"))
}

/// `[[a, b], [c, d]]` as rows of `(offset, text)`.
fn matrix(e: &Entry) -> Res<Vec<Vec<(usize, &str)>>> {
    let inner = bracketed(e, 0, &e.value)?;
    let mut rows = Vec::new();
    for (off, row) in pieces(inner, ',') {
        let cells = bracketed(e, off + 1, row)?;
        rows.push(pieces(cells, ',').into_iter().map(|(o, c)| (off + 2 + o, c)).collect::<Vec<_>>());
    }
    if rows.is_empty() || rows.iter().any(|r: &Vec<_>| r.len() != rows[0].len()) {
        return Err(e.syntax(0, "matrix rows must be non-empty and of equal length"));
    }
    Ok(rows)
}

fn scalar_at(e: &Entry, off: usize, s: &str) -> Res<Scalar> {
    s.parse::<Scalar>().map_err(|err| e.engine(off, err.into()))
}

fn scalar_matrix(e: &Entry) -> Res<Vec<Vec<Scalar>>> {
    matrix(e)?.into_iter().map(|r| r.into_iter().map(|(o, c)| scalar_at(e, o, c)).collect()).collect()
}

fn elem_matrix(e: &Entry, a: &Algebra) -> Res<Vec<Vec<Elem>>> {
    matrix(e)?.into_iter().map(|r| r.into_iter().map(|(o, c)| a.parse(c).map_err(|err| e.engine(o, err))).collect()).collect()
}

fn usize_value(e: &Entry) -> Res<usize> {
    e.value.parse().map_err(|_| e.syntax(0, "expected a non-negative integer"))
}

fn gen_of(e: &Entry, a: &Algebra, name: &str) -> Res<Gen> {
    a.gen(name).map_err(|err| FormatError::Engine { line: e.line, err })
}

fn single_word(e: &Entry, a: &Algebra, src: &str) -> Res<Word> {
    let v = a.parse(src).map_err(|err| e.engine(0, err))?;
    match v.iter().next() {
        Some((w, c)) if v.len() == 1 && c.is_one() => Ok(w.clone()),
        _ => Err(e.syntax(0, format!("`{src}` is not a normal word"))),
    }
}

/// Free algebra on `names`, used to read right-hand sides before the rules exist.
fn free(names: &[GenSpec], degree: Option<u8>) -> Result<Algebra, qbundle_core::Error> {
    let generators = names
        .iter()
        .map(|g| GenSpec::new(&g.name, degree.unwrap_or(g.degree), if degree.is_some() { &g.name } else { &g.star.1 }))
        .collect();
    Algebra::new(Presentation { name: "free".into(), generators, ..Default::default() })
}

fn basis_algebra(names: &[String]) -> Result<Algebra, qbundle_core::Error> {
    free(&names.iter().map(|n| GenSpec::new(n, 1, n)).collect::<Vec<_>>(), Some(1))
}

/// Reads `generators`, `rules`, `order` and `subalgebra` entries.
fn presentation(sec: &Section) -> Res<Presentation> {
    let mut p = Presentation { name: sec.name.clone(), ..Default::default() };
    for e in sec.entries.iter().filter(|e| e.key == "generators") {
        for (off, tok) in pieces(&e.value, ' ').into_iter().flat_map(|(o, t)| pieces(t, ',').into_iter().map(move |(o2, t2)| (o + o2, t2))) {
            let parts: Vec<&str> = tok.split(':').collect();
            if !(3..=4).contains(&parts.len()) {
                return Err(e.syntax(off, format!("expected `name:degree:partner[:coefficient]`, found `{tok}`")));
            }
            let deg: u8 = parts[1].parse().map_err(|_| e.syntax(off, format!("bad degree in `{tok}`")))?;
            let mut g = GenSpec::new(parts[0], deg, parts[2]);
            if let Some(c) = parts.get(3) {
                g = g.with_star_coeff(scalar_at(e, off, c)?);
            }
            p.generators.push(g);
        }
    }
    let fa = free(&p.generators, None).map_err(|err| FormatError::Engine { line: sec.line, err })?;
    for e in sec.entries.iter().filter(|e| e.key == "rules") {
        for (off, r) in pieces(&e.value, ';') {
            let Some((lhs, rhs)) = r.split_once("->") else {
                return Err(e.syntax(off, "expected `word -> combination`"));
            };
            let roff = off + lhs.chars().count() + 2;
            let pad = rhs.len() - rhs.trim_start().len();
            let v = fa.parse(rhs.trim()).map_err(|err| e.engine(roff + pad, err))?;
            let rhs = v.iter().map(|(w, c)| (c.clone(), w.iter().map(|&g| fa.gen_info(g).name.clone()).collect())).collect();
            let lhs: Vec<String> = lhs.split_whitespace().map(String::from).collect();
            for g in &lhs {
                gen_of(e, &fa, g)?;
            }
            p.rules.push(RuleSpec { lhs, rhs });
        }
    }
    for e in sec.entries.iter().filter(|e| e.key == "order") {
        for (off, tok) in pieces(&e.value, ' ') {
            let (n, w) = tok.split_once(':').unwrap_or((tok, "1"));
            let w: u32 = w.parse().map_err(|_| e.syntax(off, format!("bad weight in `{tok}`")))?;
            p.order.push((n.into(), w));
        }
    }
    for e in sec.entries.iter().filter(|e| e.key == "subalgebra") {
        p.subalgebras.push((e.arg.clone(), e.value.split_whitespace().map(String::from).collect()));
    }
    Ok(p)
}

fn d_table(sec: &Section, a: &Arc<Algebra>) -> Res<Option<DgAlgebra>> {
    let ds: Vec<&Entry> = sec.entries.iter().filter(|e| e.key == "d").collect();
    if ds.is_empty() {
        return Ok(None);
    }
    let mut d = vec![Elem::zero(); a.num_gens()];
    for e in ds {
        let g = gen_of(e, a, &e.arg)?;
        d[g as usize] = a.parse(&e.value).map_err(|err| e.engine(0, err))?;
    }
    DgAlgebra::new(a.clone(), d).map(Some).map_err(|err| FormatError::Engine { line: sec.line, err })
}

/// Outcome of a declared table compared against the computed structure.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Assertion {
    pub line: usize,
    pub label: String,
    pub failure: Option<String>,
}

/// Everything read from one file.
#[derive(Debug, Clone, Default)]
pub struct Document {
    pub algebras: Vec<Arc<Algebra>>,
    pub dgas: Vec<DgAlgebra>,
    pub hopfs: Vec<Arc<Hopf>>,
    pub coreps: Vec<(Arc<Hopf>, Corep)>,
    pub envelopes: Vec<Arc<Envelope>>,
    pub bundle: Option<Arc<Bundle>>,
    pub connections: Vec<Connection>,
    pub gauges: Vec<Gauge>,
    pub assertions: Vec<Assertion>,
}

impl Document {
    /// The example described by a file with a `[bundle]` section.
    pub fn example(&self) -> Option<Example> {
        let b = self.bundle.clone()?;
        Some(Example { name: b.name.clone(), bundle: b, connections: self.connections.clone(), gauges: self.gauges.clone() })
    }
}

struct PendingBundle {
    line: usize,
    name: String,
    omega: DgAlgebra,
    env: Arc<Envelope>,
    psi: Vec<Tensor>,
    base: BaseRecognizer,
    horizontal: Vec<Gen>,
    budget: usize,
    reps: Vec<RepData>,
}

struct Loader {
    doc: Document,
    pending: Option<PendingBundle>,
}

impl Loader {
    fn bundle(&mut self, line: usize) -> Res<Arc<Bundle>> {
        if let Some(p) = self.pending.take() {
            let b = Bundle::new(BundleSpec {
                name: p.name,
                omega: p.omega,
                env: p.env,
                psi: p.psi,
                base: p.base,
                horizontal: p.horizontal,
                reps: p.reps,
                budget: p.budget,
            })
            .map_err(|err| FormatError::Engine { line: p.line, err })?;
            self.doc.bundle = Some(Arc::new(b));
        }
        self.doc.bundle.clone().ok_or(FormatError::Syntax { line, col: 1, msg: "no [bundle] section in scope".into() })
    }

    fn last_hopf(&self, sec: &Section) -> Res<Arc<Hopf>> {
        self.doc.hopfs.last().cloned().ok_or(FormatError::Syntax { line: sec.line, col: 1, msg: "no [hopf] section in scope".into() })
    }

    fn section(&mut self, sec: &Section) -> Res<()> {
        let known: &[&str] = match sec.kind.as_str() {
            "algebra" => &["generators", "rules", "order", "subalgebra", "d"],
            "hopf" => &["phi", "eps", "kappa"],
            "corep" => &["dim", "matrix"],
            "fodc" => &["ideal", "basis", "preimage", "delta", "word-bound", "circ", "ad", "wedge-relations"],
            "bundle" => &["generators", "rules", "order", "subalgebra", "d", "psi", "base", "horizontal", "budget"],
            "rep" => &["matrix", "tl", "Z", "C"],
            "connection" => &["omega"],
            "gauge" => &["character", "f", "finv"],
            k => return Err(FormatError::Syntax { line: sec.line, col: 2, msg: format!("unknown section kind `{k}`") }),
        };
        if let Some(e) = sec.entries.iter().find(|e| !known.contains(&e.key.as_str())) {
            return Err(FormatError::Syntax { line: e.line, col: 1, msg: format!("unknown key `{}` in [{}]", e.key, sec.kind) });
        }
        let at = |err| FormatError::Engine { line: sec.line, err };
        match sec.kind.as_str() {
            "algebra" => {
                let a = Arc::new(Algebra::new(presentation(sec)?).map_err(at)?);
                if let Some(d) = d_table(sec, &a)? {
                    self.doc.dgas.push(d);
                }
                self.doc.algebras.push(a);
            }
            "hopf" => {
                let a = match sec.name.as_str() {
                    "" => self.doc.algebras.last().cloned(),
                    n => self.doc.algebras.iter().find(|a| a.name() == n).cloned(),
                }
                .ok_or(FormatError::Syntax { line: sec.line, col: 2, msg: "no matching [algebra] section".into() })?;
                let n = a.num_gens();
                let (mut phi, mut eps, mut kappa) = (vec![None; n], vec![None; n], vec![None; n]);
                for e in &sec.entries {
                    let g = gen_of(e, &a, &e.arg)? as usize;
                    match e.key.as_str() {
                        "phi" => phi[g] = Some(parse_tensor(&[&a, &a], &e.value).map_err(|err| e.engine(0, err))?),
                        "eps" => eps[g] = Some(scalar_at(e, 0, &e.value)?),
                        _ => kappa[g] = Some(a.parse(&e.value).map_err(|err| e.engine(0, err))?),
                    }
                }
                let missing = |k: &str, g: usize| FormatError::Syntax {
                    line: sec.line,
                    col: 1,
                    msg: format!("missing `{k} {}`", a.gen_info(g as Gen).name),
                };
                fn take<T>(v: Vec<Option<T>>, k: &str, missing: &dyn Fn(&str, usize) -> FormatError) -> Res<Vec<T>> {
                    v.into_iter().enumerate().map(|(g, x)| x.ok_or_else(|| missing(k, g))).collect()
                }
                let h = Hopf::new(a.clone(), take(phi, "phi", &missing)?, take(eps, "eps", &missing)?, take(kappa, "kappa", &missing)?)
                    .map_err(at)?;
                self.doc.hopfs.push(Arc::new(h));
            }
            "corep" => {
                let h = self.last_hopf(sec)?;
                let e = sec.entries.iter().find(|e| e.key == "matrix").ok_or(FormatError::Syntax {
                    line: sec.line,
                    col: 1,
                    msg: "missing `matrix`".into(),
                })?;
                let m = elem_matrix(e, &h.alg)?;
                if let Some(d) = sec.entries.iter().find(|e| e.key == "dim") {
                    if usize_value(d)? != m.len() {
                        return Err(d.syntax(0, "dimension does not match the matrix"));
                    }
                }
                let c = Corep::new(&sec.name, m).map_err(at)?;
                self.doc.coreps.push((h, c));
            }
            "fodc" => self.fodc(sec)?,
            "bundle" => self.bundle_section(sec)?,
            "rep" => {
                let Some(p) = self.pending.as_mut() else {
                    return Err(FormatError::Syntax { line: sec.line, col: 1, msg: "[rep] must follow [bundle]".into() });
                };
                let h = p.env.calc.hopf.clone();
                let get = |k: &str| sec.entries.iter().find(|e| e.key == k);
                let need = |k: &str| get(k).ok_or(FormatError::Syntax { line: sec.line, col: 1, msg: format!("missing `{k}`") });
                let corep = Corep::new(&sec.name, elem_matrix(need("matrix")?, &h.alg)?).map_err(at)?;
                let x = elem_matrix(need("tl")?, &p.omega.alg)?;
                let rep = match (get("Z"), get("C")) {
                    (None, None) => RepData::with_unit_matrices(corep, x),
                    (z, c) => {
                        let unit = |n: usize| (0..n).map(|i| (0..n).map(|j| if i == j { Scalar::one() } else { Scalar::zero() }).collect()).collect();
                        let z = z.map(scalar_matrix).transpose()?.unwrap_or_else(|| unit(x.len()));
                        let c = c.map(scalar_matrix).transpose()?.unwrap_or_else(|| unit(x.first().map_or(0, |r| r.len())));
                        RepData::new(corep, x, z, c)
                    }
                }
                .map_err(at)?;
                p.reps.push(rep);
            }
            "connection" => {
                let b = self.bundle(sec.line)?;
                let a = b.alg();
                let names = b.env.calc.basis_names();
                let mut table = vec![None; names.len()];
                for e in &sec.entries {
                    let i = names.iter().position(|n| *n == e.arg).ok_or_else(|| e.syntax(0, format!("unknown basis element `{}`", e.arg)))?;
                    table[i] = Some(a.parse(&e.value).map_err(|err| e.engine(0, err))?);
                }
                let table = table
                    .into_iter()
                    .enumerate()
                    .map(|(i, v)| v.ok_or(FormatError::Syntax { line: sec.line, col: 1, msg: format!("missing `omega {}`", names[i]) }))
                    .collect::<Res<Vec<_>>>()?;
                upsert(&mut self.doc.connections, Connection::new(&sec.name, table), |c| &c.name);
            }
            "gauge" => {
                let b = self.bundle(sec.line)?;
                let g = gauge(sec, &b)?;
                upsert(&mut self.doc.gauges, g, |g| &g.name);
            }
            _ => unreachable!(),
        }
        Ok(())
    }

    fn fodc(&mut self, sec: &Section) -> Res<()> {
        let h = self.last_hopf(sec)?;
        let a = &*h.alg;
        let at = |err| FormatError::Engine { line: sec.line, err };
        let mut names: Vec<String> = Vec::new();
        for e in sec.entries.iter().filter(|e| e.key == "basis") {
            names.extend(e.value.split(|c: char| c.is_whitespace() || c == ',').filter(|s| !s.is_empty()).map(String::from));
        }
        let mut pre = vec![None; names.len()];
        let mut ideal = Vec::new();
        let mut delta: Vec<Option<Inv2>> = vec![None; names.len()];
        let mut bound = DEFAULT_WORD_BOUND;
        let ba = basis_algebra(&names).map_err(at)?;
        let index = |e: &Entry| names.iter().position(|n| *n == e.arg).ok_or_else(|| e.syntax(0, format!("unknown basis element `{}`", e.arg)));
        for e in &sec.entries {
            match e.key.as_str() {
                "preimage" => pre[index(e)?] = Some(a.parse(&e.value).map_err(|err| e.engine(0, err))?),
                "ideal" => {
                    for (off, s) in pieces(&e.value, ',') {
                        ideal.push(a.parse(s).map_err(|err| e.engine(off, err))?);
                    }
                }
                "delta" => {
                    let t = parse_tensor(&[&ba, &ba], &e.value).map_err(|err| e.engine(0, err))?;
                    let mut v = Inv2::zero();
                    for (ks, c) in t.iter() {
                        if ks[0].len() != 1 || ks[1].len() != 1 {
                            return Err(e.syntax(0, "delta must be a combination of basis pairs"));
                        }
                        v.add_term((ks[0][0] as usize, ks[1][0] as usize), c.clone());
                    }
                    delta[index(e)?] = Some(v);
                }
                "word-bound" => bound = usize_value(e)?,
                _ => {}
            }
        }
        let basis = names
            .iter()
            .zip(pre)
            .map(|(n, p)| p.map(|p| (n.clone(), p)).ok_or(FormatError::Syntax { line: sec.line, col: 1, msg: format!("missing `preimage {n}`") }))
            .collect::<Res<Vec<_>>>()?;
        let delta = if delta.iter().all(Option::is_none) {
            None
        } else {
            Some(delta.into_iter().map(|d| d.unwrap_or_default()).collect())
        };
        let spec = CalculusSpec { name: sec.name.clone(), ideal, basis, delta, word_bound: bound };
        let calc = Arc::new(Calculus::new(h.clone(), spec).map_err(at)?);
        let env = Arc::new(calc.envelope().map_err(at)?);
        for e in &sec.entries {
            let outcome = match e.key.as_str() {
                "circ" => {
                    let mut it = e.arg.split_whitespace();
                    let (Some(th), Some(g)) = (it.next(), it.next()) else {
                        return Err(e.syntax(0, "expected `circ <basis> <element> = <combination>`"));
                    };
                    let i = names.iter().position(|n| n == th).ok_or_else(|| e.syntax(0, format!("unknown basis element `{th}`")))?;
                    let g = a.parse(&e.arg[e.arg.find(g).unwrap_or(0)..]).map_err(|err| e.engine(0, err))?;
                    let want = ba.parse(&e.value).map_err(|err| e.engine(0, err))?;
                    let got = calc.circ(&Inv::single(i, Scalar::one()), &g).map_err(at)?;
                    let got_e: Elem = got.iter().map(|(j, c)| (vec![*j as Gen], c.clone())).collect();
                    (got_e != want).then(|| format!("computed {}", ba.fmt(&got_e)))
                }
                "ad" => {
                    let i = index(e)?;
                    let want = parse_tensor(&[&ba, a], &e.value).map_err(|err| e.engine(0, err))?;
                    let mut got = Tensor::zero();
                    for (j, x) in calc.ad(i).iter().enumerate() {
                        got.add_assign(&tensor::pure(&[&ba.gen_elem(j as Gen), x]));
                    }
                    (got != want).then(|| format!("computed {}", tensor::fmt(&[&ba, a], &got)))
                }
                "wedge-relations" => {
                    let ga = env.alg();
                    let mut bad = Vec::new();
                    for (off, s) in pieces(&e.value, ',') {
                        let r = ga.parse(s).map_err(|err| e.engine(off, err))?;
                        if !r.is_zero() {
                            bad.push(format!("{s} reduces to {}", ga.fmt(&r)));
                        }
                    }
                    (!bad.is_empty()).then(|| bad.join("; "))
                }
                _ => continue,
            };
            let label = format!("{} {} = {}", e.key, e.arg, e.value).replace("  ", " ");
            self.doc.assertions.push(Assertion { line: e.line, label, failure: outcome });
        }
        self.doc.envelopes.push(env);
        Ok(())
    }

    fn bundle_section(&mut self, sec: &Section) -> Res<()> {
        let env = self
            .doc
            .envelopes
            .last()
            .cloned()
            .ok_or(FormatError::Syntax { line: sec.line, col: 1, msg: "[bundle] needs a preceding [fodc] section".into() })?;
        let at = |err| FormatError::Engine { line: sec.line, err };
        let a = Arc::new(Algebra::new(presentation(sec)?).map_err(at)?);
        let omega = match d_table(sec, &a)? {
            Some(d) => d,
            None => DgAlgebra::new(a.clone(), vec![Elem::zero(); a.num_gens()]).map_err(at)?,
        };
        let ga = env.alg().clone();
        let mut psi = vec![None; a.num_gens()];
        let mut base = BaseRecognizer::Invariance;
        let mut horizontal = Vec::new();
        let mut budget = DEFAULT_BUDGET;
        for e in &sec.entries {
            match e.key.as_str() {
                "psi" => {
                    let g = gen_of(e, &a, &e.arg)?;
                    psi[g as usize] = Some(parse_tensor(&[&a, &ga], &e.value).map_err(|err| e.engine(0, err))?);
                }
                "base" => {
                    let mut it = e.value.split_whitespace();
                    base = match it.next() {
                        Some("invariance") => BaseRecognizer::Invariance,
                        Some("generators") => BaseRecognizer::Generators(it.map(|n| gen_of(e, &a, n)).collect::<Res<_>>()?),
                        _ => return Err(e.syntax(0, "expected `invariance` or `generators <names>`")),
                    };
                }
                "horizontal" => {
                    horizontal = e.value.split_whitespace().map(|n| gen_of(e, &a, n)).collect::<Res<_>>()?;
                }
                "budget" => budget = usize_value(e)?,
                _ => {}
            }
        }
        let psi = psi
            .into_iter()
            .enumerate()
            .map(|(g, t)| t.ok_or(FormatError::Syntax { line: sec.line, col: 1, msg: format!("missing `psi {}`", a.gen_info(g as Gen).name) }))
            .collect::<Res<Vec<_>>>()?;
        self.pending = Some(PendingBundle { line: sec.line, name: sec.name.clone(), omega, env, psi, base, horizontal, budget, reps: Vec::new() });
        Ok(())
    }
}

fn upsert<T>(v: &mut Vec<T>, x: T, name: impl Fn(&T) -> &String) {
    match v.iter().position(|y| name(y) == name(&x)) {
        Some(i) => v[i] = x,
        None => v.push(x),
    }
}

fn gauge(sec: &Section, b: &Bundle) -> Res<Gauge> {
    let at = |err| FormatError::Engine { line: sec.line, err };
    let h = &b.env.calc.hopf;
    let chars: Vec<&Entry> = sec.entries.iter().filter(|e| e.key == "character").collect();
    if !chars.is_empty() {
        if chars.len() != sec.entries.len() {
            return Err(FormatError::Syntax { line: sec.line, col: 1, msg: "a gauge is either a character or a table".into() });
        }
        let mut chi = Character::counit(h);
        for e in chars {
            let g = gen_of(e, &h.alg, &e.arg)?;
            chi.0[g as usize] = scalar_at(e, 0, &e.value)?;
        }
        return Gauge::from_character(b, &sec.name, chi).map_err(at);
    }
    let (a, ga) = (b.alg(), b.galg());
    let mut f = BTreeMap::new();
    let mut finv = BTreeMap::new();
    for e in &sec.entries {
        let w = single_word(e, ga, &e.arg)?;
        let v = a.parse(&e.value).map_err(|err| e.engine(0, err))?;
        if e.key == "f" { &mut f } else { &mut finv }.insert(w, v);
    }
    Ok(Gauge::from_table(&sec.name, f, finv))
}

/// Read a complete file.
/// Whether `src` describes a whole bundle rather than an overlay.
pub fn has_bundle(src: &str) -> Res<bool> {
    Ok(sections(src)?.iter().any(|s| s.kind == "bundle"))
}

pub fn load(src: &str) -> Res<Document> {
    let mut l = Loader { doc: Document::default(), pending: None };
    for sec in sections(src)? {
        l.section(&sec)?;
    }
    if l.pending.is_some() {
        l.bundle(0)?;
    }
    Ok(l.doc)
}

/// Apply `[connection]` and `[gauge]` sections to a registered example;
/// entries with an existing name replace the registered one.
pub fn overlay(src: &str, ex: &Example) -> Res<Example> {
    let mut l = Loader {
        doc: Document { bundle: Some(ex.bundle.clone()), connections: ex.connections.clone(), gauges: ex.gauges.clone(), ..Default::default() },
        pending: None,
    };
    for sec in sections(src)? {
        if sec.kind != "connection" && sec.kind != "gauge" {
            return Err(FormatError::Syntax { line: sec.line, col: 2, msg: "an overlay holds only [connection] and [gauge] sections".into() });
        }
        l.section(&sec)?;
    }
    Ok(Example { name: ex.name.clone(), bundle: ex.bundle.clone(), connections: l.doc.connections, gauges: l.doc.gauges })
}

// ---- writing

fn write_presentation(out: &mut String, a: &Algebra) {
    let p = a.presentation();
    let gens: Vec<String> = p
        .generators
        .iter()
        .map(|g| {
            let mut s = format!("{}:{}:{}", g.name, g.degree, g.star.1);
            if !g.star.0.is_one() {
                let _ = write!(s, ":{}", g.star.0);
            }
            s
        })
        .collect();
    if !gens.is_empty() {
        let _ = writeln!(out, "generators = {}", gens.join(" "));
    }
    for r in a.rules() {
        let _ = writeln!(out, "rules = {} -> {}", a.word_str(&r.lhs), a.fmt(&r.rhs));
    }
    if !p.order.is_empty() {
        let o: Vec<String> = p.order.iter().map(|(n, w)| if *w == 1 { n.clone() } else { format!("{n}:{w}") }).collect();
        let _ = writeln!(out, "order = {}", o.join(" "));
    }
    for (n, gs) in &p.subalgebras {
        let _ = writeln!(out, "subalgebra {n} = {}", gs.join(" "));
    }
}

fn write_d(out: &mut String, d: &DgAlgebra) {
    let a = &d.alg;
    for g in 0..a.num_gens() as Gen {
        let v = d.d_gen(g);
        if !v.is_zero() {
            let _ = writeln!(out, "d {} = {}", a.gen_info(g).name, a.fmt(v));
        }
    }
}

/// A single `[algebra]` section with its differential.
pub fn write_dga(d: &DgAlgebra) -> String {
    let mut out = format!("[algebra {}]\n", d.alg.name());
    write_presentation(&mut out, &d.alg);
    write_d(&mut out, d);
    out
}

fn write_matrix<T>(rows: &[Vec<T>], cell: impl Fn(&T) -> String) -> String {
    let r: Vec<String> = rows.iter().map(|r| format!("[{}]", r.iter().map(&cell).collect::<Vec<_>>().join(", "))).collect();
    format!("[{}]", r.join(", "))
}

/// Serialize a registered example; [`load`] reads it back.
pub fn write_example(ex: &Example) -> String {
    let b = &ex.bundle;
    let env = &b.env;
    let calc = &env.calc;
    let h = &calc.hopf;
    let g = &*h.alg;
    let a = &**b.alg();
    let ga = &**b.galg();
    let mut out = String::new();
    let _ = writeln!(out, "# {}\n\n[algebra {}]", ex.name, g.name());
    write_presentation(&mut out, g);
    out.push_str("\n[hopf]\n");
    for x in 0..g.num_gens() as Gen {
        let n = &g.gen_info(x).name;
        let phi = h.coproduct_word(&[x]).expect("generator coproduct");
        let _ = writeln!(out, "phi {n} = {}", tensor::fmt(&[g, g], &phi));
        let _ = writeln!(out, "eps {n} = {}", h.counit_word(&[x]));
        let _ = writeln!(out, "kappa {n} = {}", g.fmt(&h.antipode_word(&[x]).expect("generator antipode")));
    }
    let names = calc.basis_names();
    let ba = basis_algebra(names).expect("basis names are distinct");
    let _ = writeln!(out, "\n[fodc {}]\nbasis = {}", calc.name(), names.join(" "));
    for (i, n) in names.iter().enumerate() {
        let _ = writeln!(out, "preimage {n} = {}", g.fmt(calc.preimage(i)));
    }
    if !calc.ideal().is_empty() {
        let _ = writeln!(out, "ideal = {}", calc.ideal().iter().map(|e| g.fmt(e)).collect::<Vec<_>>().join(", "));
    }
    for (i, n) in names.iter().enumerate() {
        let t: Tensor = calc.delta(i).iter().map(|((x, y), c)| (vec![vec![*x as Gen], vec![*y as Gen]], c.clone())).collect();
        let _ = writeln!(out, "delta {n} = {}", tensor::fmt(&[&ba, &ba], &t));
    }
    let _ = writeln!(out, "word-bound = {}", calc.word_bound());
    let _ = writeln!(out, "\n[bundle {}]", b.name);
    write_presentation(&mut out, a);
    write_d(&mut out, &b.omega);
    for x in 0..a.num_gens() as Gen {
        let psi = b.psi_word(&[x]).expect("generator coaction");
        let _ = writeln!(out, "psi {} = {}", a.gen_info(x).name, tensor::fmt(&[a, ga], &psi));
    }
    let gnames = |gs: &[Gen]| gs.iter().map(|&x| a.gen_info(x).name.clone()).collect::<Vec<_>>().join(" ");
    match &b.base {
        BaseRecognizer::Invariance => out.push_str("base = invariance\n"),
        BaseRecognizer::Generators(gs) => {
            let _ = writeln!(out, "base = generators {}", gnames(gs));
        }
    }
    let _ = writeln!(out, "horizontal = {}\nbudget = {}", gnames(b.horizontal_generators()), b.budget);
    for r in &b.reps {
        let _ = writeln!(out, "\n[rep {}]", r.name());
        let _ = writeln!(out, "matrix = {}", write_matrix(&r.corep.matrix, |e| g.fmt(e)));
        let _ = writeln!(out, "tl = {}", write_matrix(&r.x, |e| a.fmt(e)));
        let _ = writeln!(out, "Z = {}", write_matrix(&r.z, |s| s.to_string()));
        let _ = writeln!(out, "C = {}", write_matrix(&r.c, |s| s.to_string()));
    }
    for w in &ex.connections {
        let _ = writeln!(out, "\n[connection {}]", w.name);
        for (n, v) in names.iter().zip(&w.table) {
            let _ = writeln!(out, "omega {n} = {}", a.fmt(v));
        }
    }
    for f in &ex.gauges {
        let _ = writeln!(out, "\n[gauge {}]", f.name);
        match &f.kind {
            GaugeKind::Character { chi, .. } => {
                for (x, c) in chi.0.iter().enumerate() {
                    let _ = writeln!(out, "character {} = {c}", g.gen_info(x as Gen).name);
                }
            }
            GaugeKind::Table { f, finv } => {
                for (key, m) in [("f", f), ("finv", finv)] {
                    for (w, v) in m {
                        let _ = writeln!(out, "{key} {} = {}", ga.word_str(w), a.fmt(v));
                    }
                }
            }
        }
    }
    out
}

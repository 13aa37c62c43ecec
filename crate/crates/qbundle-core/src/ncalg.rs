//! Finitely presented graded *-algebras with rewriting normal forms.

use alloc::collections::BTreeMap;
use alloc::format;
use alloc::string::{String, ToString};
use alloc::vec;
use alloc::vec::Vec;
use core::cmp::Ordering;

use crate::error::{Error, Result};
use crate::lincomb::LinComb;
use crate::scalars::{leading_negative, Scalar};

pub type Gen = u16;
pub type Word = Vec<Gen>;
pub type Elem = LinComb<Word>;

pub const DEFAULT_BUDGET: usize = 2_000_000;

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct GenSpec {
    pub name: String,
    pub degree: u8,
    /// `g* = coeff * partner`.
    pub star: (Scalar, String),
}

impl GenSpec {
    pub fn new(name: &str, degree: u8, partner: &str) -> Self {
        GenSpec { name: name.to_string(), degree, star: (Scalar::one(), partner.to_string()) }
    }
    pub fn with_star_coeff(mut self, c: Scalar) -> Self {
        self.star.0 = c;
        self
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct RuleSpec {
    pub lhs: Vec<String>,
    pub rhs: Vec<(Scalar, Vec<String>)>,
}

impl RuleSpec {
    pub fn new(lhs: &[&str], rhs: &[(Scalar, &[&str])]) -> Self {
        RuleSpec {
            lhs: lhs.iter().map(|s| s.to_string()).collect(),
            rhs: rhs.iter().map(|(c, w)| (c.clone(), w.iter().map(|s| s.to_string()).collect())).collect(),
        }
    }
}

/// Declarative algebra presentation.
#[derive(Debug, Clone, PartialEq, Eq, Default)]
pub struct Presentation {
    pub name: String,
    pub generators: Vec<GenSpec>,
    pub rules: Vec<RuleSpec>,
    /// Precedence from smallest to largest, each with a positive weight.
    pub order: Vec<(String, u32)>,
    /// Named subalgebras generated by generator subsets, used for balanced tensors.
    pub subalgebras: Vec<(String, Vec<String>)>,
}

#[derive(Debug, Clone)]
pub struct GenInfo {
    pub name: String,
    pub degree: u8,
    pub star: (Scalar, Gen),
    weight: u32,
    rank: u32,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Rule {
    pub lhs: Word,
    pub rhs: Elem,
}

/// Immutable algebra handle with compiled rewriting data.
#[derive(Debug, Clone)]
pub struct Algebra {
    name: String,
    gens: Vec<GenInfo>,
    rules: Vec<Rule>,
    by_last: Vec<Vec<usize>>,
    names: BTreeMap<String, Gen>,
    subalgebras: BTreeMap<String, Vec<Gen>>,
    budget: usize,
    presentation: Presentation,
}

impl Algebra {
    pub fn new(p: Presentation) -> Result<Algebra> {
        let mut names = BTreeMap::new();
        for (i, g) in p.generators.iter().enumerate() {
            if names.insert(g.name.clone(), i as Gen).is_some() {
                return Err(Error::StarMismatch { generator: format!("duplicate generator {}", g.name) });
            }
        }
        let lookup = |n: &str| names.get(n).copied().ok_or_else(|| Error::UnknownGenerator(n.to_string()));
        let mut weight = vec![1u32; p.generators.len()];
        let mut rank: Vec<Option<u32>> = vec![None; p.generators.len()];
        for (r, (n, w)) in p.order.iter().enumerate() {
            let g = lookup(n)? as usize;
            if *w == 0 {
                return Err(Error::NonTerminatingOrder { rule: format!("zero weight for {n}") });
            }
            weight[g] = *w;
            rank[g] = Some(r as u32);
        }
        // generators missing from the order list rank after listed ones, in declaration order
        let base = p.order.len() as u32;
        let mut gens = Vec::new();
        for (i, g) in p.generators.iter().enumerate() {
            let partner = lookup(&g.star.1)?;
            gens.push(GenInfo {
                name: g.name.clone(),
                degree: g.degree,
                star: (g.star.0.clone(), partner),
                weight: weight[i],
                rank: rank[i].unwrap_or(base + i as u32),
            });
        }
        for (i, g) in gens.iter().enumerate() {
            let (c, pa) = &g.star;
            let back = &gens[*pa as usize];
            if back.star.1 as usize != i || back.degree != g.degree || !(c.conj() * &back.star.0).is_one() {
                return Err(Error::StarMismatch { generator: g.name.clone() });
            }
        }
        let mut subalgebras = BTreeMap::new();
        for (n, gs) in &p.subalgebras {
            let v = gs.iter().map(|g| lookup(g)).collect::<Result<Vec<_>>>()?;
            subalgebras.insert(n.clone(), v);
        }
        let mut alg = Algebra {
            name: p.name.clone(),
            gens,
            rules: Vec::new(),
            by_last: vec![Vec::new(); p.generators.len()],
            names,
            subalgebras,
            budget: DEFAULT_BUDGET,
            presentation: p.clone(),
        };
        for r in &p.rules {
            let lhs: Word = r.lhs.iter().map(|n| alg.gen(n)).collect::<Result<_>>()?;
            let mut rhs = Elem::zero();
            for (c, w) in &r.rhs {
                let w: Word = w.iter().map(|n| alg.gen(n)).collect::<Result<_>>()?;
                rhs.add_term(w, c.clone());
            }
            alg.add_rule(lhs, rhs)?;
        }
        Ok(alg)
    }

    fn add_rule(&mut self, lhs: Word, rhs: Elem) -> Result<()> {
        let show = || format!("{} -> {}", self.word_str(&lhs), self.fmt(&rhs));
        if lhs.is_empty() {
            return Err(Error::NonTerminatingOrder { rule: show() });
        }
        let d = self.word_degree(&lhs);
        for w in rhs.keys() {
            if self.cmp_words(w, &lhs) != Ordering::Less {
                return Err(Error::NonTerminatingOrder { rule: show() });
            }
            if self.word_degree(w) != d {
                return Err(Error::DegreeMismatch(show()));
            }
        }
        let last = *lhs.last().expect("nonempty") as usize;
        self.by_last[last].push(self.rules.len());
        self.rules.push(Rule { lhs, rhs });
        Ok(())
    }

    pub fn with_budget(mut self, budget: usize) -> Self {
        self.budget = budget;
        self
    }
    pub fn name(&self) -> &str {
        &self.name
    }
    pub fn presentation(&self) -> &Presentation {
        &self.presentation
    }
    pub fn num_gens(&self) -> usize {
        self.gens.len()
    }
    pub fn gen_info(&self, g: Gen) -> &GenInfo {
        &self.gens[g as usize]
    }
    pub fn rules(&self) -> &[Rule] {
        &self.rules
    }
    pub fn gen(&self, name: &str) -> Result<Gen> {
        self.names.get(name).copied().ok_or_else(|| Error::UnknownGenerator(name.to_string()))
    }
    pub fn gen_names(&self) -> impl Iterator<Item = &str> {
        self.gens.iter().map(|g| g.name.as_str())
    }
    pub fn subalgebra(&self, name: &str) -> Result<&[Gen]> {
        self.subalgebras.get(name).map(|v| v.as_slice()).ok_or_else(|| Error::UnknownSubalgebra(name.to_string()))
    }

    pub fn cmp_words(&self, a: &[Gen], b: &[Gen]) -> Ordering {
        let wa: u64 = a.iter().map(|&g| self.gens[g as usize].weight as u64).sum();
        let wb: u64 = b.iter().map(|&g| self.gens[g as usize].weight as u64).sum();
        wa.cmp(&wb).then_with(|| {
            let ra = a.iter().map(|&g| self.gens[g as usize].rank);
            let rb = b.iter().map(|&g| self.gens[g as usize].rank);
            ra.cmp(rb)
        })
    }

    pub fn word_degree(&self, w: &[Gen]) -> usize {
        w.iter().map(|&g| self.gens[g as usize].degree as usize).sum()
    }
    /// Degree of a homogeneous element; `None` for zero or mixed degree.
    pub fn degree(&self, e: &Elem) -> Option<usize> {
        let mut it = e.keys().map(|w| self.word_degree(w));
        let d = it.next()?;
        it.all(|x| x == d).then_some(d)
    }
    /// Homogeneous components by degree.
    pub fn components(&self, e: &Elem) -> BTreeMap<usize, Elem> {
        let mut out: BTreeMap<usize, Elem> = BTreeMap::new();
        for (w, c) in e.iter() {
            out.entry(self.word_degree(w)).or_default().add_term(w.clone(), c.clone());
        }
        out
    }

    pub fn one(&self) -> Elem {
        Elem::single(Vec::new(), Scalar::one())
    }
    pub fn scalar(&self, c: Scalar) -> Elem {
        Elem::single(Vec::new(), c)
    }
    pub fn g(&self, name: &str) -> Result<Elem> {
        Ok(self.gen_elem(self.gen(name)?))
    }
    pub fn gen_elem(&self, g: Gen) -> Elem {
        Elem::single(vec![g], Scalar::one())
    }
    /// Normal form of a word given by generator names.
    pub fn word(&self, names: &[&str]) -> Result<Elem> {
        let w: Word = names.iter().map(|n| self.gen(n)).collect::<Result<_>>()?;
        self.nf(&Elem::single(w, Scalar::one()))
    }

    fn find_redex(&self, w: &[Gen]) -> Option<(usize, usize)> {
        for e in 1..=w.len() {
            for &ri in &self.by_last[w[e - 1] as usize] {
                let l = &self.rules[ri].lhs;
                if l.len() <= e && w[e - l.len()..e] == l[..] {
                    return Some((e - l.len(), ri));
                }
            }
        }
        None
    }

    pub fn is_irreducible(&self, w: &[Gen]) -> bool {
        self.find_redex(w).is_none()
    }

    fn apply_rule_at(&self, w: &[Gen], pos: usize, ri: usize, c: &Scalar, into: &mut Elem) {
        let r = &self.rules[ri];
        for (rw, rc) in r.rhs.iter() {
            let mut nw = Vec::with_capacity(w.len() - r.lhs.len() + rw.len());
            nw.extend_from_slice(&w[..pos]);
            nw.extend_from_slice(rw);
            nw.extend_from_slice(&w[pos + r.lhs.len()..]);
            into.add_term(nw, c * rc);
        }
    }

    /// Leftmost-innermost rewriting to the irreducible representative.
    pub fn nf(&self, e: &Elem) -> Result<Elem> {
        let mut pending = e.clone();
        let mut out = Elem::zero();
        let mut steps = 0usize;
        while let Some((w, c)) = pending.pop_last() {
            match self.find_redex(&w) {
                None => out.add_term(w, c),
                Some((pos, ri)) => {
                    steps += 1;
                    if steps > self.budget {
                        return Err(Error::RewriteBudgetExceeded { steps: self.budget });
                    }
                    self.apply_rule_at(&w, pos, ri, &c, &mut pending);
                }
            }
        }
        Ok(out)
    }

    pub fn mul(&self, a: &Elem, b: &Elem) -> Result<Elem> {
        let mut raw = Elem::zero();
        for (wa, ca) in a.iter() {
            for (wb, cb) in b.iter() {
                let mut w = wa.clone();
                w.extend_from_slice(wb);
                raw.add_term(w, ca * cb);
            }
        }
        self.nf(&raw)
    }

    pub fn mul_all(&self, xs: &[&Elem]) -> Result<Elem> {
        let mut acc = self.one();
        for x in xs {
            acc = self.mul(&acc, x)?;
        }
        Ok(acc)
    }

    pub fn pow(&self, a: &Elem, k: usize) -> Result<Elem> {
        let mut acc = self.one();
        for _ in 0..k {
            acc = self.mul(&acc, a)?;
        }
        Ok(acc)
    }

    /// Graded commutator `ab - (-1)^{|a||b|} ba` for homogeneous arguments.
    pub fn gcommutator(&self, a: &Elem, b: &Elem) -> Result<Elem> {
        let s = Scalar::sign(self.degree(a).unwrap_or(0) * self.degree(b).unwrap_or(0));
        let ab = self.mul(a, b)?;
        let ba = self.mul(b, a)?;
        Ok(&ab - &ba.scale(&s))
    }

    /// Koszul sign for reversing a word: `(-1)^{sum_{i<j} d_i d_j}`.
    pub fn reversal_sign(&self, w: &[Gen]) -> Scalar {
        let mut acc = 0usize;
        let mut seen = 0usize;
        for &g in w {
            let d = self.gens[g as usize].degree as usize;
            acc += seen * d;
            seen += d;
        }
        Scalar::sign(acc)
    }

    fn star_word(&self, w: &[Gen], c: &Scalar, into: &mut Elem) {
        let mut coeff = c.conj() * self.reversal_sign(w);
        let mut out = Vec::with_capacity(w.len());
        for &g in w.iter().rev() {
            let (s, p) = &self.gens[g as usize].star;
            coeff *= s;
            out.push(*p);
        }
        into.add_term(out, coeff);
    }

    /// Antilinear graded antimultiplicative involution.
    pub fn star(&self, e: &Elem) -> Result<Elem> {
        let mut raw = Elem::zero();
        for (w, c) in e.iter() {
            self.star_word(w, c, &mut raw);
        }
        self.nf(&raw)
    }

    /// Rules whose starred sides disagree after normalization.
    pub fn check_star_relations(&self) -> Result<Vec<String>> {
        let mut bad = Vec::new();
        for r in &self.rules {
            let l = self.star(&Elem::single(r.lhs.clone(), Scalar::one()))?;
            let rr = self.star(&r.rhs)?;
            if l != rr {
                bad.push(format!("{} -> {}", self.word_str(&r.lhs), self.fmt(&r.rhs)));
            }
        }
        Ok(bad)
    }

    /// All irreducible words of length at most `max_len`, shortest first.
    pub fn irreducible_words(&self, max_len: usize) -> Vec<Word> {
        let all: Vec<Gen> = (0..self.gens.len() as Gen).collect();
        self.irreducible_words_in(&all, max_len)
    }

    /// Irreducible words over the letters `gens`, shortest first.
    pub fn irreducible_words_in(&self, gens: &[Gen], max_len: usize) -> Vec<Word> {
        let mut out = vec![Vec::new()];
        let mut frontier = vec![Vec::new()];
        for _ in 0..max_len {
            let mut next = Vec::new();
            for w in &frontier {
                for &g in gens {
                    let mut nw = w.clone();
                    nw.push(g);
                    let suffix_redex = self.by_last[g as usize].iter().any(|&ri| {
                        let l = &self.rules[ri].lhs;
                        l.len() <= nw.len() && nw[nw.len() - l.len()..] == l[..]
                    });
                    if !suffix_redex {
                        next.push(nw);
                    }
                }
            }
            out.extend(next.iter().cloned());
            frontier = next;
        }
        out
    }

    /// Move subalgebra prefixes of the right slot into the left slot.
    pub fn balance(&self, t: &crate::tensor::Tensor, over: &str) -> Result<crate::tensor::Tensor> {
        let sub = self.subalgebra(over)?;
        let mut out = crate::tensor::Tensor::zero();
        for (ws, c) in t.iter() {
            if ws.len() != 2 {
                return Err(Error::DimensionMismatch("balanced tensors have two slots".into()));
            }
            let k = ws[1].iter().take_while(|g| sub.contains(g)).count();
            let mut left = ws[0].clone();
            left.extend_from_slice(&ws[1][..k]);
            let rest = ws[1][k..].to_vec();
            for (lw, lc) in self.nf(&Elem::single(left, Scalar::one()))?.iter() {
                out.add_term(vec![lw.clone(), rest.clone()], c * lc);
            }
        }
        Ok(out)
    }

    pub fn word_str(&self, w: &[Gen]) -> String {
        if w.is_empty() {
            return "1".to_string();
        }
        let mut s = String::new();
        for (i, &g) in w.iter().enumerate() {
            if i > 0 {
                s.push(' ');
            }
            s.push_str(&self.gens[g as usize].name);
        }
        s
    }

    pub fn fmt(&self, e: &Elem) -> String {
        fmt_terms(e.iter().map(|(w, c)| (c, self.word_str(w), w.is_empty())))
    }
}

/// Render `sum c_k * body_k` in the expression grammar.
pub(crate) fn fmt_terms<'a>(terms: impl Iterator<Item = (&'a Scalar, String, bool)>) -> String {
    let mut out = String::new();
    for (c, body, is_unit) in terms {
        let neg = leading_negative(c);
        let c_abs = if neg { -c } else { c.clone() };
        let mut t = String::new();
        if is_unit {
            t.push_str(&paren_scalar(&c_abs, false));
        } else if c_abs.is_one() {
            t.push_str(&body);
        } else {
            t.push_str(&paren_scalar(&c_abs, true));
            t.push(' ');
            t.push_str(&body);
        }
        if out.is_empty() {
            if neg {
                out.push('-');
            }
        } else {
            out.push_str(if neg { " - " } else { " + " });
        }
        out.push_str(&t);
    }
    if out.is_empty() {
        out.push('0');
    }
    out
}

fn paren_scalar(c: &Scalar, as_factor: bool) -> String {
    let s = c.to_string();
    let atomic = !s.contains(['+', '-', '/', '*']) || (s.starts_with('(') && s.ends_with(')') && balanced_outer(&s));
    if atomic || !as_factor && !s.contains(['+', '-']) {
        s
    } else {
        format!("({s})")
    }
}

fn balanced_outer(s: &str) -> bool {
    let mut depth = 0i32;
    for (i, ch) in s.char_indices() {
        match ch {
            '(' => depth += 1,
            ')' => {
                depth -= 1;
                if depth == 0 && i + 1 != s.len() {
                    return false;
                }
            }
            _ => {}
        }
    }
    true
}

/// One critical pair produced by an overlap or inclusion of two left sides.
#[derive(Debug, Clone)]
pub struct CriticalPair {
    pub word: Word,
    pub rules: (usize, usize),
    pub via_first: Elem,
    pub via_second: Elem,
}

#[derive(Debug, Clone, Default)]
pub struct ConfluenceReport {
    pub resolved: Vec<CriticalPair>,
    pub unresolved: Vec<CriticalPair>,
}

impl ConfluenceReport {
    pub fn is_confluent(&self) -> bool {
        self.unresolved.is_empty()
    }
}

/// Enumerate overlaps and inclusions of rule left sides whose combined word
/// has length at most `bound`, and compare both reductions.
pub fn check_local_confluence(alg: &Algebra, bound: usize) -> Result<ConfluenceReport> {
    let mut rep = ConfluenceReport::default();
    let rules = alg.rules();
    let mut run = |word: Word, i: usize, pi: usize, j: usize, pj: usize| -> Result<()> {
        let mut a = Elem::zero();
        alg.apply_rule_at(&word, pi, i, &Scalar::one(), &mut a);
        let mut b = Elem::zero();
        alg.apply_rule_at(&word, pj, j, &Scalar::one(), &mut b);
        let (a, b) = (alg.nf(&a)?, alg.nf(&b)?);
        let cp = CriticalPair { word, rules: (i, j), via_first: a.clone(), via_second: b.clone() };
        if a == b {
            rep.resolved.push(cp);
        } else {
            rep.unresolved.push(cp);
        }
        Ok(())
    };
    for (i, ri) in rules.iter().enumerate() {
        for (j, rj) in rules.iter().enumerate() {
            let (l1, l2) = (&ri.lhs, &rj.lhs);
            for k in 1..l1.len().min(l2.len()) {
                if l1[l1.len() - k..] == l2[..k] {
                    let mut w = l1.clone();
                    w.extend_from_slice(&l2[k..]);
                    if w.len() <= bound {
                        run(w, i, 0, j, l1.len() - k)?;
                    }
                }
            }
            if i != j && l2.len() <= l1.len() && l1.len() <= bound {
                for p in 0..=l1.len() - l2.len() {
                    if l1[p..p + l2.len()] == l2[..] {
                        run(l1.clone(), i, 0, j, p)?;
                    }
                }
            }
        }
    }
    Ok(rep)
}

#[cfg(test)]
pub(crate) mod tests {
    use super::*;

    pub fn u1() -> Algebra {
        Algebra::new(Presentation {
            name: "U(1)".into(),
            generators: vec![GenSpec::new("z", 0, "z*"), GenSpec::new("z*", 0, "z")],
            rules: vec![
                RuleSpec::new(&["z", "z*"], &[(Scalar::one(), &[])]),
                RuleSpec::new(&["z*", "z"], &[(Scalar::one(), &[])]),
            ],
            order: vec![("z".into(), 1), ("z*".into(), 1)],
            subalgebras: vec![],
        })
        .unwrap()
    }

    pub fn suq2() -> Algebra {
        let q = Scalar::q;
        let one = Scalar::one;
        Algebra::new(Presentation {
            name: "SUq2".into(),
            generators: vec![
                GenSpec::new("α", 0, "α*"),
                GenSpec::new("α*", 0, "α"),
                GenSpec::new("γ", 0, "γ*"),
                GenSpec::new("γ*", 0, "γ"),
            ],
            rules: vec![
                RuleSpec::new(&["γ", "α"], &[(Scalar::q_pow(-1), &["α", "γ"])]),
                RuleSpec::new(&["γ*", "α"], &[(Scalar::q_pow(-1), &["α", "γ*"])]),
                RuleSpec::new(&["γ*", "γ"], &[(one(), &["γ", "γ*"])]),
                RuleSpec::new(&["α*", "α"], &[(one(), &[]), (Scalar::int(-1), &["γ", "γ*"])]),
                RuleSpec::new(&["α", "α*"], &[(one(), &[]), (-Scalar::q_pow(2), &["γ", "γ*"])]),
                RuleSpec::new(&["γ", "α*"], &[(q(), &["α*", "γ"])]),
                RuleSpec::new(&["γ*", "α*"], &[(q(), &["α*", "γ*"])]),
            ],
            order: vec![("α".into(), 2), ("α*".into(), 2), ("γ".into(), 1), ("γ*".into(), 1)],
            subalgebras: vec![],
        })
        .unwrap()
    }

    fn w(a: &Algebra, names: &[&str]) -> Elem {
        a.word(names).unwrap()
    }

    #[test]
    fn circle_relations() {
        let a = u1();
        assert_eq!(w(&a, &["z", "z*"]), a.one());
        assert_eq!(a.nf(&Elem::zero()).unwrap(), Elem::zero());
        assert_eq!(a.star(&a.g("z").unwrap()).unwrap(), a.g("z*").unwrap());
        let l = a.scalar(Scalar::gaussian(2, 3));
        assert_eq!(a.star(&l).unwrap(), a.scalar(Scalar::gaussian(2, -3)));
    }

    #[test]
    fn suq2_commutation() {
        let a = suq2();
        let expect = a.word(&["α", "γ"]).unwrap().scale(&Scalar::q_pow(-1));
        assert_eq!(w(&a, &["γ", "α"]), expect);
        let s = a.star(&w(&a, &["α", "γ"])).unwrap();
        assert_eq!(s, w(&a, &["γ*", "α*"]));
        assert_eq!(s, w(&a, &["α*", "γ*"]).scale(&Scalar::q()));
    }

    #[test]
    fn non_decreasing_rule_is_rejected() {
        let p = Presentation {
            name: "bad".into(),
            generators: vec![GenSpec::new("x", 0, "x")],
            rules: vec![RuleSpec::new(&["x"], &[(Scalar::one(), &["x"])])],
            order: vec![("x".into(), 1)],
            subalgebras: vec![],
        };
        assert!(matches!(Algebra::new(p), Err(Error::NonTerminatingOrder { .. })));
    }

    #[test]
    fn inconsistent_star_is_rejected() {
        let p = Presentation {
            name: "bad".into(),
            generators: vec![GenSpec::new("x", 0, "y"), GenSpec::new("y", 0, "y")],
            ..Default::default()
        };
        assert!(matches!(Algebra::new(p), Err(Error::StarMismatch { .. })));
    }

    #[test]
    fn budget_is_enforced() {
        let a = suq2().with_budget(3);
        let big = a.pow(&(&a.g("α").unwrap() + &a.g("α*").unwrap()), 4);
        assert!(matches!(big, Err(Error::RewriteBudgetExceeded { .. })));
    }

    #[test]
    fn circle_overlaps_resolve() {
        let a = u1();
        let rep = check_local_confluence(&a, 6).unwrap();
        assert!(rep.is_confluent());
        let zzz = vec![a.gen("z").unwrap(), a.gen("z*").unwrap(), a.gen("z").unwrap()];
        let cp = rep.resolved.iter().find(|c| c.word == zzz).expect("overlap z z* z");
        assert_eq!(cp.via_first, a.g("z").unwrap());
        assert_eq!(cp.via_second, a.g("z").unwrap());
    }

    #[test]
    fn suq2_is_locally_confluent() {
        assert!(check_local_confluence(&suq2(), 6).unwrap().is_confluent());
    }

    #[test]
    fn non_confluent_presentation_is_reported() {
        let a = Algebra::new(Presentation {
            name: "nc".into(),
            generators: vec![GenSpec::new("x", 0, "x"), GenSpec::new("y", 0, "y")],
            rules: vec![
                RuleSpec::new(&["x", "y"], &[(Scalar::one(), &[])]),
                RuleSpec::new(&["y", "x"], &[(Scalar::one(), &["x"])]),
            ],
            order: vec![("x".into(), 1), ("y".into(), 1)],
            subalgebras: vec![],
        })
        .unwrap();
        let rep = check_local_confluence(&a, 6).unwrap();
        let xyx = vec![0, 1, 0];
        let cp = rep.unresolved.iter().find(|c| c.word == xyx).expect("xyx unresolved");
        let x = a.g("x").unwrap();
        let xx = a.word(&["x", "x"]).unwrap();
        assert!((cp.via_first == x && cp.via_second == xx) || (cp.via_first == xx && cp.via_second == x));
    }

    #[test]
    fn suq2_irreducible_words_are_ordered_monomials() {
        let a = suq2();
        let (al, als, ga, gas) = (0u16, 1u16, 2u16, 3u16);
        let is_pbw = |w: &Word| {
            // α^k γ^m γ*^n  or  α*^{k+1} γ^m γ*^n
            let lead = w.first().copied();
            let head = match lead {
                Some(g) if g == als => als,
                _ => al,
            };
            let k = w.iter().take_while(|&&g| g == head).count();
            let rest = &w[k..];
            let m = rest.iter().take_while(|&&g| g == ga).count();
            rest[m..].iter().all(|&g| g == gas)
        };
        let words = a.irreducible_words(6);
        for w in &words {
            assert!(is_pbw(w), "{}", a.word_str(w));
        }
        // every ordered monomial of length <= 6 is present
        let mut count = 0;
        for len in 0..=6usize {
            for k in 0..=len {
                for m in 0..=len - k {
                    let n = len - k - m;
                    let _ = n;
                    count += if k == 0 { 1 } else { 2 };
                }
            }
        }
        assert_eq!(words.len(), count);
    }

    #[test]
    fn star_on_words_reverses_with_partners() {
        let a = suq2();
        let x = &a.word(&["α", "γ*"]).unwrap() + &a.g("γ").unwrap().scale(&Scalar::i());
        assert_eq!(a.star(&a.star(&x).unwrap()).unwrap(), x);
        assert!(a.check_star_relations().unwrap().is_empty());
    }
}

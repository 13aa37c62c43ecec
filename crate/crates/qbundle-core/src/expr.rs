//! Expression grammar for algebra elements and tensors.
//!
//! `sum := term (('+'|'-') term)*`, `term := unary (('*'|'/'|juxtaposition) unary)*`,
//! `unary := '-' unary | atom ('^' int)?`, `atom := integer | generator | 'i' | 'q' | '(' sum ')'`.
//! Tensor slots are separated by `⊗`. Generator names are matched greedily, so
//! `z*z` reads as `z* z`; use spaces to separate factors.

use alloc::string::{String, ToString};
use alloc::vec::Vec;

use crate::error::{Error, Result};
use crate::ncalg::{Algebra, Elem};
use crate::scalars::Scalar;
use crate::tensor::{self, Tensor};

struct P<'a> {
    src: &'a str,
    pos: usize,
    names: Vec<Vec<(String, crate::ncalg::Gen)>>,
}

impl<'a> P<'a> {
    fn new(src: &'a str, algs: &[&Algebra]) -> Self {
        let names = algs
            .iter()
            .map(|a| {
                let mut v: Vec<(String, _)> =
                    a.gen_names().enumerate().map(|(i, n)| (n.to_string(), i as crate::ncalg::Gen)).collect();
                v.sort_by_key(|x| core::cmp::Reverse(x.0.len()));
                v
            })
            .collect();
        P { src, pos: 0, names }
    }
    fn err(&self, msg: &str) -> Error {
        let before = &self.src[..self.pos];
        let line = before.matches('\n').count() + 1;
        let col = before.rsplit('\n').next().map(|l| l.chars().count()).unwrap_or(0) + 1;
        Error::Parse { line, col, msg: msg.to_string() }
    }
    fn rest(&self) -> &'a str {
        &self.src[self.pos..]
    }
    fn ws(&mut self) {
        let r = self.rest();
        self.pos += r.len() - r.trim_start().len();
    }
    fn peek(&mut self) -> Option<char> {
        self.ws();
        self.rest().chars().next()
    }
    fn bump(&mut self, c: char) {
        self.pos += c.len_utf8();
    }
    fn eat(&mut self, c: char) -> bool {
        if self.peek() == Some(c) {
            self.bump(c);
            true
        } else {
            false
        }
    }

    fn tensor(&mut self, algs: &[&Algebra]) -> Result<Tensor> {
        let mut acc = self.tensor_term(algs)?;
        loop {
            if self.eat('+') {
                acc = &acc + &self.tensor_term(algs)?;
            } else if self.eat('-') {
                acc = &acc - &self.tensor_term(algs)?;
            } else {
                return Ok(acc);
            }
        }
    }

    fn tensor_term(&mut self, algs: &[&Algebra]) -> Result<Tensor> {
        let mut slots = Vec::new();
        for (i, a) in algs.iter().enumerate() {
            if i > 0 && !self.eat('⊗') {
                return Err(self.err("expected '⊗'"));
            }
            slots.push(self.term(a, i)?);
        }
        let refs: Vec<&Elem> = slots.iter().collect();
        Ok(tensor::pure(&refs))
    }

    fn sum(&mut self, a: &Algebra, slot: usize) -> Result<Elem> {
        let mut acc = self.term(a, slot)?;
        loop {
            if self.eat('+') {
                acc = &acc + &self.term(a, slot)?;
            } else if self.eat('-') {
                acc = &acc - &self.term(a, slot)?;
            } else {
                return Ok(acc);
            }
        }
    }

    fn starts_atom(&mut self) -> bool {
        match self.peek() {
            Some(c) => c == '(' || c.is_ascii_digit() || c.is_alphabetic() || self.match_gen_len_any() > 0,
            None => false,
        }
    }

    fn match_gen_len_any(&self) -> usize {
        let r = self.rest();
        self.names.iter().flat_map(|v| v.iter()).find(|(n, _)| r.starts_with(n.as_str())).map_or(0, |(n, _)| n.len())
    }

    fn term(&mut self, a: &Algebra, slot: usize) -> Result<Elem> {
        let mut acc = self.unary(a, slot)?;
        loop {
            if self.eat('*') {
                let r = self.unary(a, slot)?;
                acc = a.mul(&acc, &r)?;
            } else if self.eat('/') {
                let r = self.unary(a, slot)?;
                let c = as_scalar(&r).ok_or_else(|| self.err("division by a non-scalar"))?;
                acc = acc.scale(&c.inv()?);
            } else if self.starts_atom() {
                let r = self.unary(a, slot)?;
                acc = a.mul(&acc, &r)?;
            } else {
                return Ok(acc);
            }
        }
    }

    fn unary(&mut self, a: &Algebra, slot: usize) -> Result<Elem> {
        if self.eat('-') {
            return Ok(-&self.unary(a, slot)?);
        }
        let base = self.atom(a, slot)?;
        if self.eat('^') {
            let neg = self.eat('-');
            self.ws();
            let digits: String = self.rest().chars().take_while(|c| c.is_ascii_digit()).collect();
            if digits.is_empty() {
                return Err(self.err("expected exponent"));
            }
            self.pos += digits.len();
            let k: usize = digits.parse().map_err(|_| self.err("exponent too large"))?;
            if neg {
                let c = as_scalar(&base).ok_or_else(|| self.err("negative power of a non-scalar"))?;
                return Ok(a.scalar(c.pow(-(k as i64))?));
            }
            return a.pow(&base, k);
        }
        Ok(base)
    }

    fn atom(&mut self, a: &Algebra, slot: usize) -> Result<Elem> {
        let Some(c) = self.peek() else {
            return Err(self.err("unexpected end of input"));
        };
        if c == '(' {
            self.bump(c);
            let v = self.sum(a, slot)?;
            if !self.eat(')') {
                return Err(self.err("expected ')'"));
            }
            return Ok(v);
        }
        if c.is_ascii_digit() {
            let digits: String = self.rest().chars().take_while(|c| c.is_ascii_digit()).collect();
            self.pos += digits.len();
            return Ok(a.scalar(Scalar::parse(&digits)?));
        }
        let r = self.rest();
        if let Some((n, g)) = self.names[slot].iter().find(|(n, _)| r.starts_with(n.as_str())) {
            self.pos += n.len();
            return Ok(a.gen_elem(*g));
        }
        if c == 'i' || c == 'q' {
            self.bump(c);
            return Ok(a.scalar(if c == 'i' { Scalar::i() } else { Scalar::q() }));
        }
        if c == '1' {
            self.bump(c);
            return Ok(a.one());
        }
        let word: String = r.chars().take_while(|c| !c.is_whitespace() && !"+-*/^()⊗".contains(*c)).collect();
        Err(self.err(&alloc::format!("unknown generator `{word}` in {}", a.name())))
    }
}

fn as_scalar(e: &Elem) -> Option<Scalar> {
    if e.is_zero() {
        return Some(Scalar::zero());
    }
    if e.len() == 1 {
        let (w, c) = e.iter().next()?;
        if w.is_empty() {
            return Some(c.clone());
        }
    }
    None
}

/// Parse and normalize an element of `alg`.
pub fn parse_elem(alg: &Algebra, src: &str) -> Result<Elem> {
    let mut p = P::new(src, &[alg]);
    let v = p.sum(alg, 0)?;
    if p.peek().is_some() {
        return Err(p.err("unexpected trailing input"));
    }
    alg.nf(&v)
}

/// Parse and normalize a tensor whose slots live in `algs`.
pub fn parse_tensor(algs: &[&Algebra], src: &str) -> Result<Tensor> {
    let mut p = P::new(src, algs);
    let v = p.tensor(algs)?;
    if p.peek().is_some() {
        return Err(p.err("unexpected trailing input"));
    }
    tensor::nf(algs, &v)
}

impl Algebra {
    /// Shorthand for [`parse_elem`].
    pub fn parse(&self, src: &str) -> Result<Elem> {
        parse_elem(self, src)
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::ncalg::tests::{suq2, u1};

    #[test]
    fn parses_words_and_scalars() {
        let a = suq2();
        let e = a.parse("q^-1 α γ - (1+i)*γ* + 3/2").unwrap();
        let mut want = a.word(&["α", "γ"]).unwrap().scale(&Scalar::q_pow(-1));
        want = &want - &a.g("γ*").unwrap().scale(&Scalar::gaussian(1, 1));
        want = &want + &a.scalar(Scalar::rational(3, 2));
        assert_eq!(e, want);
        assert_eq!(a.parse("γ α").unwrap(), a.parse("q^-1 α γ").unwrap());
    }

    #[test]
    fn greedy_names() {
        let a = u1();
        assert_eq!(a.parse("z*z").unwrap(), a.one());
        assert_eq!(a.parse("z z").unwrap(), a.pow(&a.g("z").unwrap(), 2).unwrap());
    }

    #[test]
    fn printing_round_trips() {
        let a = suq2();
        for s in ["α* γ - q^2 γ γ*", "(1+q^2)/(1-q) α α γ* + i", "0", "-α"] {
            let e = a.parse(s).unwrap();
            assert_eq!(a.parse(&a.fmt(&e)).unwrap(), e, "{}", a.fmt(&e));
        }
    }

    #[test]
    fn tensors() {
        let a = suq2();
        let t = parse_tensor(&[&a, &a], "α*⊗α + γ*⊗γ").unwrap();
        assert_eq!(tensor::fmt(&[&a, &a], &t), "α*⊗α + γ*⊗γ");
        let u = parse_tensor(&[&a, &a], tensor::fmt(&[&a, &a], &t).as_str()).unwrap();
        assert_eq!(t, u);
    }

    #[test]
    fn diagnostics_carry_position() {
        let a = u1();
        match a.parse("z +\n  w") {
            Err(Error::Parse { line, col, .. }) => assert_eq!((line, col), (2, 3)),
            other => panic!("{other:?}"),
        }
    }
}

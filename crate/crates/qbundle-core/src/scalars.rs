//! Exact scalars: rational functions in a formal parameter `q` with
//! Gaussian-rational coefficients.
//!
//! Canonical form: the denominator is monic, numerator and denominator are
//! coprime, and zero is `0/1`. Conjugation fixes `q` and sends `i` to `-i`.

use alloc::string::{String, ToString};
use alloc::vec;
use alloc::vec::Vec;
use core::fmt;
use core::ops::{Add, AddAssign, Mul, MulAssign, Neg, Sub, SubAssign};

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Signed, Zero};

#[derive(Debug, Clone, PartialEq, Eq)]
pub enum ScalarError {
    DivisionByZero,
    Parse { pos: usize, msg: String },
}

impl fmt::Display for ScalarError {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            ScalarError::DivisionByZero => write!(f, "division by zero"),
            ScalarError::Parse { pos, msg } => write!(f, "scalar parse error at {pos}: {msg}"),
        }
    }
}

/// Gaussian rational `re + im*i`.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct Gq {
    pub re: BigRational,
    pub im: BigRational,
}

impl Gq {
    pub fn zero() -> Self {
        Gq { re: BigRational::zero(), im: BigRational::zero() }
    }
    pub fn one() -> Self {
        Gq { re: BigRational::one(), im: BigRational::zero() }
    }
    pub fn i() -> Self {
        Gq { re: BigRational::zero(), im: BigRational::one() }
    }
    pub fn int(n: i64) -> Self {
        Gq { re: BigRational::from_integer(BigInt::from(n)), im: BigRational::zero() }
    }
    pub fn is_zero(&self) -> bool {
        self.re.is_zero() && self.im.is_zero()
    }
    pub fn is_one(&self) -> bool {
        self.re.is_one() && self.im.is_zero()
    }
    pub fn conj(&self) -> Self {
        Gq { re: self.re.clone(), im: -self.im.clone() }
    }
    fn norm2(&self) -> BigRational {
        &self.re * &self.re + &self.im * &self.im
    }
    pub fn inv(&self) -> Option<Self> {
        if self.is_zero() {
            return None;
        }
        let n = self.norm2();
        Some(Gq { re: &self.re / &n, im: -(&self.im / &n) })
    }
    pub fn add(&self, o: &Gq) -> Gq {
        Gq { re: &self.re + &o.re, im: &self.im + &o.im }
    }
    pub fn sub(&self, o: &Gq) -> Gq {
        Gq { re: &self.re - &o.re, im: &self.im - &o.im }
    }
    pub fn mul(&self, o: &Gq) -> Gq {
        if self.im.is_zero() && o.im.is_zero() {
            return Gq { re: &self.re * &o.re, im: BigRational::zero() };
        }
        Gq {
            re: &self.re * &o.re - &self.im * &o.im,
            im: &self.re * &o.im + &self.im * &o.re,
        }
    }
    pub fn neg(&self) -> Gq {
        Gq { re: -self.re.clone(), im: -self.im.clone() }
    }
}

fn fmt_rat(r: &BigRational) -> String {
    if r.denom().is_one() {
        r.numer().to_string()
    } else {
        alloc::format!("{}/{}", r.numer(), r.denom())
    }
}

impl fmt::Display for Gq {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.im.is_zero() {
            return write!(f, "{}", fmt_rat(&self.re));
        }
        let im = if self.im.is_one() {
            "i".to_string()
        } else if (-self.im.clone()).is_one() {
            "-i".to_string()
        } else {
            alloc::format!("{}*i", fmt_rat(&self.im))
        };
        if self.re.is_zero() {
            write!(f, "{im}")
        } else if im.starts_with('-') {
            write!(f, "({}{})", fmt_rat(&self.re), im)
        } else {
            write!(f, "({}+{})", fmt_rat(&self.re), im)
        }
    }
}

/// Dense polynomial in `q`, coefficients from low to high degree, no trailing zeros.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct Poly(pub Vec<Gq>);

impl Poly {
    pub fn zero() -> Self {
        Poly(Vec::new())
    }
    pub fn constant(c: Gq) -> Self {
        let mut p = Poly(vec![c]);
        p.trim();
        p
    }
    pub fn monomial(c: Gq, k: usize) -> Self {
        if c.is_zero() {
            return Poly::zero();
        }
        let mut v = vec![Gq::zero(); k + 1];
        v[k] = c;
        Poly(v)
    }
    fn trim(&mut self) {
        while self.0.last().is_some_and(Gq::is_zero) {
            self.0.pop();
        }
    }
    pub fn is_zero(&self) -> bool {
        self.0.is_empty()
    }
    pub fn is_one(&self) -> bool {
        self.0.len() == 1 && self.0[0].is_one()
    }
    pub fn degree(&self) -> Option<usize> {
        self.0.len().checked_sub(1)
    }
    /// Lowest power of `q` with nonzero coefficient.
    pub fn valuation(&self) -> usize {
        self.0.iter().position(|c| !c.is_zero()).unwrap_or(0)
    }
    pub fn is_monomial(&self) -> bool {
        !self.is_zero() && self.0.iter().filter(|c| !c.is_zero()).count() == 1
    }
    pub fn lead(&self) -> &Gq {
        self.0.last().expect("lead of zero polynomial")
    }
    fn shift_down(&self, k: usize) -> Poly {
        Poly(self.0[k..].to_vec())
    }
    pub fn add(&self, o: &Poly) -> Poly {
        let n = self.0.len().max(o.0.len());
        let z = Gq::zero();
        let mut v = Vec::with_capacity(n);
        for k in 0..n {
            v.push(self.0.get(k).unwrap_or(&z).add(o.0.get(k).unwrap_or(&z)));
        }
        let mut p = Poly(v);
        p.trim();
        p
    }
    pub fn neg(&self) -> Poly {
        Poly(self.0.iter().map(Gq::neg).collect())
    }
    pub fn sub(&self, o: &Poly) -> Poly {
        self.add(&o.neg())
    }
    pub fn mul(&self, o: &Poly) -> Poly {
        if self.is_zero() || o.is_zero() {
            return Poly::zero();
        }
        let mut v = vec![Gq::zero(); self.0.len() + o.0.len() - 1];
        for (a, x) in self.0.iter().enumerate() {
            if x.is_zero() {
                continue;
            }
            for (b, y) in o.0.iter().enumerate() {
                if !y.is_zero() {
                    v[a + b] = v[a + b].add(&x.mul(y));
                }
            }
        }
        let mut p = Poly(v);
        p.trim();
        p
    }
    pub fn scale(&self, c: &Gq) -> Poly {
        let mut p = Poly(self.0.iter().map(|x| x.mul(c)).collect());
        p.trim();
        p
    }
    pub fn conj(&self) -> Poly {
        Poly(self.0.iter().map(Gq::conj).collect())
    }
    /// Euclidean division by a nonzero polynomial.
    pub fn div_rem(&self, d: &Poly) -> (Poly, Poly) {
        let dd = d.degree().expect("division by zero polynomial");
        let li = d.lead().inv().expect("nonzero lead");
        let mut r = self.clone();
        let mut qv = vec![Gq::zero(); self.0.len().saturating_sub(dd).max(1)];
        while let Some(rd) = r.degree() {
            if rd < dd {
                break;
            }
            let c = r.lead().mul(&li);
            let k = rd - dd;
            qv[k] = c.clone();
            let sub = Poly::monomial(c, k).mul(d);
            r = r.sub(&sub);
        }
        let mut qp = Poly(qv);
        qp.trim();
        (qp, r)
    }
    pub fn monic(&self) -> Poly {
        match self.0.last() {
            None => Poly::zero(),
            Some(l) => self.scale(&l.inv().expect("nonzero lead")),
        }
    }
    pub fn gcd(&self, o: &Poly) -> Poly {
        let (mut a, mut b) = (self.clone(), o.clone());
        while !b.is_zero() {
            let (_, r) = a.div_rem(&b);
            a = b;
            b = r;
        }
        a.monic()
    }
}

/// Element of Q(i)(q) in canonical form.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct Scalar {
    num: Poly,
    den: Poly,
}

impl Default for Scalar {
    fn default() -> Self {
        Scalar::zero()
    }
}

impl Scalar {
    pub fn zero() -> Self {
        Scalar { num: Poly::zero(), den: Poly::constant(Gq::one()) }
    }
    pub fn one() -> Self {
        Scalar::from_gq(Gq::one())
    }
    pub fn i() -> Self {
        Scalar::from_gq(Gq::i())
    }
    pub fn q() -> Self {
        Scalar { num: Poly::monomial(Gq::one(), 1), den: Poly::constant(Gq::one()) }
    }
    pub fn int(n: i64) -> Self {
        Scalar::from_gq(Gq::int(n))
    }
    pub fn rational(n: i64, d: i64) -> Self {
        assert!(d != 0, "zero denominator");
        let r = BigRational::new(BigInt::from(n), BigInt::from(d));
        Scalar::from_gq(Gq { re: r, im: BigRational::zero() })
    }
    pub fn gaussian(re: i64, im: i64) -> Self {
        Scalar::from_gq(Gq::int(re).add(&Gq::int(im).mul(&Gq::i())))
    }
    pub fn from_gq(c: Gq) -> Self {
        Scalar { num: Poly::constant(c), den: Poly::constant(Gq::one()) }
    }
    /// `q^k` for any integer `k`.
    pub fn q_pow(k: i64) -> Self {
        let m = Poly::monomial(Gq::one(), k.unsigned_abs() as usize);
        if k >= 0 {
            Scalar { num: m, den: Poly::constant(Gq::one()) }
        } else {
            Scalar { num: Poly::constant(Gq::one()), den: m }
        }
    }
    pub fn from_parts(num: Poly, den: Poly) -> Result<Self, ScalarError> {
        if den.is_zero() {
            return Err(ScalarError::DivisionByZero);
        }
        Ok(Scalar::normalize(num, den))
    }
    pub fn numer(&self) -> &Poly {
        &self.num
    }
    pub fn denom(&self) -> &Poly {
        &self.den
    }

    fn normalize(num: Poly, den: Poly) -> Scalar {
        if num.is_zero() {
            return Scalar::zero();
        }
        let (num, den) = if den.is_monomial() {
            let k = den.valuation().min(num.valuation());
            (num.shift_down(k), den.shift_down(k))
        } else {
            let g = num.gcd(&den);
            if g.is_one() {
                (num, den)
            } else {
                (num.div_rem(&g).0, den.div_rem(&g).0)
            }
        };
        let l = den.lead().clone();
        if l.is_one() {
            Scalar { num, den }
        } else {
            let li = l.inv().expect("nonzero lead");
            Scalar { num: num.scale(&li), den: den.scale(&li) }
        }
    }

    pub fn is_zero(&self) -> bool {
        self.num.is_zero()
    }
    pub fn is_one(&self) -> bool {
        self.num.is_one() && self.den.is_one()
    }
    /// Constant with no `q` dependence.
    pub fn as_constant(&self) -> Option<Gq> {
        if self.den.is_one() && self.num.0.len() <= 1 {
            Some(self.num.0.first().cloned().unwrap_or_else(Gq::zero))
        } else {
            None
        }
    }
    pub fn conj(&self) -> Scalar {
        Scalar { num: self.num.conj(), den: self.den.conj() }
    }
    pub fn inv(&self) -> Result<Scalar, ScalarError> {
        if self.is_zero() {
            return Err(ScalarError::DivisionByZero);
        }
        Ok(Scalar::normalize(self.den.clone(), self.num.clone()))
    }
    pub fn checked_div(&self, o: &Scalar) -> Result<Scalar, ScalarError> {
        Ok(self * &o.inv()?)
    }
    pub fn pow(&self, k: i64) -> Result<Scalar, ScalarError> {
        let base = if k < 0 { self.inv()? } else { self.clone() };
        let mut r = Scalar::one();
        for _ in 0..k.unsigned_abs() {
            r = &r * &base;
        }
        Ok(r)
    }
    /// `(-1)^k`.
    pub fn sign(k: usize) -> Scalar {
        if k.is_multiple_of(2) {
            Scalar::one()
        } else {
            Scalar::int(-1)
        }
    }

    fn add_ref(&self, o: &Scalar) -> Scalar {
        if self.is_zero() {
            return o.clone();
        }
        if o.is_zero() {
            return self.clone();
        }
        if self.den == o.den {
            return Scalar::normalize(self.num.add(&o.num), self.den.clone());
        }
        if self.den.is_monomial() && o.den.is_monomial() {
            let (a, b) = (self.den.valuation(), o.den.valuation());
            let k = a.max(b);
            let n1 = self.num.mul(&Poly::monomial(Gq::one(), k - a));
            let n2 = o.num.mul(&Poly::monomial(Gq::one(), k - b));
            return Scalar::normalize(n1.add(&n2), Poly::monomial(Gq::one(), k));
        }
        Scalar::normalize(
            self.num.mul(&o.den).add(&o.num.mul(&self.den)),
            self.den.mul(&o.den),
        )
    }
    fn mul_ref(&self, o: &Scalar) -> Scalar {
        if self.is_zero() || o.is_zero() {
            return Scalar::zero();
        }
        if o.is_one() {
            return self.clone();
        }
        if self.is_one() {
            return o.clone();
        }
        Scalar::normalize(self.num.mul(&o.num), self.den.mul(&o.den))
    }
    fn neg_ref(&self) -> Scalar {
        Scalar { num: self.num.neg(), den: self.den.clone() }
    }

    pub fn parse(s: &str) -> Result<Scalar, ScalarError> {
        let mut p = ScalarParser { s: s.as_bytes(), pos: 0 };
        let v = p.expr()?;
        p.ws();
        if p.pos != p.s.len() {
            return Err(p.err("unexpected trailing input"));
        }
        Ok(v)
    }
}

macro_rules! binop {
    ($tr:ident, $m:ident, $f:ident) => {
        impl $tr<&Scalar> for &Scalar {
            type Output = Scalar;
            fn $m(self, o: &Scalar) -> Scalar {
                self.$f(o)
            }
        }
        impl $tr<Scalar> for Scalar {
            type Output = Scalar;
            fn $m(self, o: Scalar) -> Scalar {
                (&self).$f(&o)
            }
        }
        impl $tr<&Scalar> for Scalar {
            type Output = Scalar;
            fn $m(self, o: &Scalar) -> Scalar {
                (&self).$f(o)
            }
        }
        impl $tr<Scalar> for &Scalar {
            type Output = Scalar;
            fn $m(self, o: Scalar) -> Scalar {
                self.$f(&o)
            }
        }
    };
}

impl Scalar {
    fn sub_ref(&self, o: &Scalar) -> Scalar {
        self.add_ref(&o.neg_ref())
    }
}

binop!(Add, add, add_ref);
binop!(Sub, sub, sub_ref);
binop!(Mul, mul, mul_ref);

impl Neg for Scalar {
    type Output = Scalar;
    fn neg(self) -> Scalar {
        self.neg_ref()
    }
}
impl Neg for &Scalar {
    type Output = Scalar;
    fn neg(self) -> Scalar {
        self.neg_ref()
    }
}
impl AddAssign<&Scalar> for Scalar {
    fn add_assign(&mut self, o: &Scalar) {
        *self = self.add_ref(o);
    }
}
impl SubAssign<&Scalar> for Scalar {
    fn sub_assign(&mut self, o: &Scalar) {
        *self = self.sub_ref(o);
    }
}
impl MulAssign<&Scalar> for Scalar {
    fn mul_assign(&mut self, o: &Scalar) {
        *self = self.mul_ref(o);
    }
}

impl From<i64> for Scalar {
    fn from(n: i64) -> Self {
        Scalar::int(n)
    }
}

fn fmt_poly(p: &Poly) -> (String, usize) {
    let mut out = String::new();
    let mut terms = 0;
    for (k, c) in p.0.iter().enumerate() {
        if c.is_zero() {
            continue;
        }
        terms += 1;
        let t = if k == 0 {
            c.to_string()
        } else {
            let qk = if k == 1 { "q".to_string() } else { alloc::format!("q^{k}") };
            if c.is_one() {
                qk
            } else if *c == Gq::int(-1) {
                alloc::format!("-{qk}")
            } else {
                alloc::format!("{c}*{qk}")
            }
        };
        if !out.is_empty() && !t.starts_with('-') {
            out.push('+');
        }
        out.push_str(&t);
    }
    if out.is_empty() {
        out.push('0');
    }
    (out, terms)
}

impl fmt::Display for Scalar {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let (n, nt) = fmt_poly(&self.num);
        if self.den.is_one() {
            return write!(f, "{n}");
        }
        let (d, dt) = fmt_poly(&self.den);
        let n = if nt > 1 { alloc::format!("({n})") } else { n };
        let d = if dt > 1 { alloc::format!("({d})") } else { d };
        write!(f, "{n}/{d}")
    }
}

struct ScalarParser<'a> {
    s: &'a [u8],
    pos: usize,
}

impl ScalarParser<'_> {
    fn err(&self, msg: &str) -> ScalarError {
        ScalarError::Parse { pos: self.pos, msg: msg.to_string() }
    }
    fn ws(&mut self) {
        while self.pos < self.s.len() && self.s[self.pos].is_ascii_whitespace() {
            self.pos += 1;
        }
    }
    fn peek(&mut self) -> Option<u8> {
        self.ws();
        self.s.get(self.pos).copied()
    }
    fn expr(&mut self) -> Result<Scalar, ScalarError> {
        let mut v = self.term()?;
        while let Some(c @ (b'+' | b'-')) = self.peek() {
            self.pos += 1;
            let t = self.term()?;
            v = if c == b'+' { v + t } else { v - t };
        }
        Ok(v)
    }
    fn term(&mut self) -> Result<Scalar, ScalarError> {
        let mut v = self.unary()?;
        while let Some(c @ (b'*' | b'/')) = self.peek() {
            self.pos += 1;
            let t = self.unary()?;
            v = if c == b'*' { v * t } else { v.checked_div(&t)? };
        }
        Ok(v)
    }
    fn unary(&mut self) -> Result<Scalar, ScalarError> {
        match self.peek() {
            Some(b'-') => {
                self.pos += 1;
                Ok(-self.unary()?)
            }
            Some(b'+') => {
                self.pos += 1;
                self.unary()
            }
            _ => self.power(),
        }
    }
    fn power(&mut self) -> Result<Scalar, ScalarError> {
        let base = self.atom()?;
        if self.peek() == Some(b'^') {
            self.pos += 1;
            let neg = if self.peek() == Some(b'-') {
                self.pos += 1;
                true
            } else {
                false
            };
            let k = self.integer()?;
            let k = i64::try_from(k).map_err(|_| self.err("exponent too large"))?;
            return base.pow(if neg { -k } else { k });
        }
        Ok(base)
    }
    fn integer(&mut self) -> Result<BigInt, ScalarError> {
        self.ws();
        let start = self.pos;
        while self.pos < self.s.len() && self.s[self.pos].is_ascii_digit() {
            self.pos += 1;
        }
        if start == self.pos {
            return Err(self.err("expected integer"));
        }
        let txt = core::str::from_utf8(&self.s[start..self.pos]).expect("ascii digits");
        txt.parse::<BigInt>().map_err(|_| self.err("bad integer"))
    }
    fn atom(&mut self) -> Result<Scalar, ScalarError> {
        match self.peek() {
            Some(b'(') => {
                self.pos += 1;
                let v = self.expr()?;
                if self.peek() != Some(b')') {
                    return Err(self.err("expected ')'"));
                }
                self.pos += 1;
                Ok(v)
            }
            Some(b'i') => {
                self.pos += 1;
                Ok(Scalar::i())
            }
            Some(b'q') => {
                self.pos += 1;
                Ok(Scalar::q())
            }
            Some(c) if c.is_ascii_digit() => {
                let n = self.integer()?;
                let r = BigRational::from_integer(n);
                Ok(Scalar::from_gq(Gq { re: r, im: BigRational::zero() }))
            }
            Some(_) => Err(self.err("unexpected character")),
            None => Err(self.err("unexpected end of input")),
        }
    }
}

impl core::str::FromStr for Scalar {
    type Err = ScalarError;
    fn from_str(s: &str) -> Result<Self, Self::Err> {
        Scalar::parse(s)
    }
}

/// Is the rational coefficient negative (used when printing linear combinations).
pub fn leading_negative(s: &Scalar) -> bool {
    match s.as_constant() {
        Some(c) => c.im.is_zero() && c.re.is_negative(),
        None => false,
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use proptest::prelude::*;

    fn s(t: &str) -> Scalar {
        Scalar::parse(t).unwrap()
    }

    #[test]
    fn quotient_of_q_polynomials_simplifies() {
        let a = s("1-q^4");
        let b = s("1-q^2");
        assert_eq!(a.checked_div(&b).unwrap(), s("1+q^2"));
    }

    #[test]
    fn conjugation_fixes_q() {
        let x = s("(1+i)*q/(1-q)");
        assert_eq!(x.conj(), s("(1-i)*q/(1-q)"));
    }

    #[test]
    fn division_by_zero_is_an_error() {
        assert_eq!(Scalar::one().checked_div(&Scalar::zero()), Err(ScalarError::DivisionByZero));
        assert!(matches!(Scalar::parse("1/(q-q)"), Err(ScalarError::DivisionByZero)));
    }

    #[test]
    fn zero_is_canonical() {
        let z = s("q/(1-q)") - s("q/(1-q)");
        assert_eq!(z, Scalar::zero());
        assert!(z.denom().is_one());
    }

    #[test]
    fn negative_powers_of_q() {
        assert_eq!(Scalar::q_pow(-2) * Scalar::q_pow(2), Scalar::one());
        assert_eq!(s("q^-3"), Scalar::q_pow(-3));
        assert_eq!(s("1/q^2"), Scalar::q_pow(-2));
    }

    #[test]
    fn denominator_is_monic() {
        let x = s("1/(2-2*q)");
        assert!(x.denom().lead().is_one());
        assert_eq!(x * s("2-2*q"), Scalar::one());
    }

    #[test]
    fn display_round_trips() {
        for t in ["0", "1", "-1", "i", "-3/2", "(1+i)*q/(1-q)", "q^-2", "(1+q^2)/(3*q)", "(2-i)*q^3-i", "1/(1+i*q)"] {
            let x = s(t);
            assert_eq!(s(&x.to_string()), x, "{t} -> {x}");
        }
    }

    fn arb_scalar() -> impl Strategy<Value = Scalar> {
        (
            proptest::collection::vec((-4i64..5, -4i64..5), 1..4),
            proptest::collection::vec((-3i64..4, -3i64..4), 1..3),
            0i64..3,
        )
            .prop_map(|(n, d, k)| {
                let poly = |cs: &[(i64, i64)]| {
                    cs.iter().enumerate().fold(Scalar::zero(), |acc, (j, &(a, b))| {
                        acc + Scalar::gaussian(a, b) * Scalar::q_pow(j as i64)
                    })
                };
                let den = poly(&d);
                let den = if den.is_zero() { Scalar::one() } else { den };
                poly(&n).checked_div(&den).unwrap() * Scalar::q_pow(-k)
            })
    }

    proptest! {
        #[test]
        fn field_axioms(a in arb_scalar(), b in arb_scalar(), c in arb_scalar()) {
            prop_assert_eq!(&(&a + &b) * &c, &(&a * &c) + &(&b * &c));
            prop_assert_eq!(&(&a * &b) * &c, &a * &(&b * &c));
            prop_assert_eq!(&a + &b, &b + &a);
            if !b.is_zero() {
                prop_assert_eq!(a.checked_div(&b).unwrap() * &b, a.clone());
            }
        }

        #[test]
        fn conj_is_an_involutive_automorphism(a in arb_scalar(), b in arb_scalar()) {
            prop_assert_eq!(a.conj().conj(), a.clone());
            prop_assert_eq!((&a * &b).conj(), a.conj() * b.conj());
            prop_assert_eq!((&a + &b).conj(), a.conj() + b.conj());
        }

        #[test]
        fn printing_round_trips(a in arb_scalar()) {
            prop_assert_eq!(Scalar::parse(&a.to_string()).unwrap(), a);
        }
    }
}

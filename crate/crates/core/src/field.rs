//! Exact arithmetic over Q(q^{1/2}, d^{1/2}, K^{1/2}).
//!
//! Exponents are stored doubled so that half-integer powers stay integral.

use std::collections::BTreeMap;
use std::fmt;
use std::ops::{Add, Div, Mul, Neg, Sub};

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, Signed, ToPrimitive, Zero};
use serde::de::{self, Deserializer};
use serde::ser::Serializer;
use serde::{Deserialize, Serialize};
use thiserror::Error;

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum FieldError {
    #[error("division by zero")]
    DivisionByZero,
    #[error("psi evaluated at its pole x = 1")]
    PoleAtOne,
    #[error("monomial carries a u exponent where none is allowed")]
    UnexpectedU,
    #[error("malformed field element: {0}")]
    Malformed(String),
}

/// `u^u * q^{q2/2} * d^{d2/2} * K^{k2/2}`.
#[derive(Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord, Debug, Default, Serialize, Deserialize)]
pub struct Monomial {
    pub u: i32,
    pub q2: i32,
    pub d2: i32,
    #[serde(rename = "K2")]
    pub k2: i32,
}

impl Monomial {
    pub const ONE: Monomial = Monomial { u: 0, q2: 0, d2: 0, k2: 0 };

    pub const fn new(u: i32, q2: i32, d2: i32, k2: i32) -> Self {
        Monomial { u, q2, d2, k2 }
    }
    pub const fn u() -> Self {
        Monomial::new(1, 0, 0, 0)
    }
    pub const fn q() -> Self {
        Monomial::new(0, 2, 0, 0)
    }
    pub const fn d() -> Self {
        Monomial::new(0, 0, 2, 0)
    }
    pub const fn k() -> Self {
        Monomial::new(0, 0, 0, 2)
    }
    /// `q1 = d/q`.
    pub const fn q1() -> Self {
        Monomial::new(0, -2, 2, 0)
    }
    /// `q2 = q^2`.
    pub const fn q2() -> Self {
        Monomial::new(0, 4, 0, 0)
    }
    /// `q3 = 1/(dq)`.
    pub const fn q3() -> Self {
        Monomial::new(0, -2, -2, 0)
    }

    pub fn pow(self, e: i32) -> Self {
        Monomial::new(self.u * e, self.q2 * e, self.d2 * e, self.k2 * e)
    }
    pub fn inv(self) -> Self {
        self.pow(-1)
    }
    pub fn is_one(&self) -> bool {
        *self == Monomial::ONE
    }
    /// Square root, if every doubled exponent is even.
    pub fn sqrt(self) -> Option<Self> {
        if self.u % 2 != 0 || self.q2 % 2 != 0 || self.d2 % 2 != 0 || self.k2 % 2 != 0 {
            return None;
        }
        Some(Monomial::new(self.u / 2, self.q2 / 2, self.d2 / 2, self.k2 / 2))
    }
    /// Drop the `u` exponent.
    pub fn strip_u(self) -> Self {
        Monomial { u: 0, ..self }
    }
    pub fn exps(&self) -> Exp {
        [self.q2, self.d2, self.k2]
    }
    pub fn from_exps(u: i32, e: Exp) -> Self {
        Monomial::new(u, e[0], e[1], e[2])
    }
    /// Apply `q -> q^{sq}`, `d -> d^{sd}` with signs `sq, sd` in {1,-1}.
    pub fn substitute(self, sq: i32, sd: i32) -> Self {
        Monomial::new(self.u, self.q2 * sq, self.d2 * sd, self.k2)
    }
}

impl Mul for Monomial {
    type Output = Monomial;
    fn mul(self, o: Monomial) -> Monomial {
        Monomial::new(self.u + o.u, self.q2 + o.q2, self.d2 + o.d2, self.k2 + o.k2)
    }
}

impl Div for Monomial {
    type Output = Monomial;
    fn div(self, o: Monomial) -> Monomial {
        self * o.inv()
    }
}

fn fmt_exp(f: &mut fmt::Formatter<'_>, name: &str, e2: i32, first: &mut bool) -> fmt::Result {
    if e2 == 0 {
        return Ok(());
    }
    if !*first {
        write!(f, "*")?;
    }
    *first = false;
    if e2 == 2 {
        write!(f, "{name}")
    } else if e2 % 2 == 0 {
        write!(f, "{name}^{}", e2 / 2)
    } else {
        write!(f, "{name}^({}/2)", e2)
    }
}

impl fmt::Display for Monomial {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let mut first = true;
        if self.u != 0 {
            first = false;
            if self.u == 1 {
                write!(f, "u")?;
            } else {
                write!(f, "u^{}", self.u)?;
            }
        }
        fmt_exp(f, "q", self.q2, &mut first)?;
        fmt_exp(f, "d", self.d2, &mut first)?;
        fmt_exp(f, "K", self.k2, &mut first)?;
        if first {
            write!(f, "1")?;
        }
        Ok(())
    }
}

/// `u^a * q1^x * q2^y * q3^z`.
pub fn mono_from_q123(x: i32, y: i32, z: i32, a: i32) -> Monomial {
    Monomial::u().pow(a) * Monomial::q1().pow(x) * Monomial::q2().pow(y) * Monomial::q3().pow(z)
}

pub type Exp = [i32; 3];

fn exp_add(a: &Exp, b: &Exp) -> Exp {
    [a[0] + b[0], a[1] + b[1], a[2] + b[2]]
}

/// Sparse Laurent polynomial in `q^{1/2}, d^{1/2}, K^{1/2}` with integer coefficients.
#[derive(Clone, PartialEq, Eq, Hash, Debug, Default)]
pub struct Poly {
    terms: BTreeMap<Exp, BigInt>,
}

impl Poly {
    pub fn zero() -> Self {
        Poly::default()
    }
    pub fn one() -> Self {
        Poly::term(BigInt::one(), Monomial::ONE)
    }
    pub fn term(c: BigInt, m: Monomial) -> Self {
        let mut terms = BTreeMap::new();
        if !c.is_zero() {
            terms.insert(m.exps(), c);
        }
        Poly { terms }
    }
    pub fn mono(m: Monomial) -> Self {
        Poly::term(BigInt::one(), m)
    }
    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }
    pub fn len(&self) -> usize {
        self.terms.len()
    }
    pub fn is_empty(&self) -> bool {
        self.terms.is_empty()
    }
    pub fn terms(&self) -> impl Iterator<Item = (&Exp, &BigInt)> {
        self.terms.iter()
    }
    pub fn from_terms<I: IntoIterator<Item = (Exp, BigInt)>>(it: I) -> Self {
        let mut p = Poly::zero();
        for (e, c) in it {
            p.add_term(e, c);
        }
        p
    }
    fn add_term(&mut self, e: Exp, c: BigInt) {
        if c.is_zero() {
            return;
        }
        match self.terms.entry(e) {
            std::collections::btree_map::Entry::Vacant(v) => {
                v.insert(c);
            }
            std::collections::btree_map::Entry::Occupied(mut o) => {
                *o.get_mut() += c;
                if o.get().is_zero() {
                    o.remove();
                }
            }
        }
    }
    pub fn scale_mono(&self, m: Monomial) -> Poly {
        let e = m.exps();
        Poly { terms: self.terms.iter().map(|(k, c)| (exp_add(k, &e), c.clone())).collect() }
    }
    fn scale_int(&self, c: &BigInt) -> Poly {
        if c.is_zero() {
            return Poly::zero();
        }
        Poly { terms: self.terms.iter().map(|(k, v)| (*k, v * c)).collect() }
    }
    fn div_int(&self, c: &BigInt) -> Poly {
        Poly { terms: self.terms.iter().map(|(k, v)| (*k, v / c)).collect() }
    }
    pub fn leading(&self) -> Option<(&Exp, &BigInt)> {
        self.terms.iter().next_back()
    }
    /// Componentwise minimum exponent.
    pub fn min_exps(&self) -> Exp {
        let mut m = [i32::MAX; 3];
        for k in self.terms.keys() {
            for i in 0..3 {
                m[i] = m[i].min(k[i]);
            }
        }
        if self.terms.is_empty() {
            [0; 3]
        } else {
            m
        }
    }
    fn content(&self) -> BigInt {
        self.terms.values().fold(BigInt::zero(), |g, c| g.gcd(c))
    }
    pub fn as_monomial(&self) -> Option<(BigInt, Monomial)> {
        if self.terms.len() != 1 {
            return None;
        }
        let (e, c) = self.terms.iter().next().unwrap();
        Some((c.clone(), Monomial::from_exps(0, *e)))
    }
    /// Apply `q -> q^{sq}`, `d -> d^{sd}`.
    pub fn substitute(&self, sq: i32, sd: i32) -> Poly {
        Poly {
            terms: self.terms.iter().map(|(k, c)| ([k[0] * sq, k[1] * sd, k[2]], c.clone())).collect(),
        }
    }
    /// Substitute a monomial for `K`.
    pub fn specialize_k(&self, kval: Monomial) -> Poly {
        let mut out = Poly::zero();
        for (k, c) in &self.terms {
            let m = Monomial::from_exps(0, [k[0], k[1], 0]);
            let kk = if k[2] % 2 == 0 {
                kval.pow(k[2] / 2)
            } else {
                kval.sqrt().map(|s| s.pow(k[2])).unwrap_or_else(|| panic!("K^(1/2) with non-square K value"))
            };
            let e = (m * kk).exps();
            out.add_term(e, c.clone());
        }
        out
    }
}

impl Add for &Poly {
    type Output = Poly;
    fn add(self, o: &Poly) -> Poly {
        let mut r = self.clone();
        for (e, c) in &o.terms {
            r.add_term(*e, c.clone());
        }
        r
    }
}

impl Sub for &Poly {
    type Output = Poly;
    fn sub(self, o: &Poly) -> Poly {
        let mut r = self.clone();
        for (e, c) in &o.terms {
            r.add_term(*e, -c.clone());
        }
        r
    }
}

impl Neg for &Poly {
    type Output = Poly;
    fn neg(self) -> Poly {
        Poly { terms: self.terms.iter().map(|(k, c)| (*k, -c.clone())).collect() }
    }
}

impl Mul for &Poly {
    type Output = Poly;
    fn mul(self, o: &Poly) -> Poly {
        if self.is_zero() || o.is_zero() {
            return Poly::zero();
        }
        if self.terms.len() == 1 {
            let (e, c) = self.terms.iter().next().unwrap();
            return o.scale_int(c).scale_mono(Monomial::from_exps(0, *e));
        }
        if o.terms.len() == 1 {
            let (e, c) = o.terms.iter().next().unwrap();
            return self.scale_int(c).scale_mono(Monomial::from_exps(0, *e));
        }
        let mut r = Poly::zero();
        for (e1, c1) in &self.terms {
            for (e2, c2) in &o.terms {
                r.add_term(exp_add(e1, e2), c1 * c2);
            }
        }
        r
    }
}

impl fmt::Display for Poly {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.terms.is_empty() {
            return write!(f, "0");
        }
        let mut first = true;
        for (e, c) in self.terms.iter().rev() {
            let m = Monomial::from_exps(0, *e);
            let neg = c.is_negative();
            let a = c.abs();
            if first {
                if neg {
                    write!(f, "-")?;
                }
            } else {
                write!(f, " {} ", if neg { "-" } else { "+" })?;
            }
            first = false;
            if m.is_one() {
                write!(f, "{a}")?;
            } else if a.is_one() {
                write!(f, "{m}")?;
            } else {
                write!(f, "{a}*{m}")?;
            }
        }
        Ok(())
    }
}

/// Element of the rational function field, kept as `num / den`.
#[derive(Clone, Debug)]
pub struct FieldElem {
    num: Poly,
    den: Poly,
}

impl FieldElem {
    pub fn zero() -> Self {
        FieldElem { num: Poly::zero(), den: Poly::one() }
    }
    pub fn one() -> Self {
        FieldElem { num: Poly::one(), den: Poly::one() }
    }
    pub fn int(c: i64) -> Self {
        FieldElem { num: Poly::term(BigInt::from(c), Monomial::ONE), den: Poly::one() }
    }
    pub fn mono(m: Monomial) -> Self {
        FieldElem { num: Poly::mono(m.strip_u()), den: Poly::one() }
    }
    pub fn from_poly(p: Poly) -> Self {
        FieldElem { num: p, den: Poly::one() }
    }
    /// `a - b` for monomials.
    pub fn binomial(a: Monomial, b: Monomial) -> Self {
        FieldElem::from_poly(&Poly::mono(a.strip_u()) - &Poly::mono(b.strip_u()))
    }
    pub fn new(num: Poly, den: Poly) -> Result<Self, FieldError> {
        if den.is_zero() {
            return Err(FieldError::DivisionByZero);
        }
        Ok(FieldElem { num, den }.normalized())
    }
    pub fn num(&self) -> &Poly {
        &self.num
    }
    pub fn den(&self) -> &Poly {
        &self.den
    }
    pub fn is_zero(&self) -> bool {
        self.num.is_zero()
    }
    pub fn is_one(&self) -> bool {
        self.num == self.den
    }

    fn normalized(mut self) -> Self {
        if self.num.is_zero() {
            return FieldElem::zero();
        }
        let dm = self.den.min_exps();
        let shift = Monomial::from_exps(0, [-dm[0], -dm[1], -dm[2]]);
        self.num = self.num.scale_mono(shift);
        self.den = self.den.scale_mono(shift);
        let g = self.num.content().gcd(&self.den.content());
        let sign_neg = self.den.leading().map(|(_, c)| c.is_negative()).unwrap_or(false);
        let g = if sign_neg { -g } else { g };
        if !g.is_one() {
            self.num = self.num.div_int(&g);
            self.den = self.den.div_int(&g);
        }
        if self.num == self.den {
            return FieldElem::one();
        }
        self
    }

    pub fn inv(&self) -> Result<Self, FieldError> {
        if self.is_zero() {
            return Err(FieldError::DivisionByZero);
        }
        Ok(FieldElem { num: self.den.clone(), den: self.num.clone() }.normalized())
    }

    pub fn checked_div(&self, o: &FieldElem) -> Result<Self, FieldError> {
        Ok(self * &o.inv()?)
    }

    pub fn pow(&self, e: i32) -> Result<Self, FieldError> {
        let base = if e < 0 { self.inv()? } else { self.clone() };
        let mut r = FieldElem::one();
        for _ in 0..e.unsigned_abs() {
            r = &r * &base;
        }
        Ok(r)
    }

    /// Returns the monomial if the element is `±monomial` with unit coefficient.
    pub fn as_monomial(&self) -> Option<(i32, Monomial)> {
        let (cn, mn) = self.num.as_monomial()?;
        let (cd, md) = self.den.as_monomial()?;
        let (q, r) = cn.div_rem(&cd);
        if !r.is_zero() {
            return None;
        }
        let s = q.to_i32()?;
        if s.abs() != 1 {
            return None;
        }
        Some((s, mn / md))
    }

    pub fn substitute(&self, sq: i32, sd: i32) -> Self {
        FieldElem { num: self.num.substitute(sq, sd), den: self.den.substitute(sq, sd) }.normalized()
    }

    pub fn specialize_k(&self, kval: Monomial) -> Result<Self, FieldError> {
        FieldElem::new(self.num.specialize_k(kval), self.den.specialize_k(kval))
    }

    pub fn scale_mono(&self, m: Monomial) -> Self {
        FieldElem { num: self.num.scale_mono(m.strip_u()), den: self.den.clone() }.normalized()
    }
}

impl PartialEq for FieldElem {
    fn eq(&self, o: &FieldElem) -> bool {
        if self.den == o.den {
            return self.num == o.num;
        }
        &self.num * &o.den == &o.num * &self.den
    }
}

impl Eq for FieldElem {}

impl Add for &FieldElem {
    type Output = FieldElem;
    fn add(self, o: &FieldElem) -> FieldElem {
        if self.is_zero() {
            return o.clone();
        }
        if o.is_zero() {
            return self.clone();
        }
        if self.den == o.den {
            return FieldElem { num: &self.num + &o.num, den: self.den.clone() }.normalized();
        }
        FieldElem { num: &(&self.num * &o.den) + &(&o.num * &self.den), den: &self.den * &o.den }.normalized()
    }
}

impl Sub for &FieldElem {
    type Output = FieldElem;
    fn sub(self, o: &FieldElem) -> FieldElem {
        self + &(-o)
    }
}

impl Neg for &FieldElem {
    type Output = FieldElem;
    fn neg(self) -> FieldElem {
        FieldElem { num: -&self.num, den: self.den.clone() }
    }
}

impl Mul for &FieldElem {
    type Output = FieldElem;
    fn mul(self, o: &FieldElem) -> FieldElem {
        if self.is_zero() || o.is_zero() {
            return FieldElem::zero();
        }
        if self.den == o.num && !o.num.is_zero() {
            return FieldElem { num: self.num.clone(), den: o.den.clone() }.normalized();
        }
        if o.den == self.num {
            return FieldElem { num: o.num.clone(), den: self.den.clone() }.normalized();
        }
        FieldElem { num: &self.num * &o.num, den: &self.den * &o.den }.normalized()
    }
}

impl fmt::Display for FieldElem {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.den == Poly::one() {
            if self.num.len() > 1 {
                return write!(f, "({})", self.num);
            }
            return write!(f, "{}", self.num);
        }
        write!(f, "({})/({})", self.num, self.den)
    }
}

/// `psi(x) = (q - q^{-1} x) / (1 - x)`.
pub fn psi_eval(x: Monomial) -> Result<FieldElem, FieldError> {
    if x.u != 0 {
        return Err(FieldError::UnexpectedU);
    }
    if x.is_one() {
        return Err(FieldError::PoleAtOne);
    }
    FieldElem::new(
        &Poly::mono(Monomial::q()) - &Poly::mono(Monomial::q().inv() * x),
        &Poly::one() - &Poly::mono(x),
    )
}

fn coeff_json(c: &BigInt) -> serde_json::Value {
    match c.to_i64() {
        Some(v) if v.unsigned_abs() < (1u64 << 53) => serde_json::Value::from(v),
        _ => serde_json::Value::String(c.to_string()),
    }
}

fn poly_json(p: &Poly) -> serde_json::Value {
    serde_json::Value::Array(
        p.terms
            .iter()
            .map(|(e, c)| serde_json::json!([coeff_json(c), e[0], e[1], e[2]]))
            .collect(),
    )
}

fn poly_from_json(v: &serde_json::Value) -> Result<Poly, FieldError> {
    let arr = v.as_array().ok_or_else(|| FieldError::Malformed("expected term array".into()))?;
    let mut p = Poly::zero();
    for t in arr {
        let t = t.as_array().filter(|t| t.len() == 4).ok_or_else(|| FieldError::Malformed("term must have 4 entries".into()))?;
        let c: BigInt = match &t[0] {
            serde_json::Value::Number(n) => n
                .as_i64()
                .map(BigInt::from)
                .ok_or_else(|| FieldError::Malformed("non-integer coefficient".into()))?,
            serde_json::Value::String(s) => s.parse().map_err(|_| FieldError::Malformed("bad coefficient".into()))?,
            _ => return Err(FieldError::Malformed("bad coefficient".into())),
        };
        let mut e = [0i32; 3];
        for i in 0..3 {
            e[i] = t[i + 1]
                .as_i64()
                .and_then(|x| i32::try_from(x).ok())
                .ok_or_else(|| FieldError::Malformed("bad exponent".into()))?;
        }
        p.add_term(e, c);
    }
    Ok(p)
}

impl FieldElem {
    pub fn to_json(&self) -> serde_json::Value {
        serde_json::json!({"num": poly_json(&self.num), "den": poly_json(&self.den)})
    }
    pub fn from_json(v: &serde_json::Value) -> Result<Self, FieldError> {
        let num = poly_from_json(v.get("num").ok_or_else(|| FieldError::Malformed("missing num".into()))?)?;
        let den = poly_from_json(v.get("den").ok_or_else(|| FieldError::Malformed("missing den".into()))?)?;
        if den.is_zero() {
            return Err(FieldError::DivisionByZero);
        }
        Ok(FieldElem { num, den })
    }
}

impl Serialize for FieldElem {
    fn serialize<S: Serializer>(&self, s: S) -> Result<S::Ok, S::Error> {
        self.to_json().serialize(s)
    }
}

impl<'de> Deserialize<'de> for FieldElem {
    fn deserialize<D: Deserializer<'de>>(d: D) -> Result<Self, D::Error> {
        let v = serde_json::Value::deserialize(d)?;
        FieldElem::from_json(&v).map_err(de::Error::custom)
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn q123_product_is_one() {
        assert!((Monomial::q1() * Monomial::q2() * Monomial::q3()).is_one());
        assert_eq!(mono_from_q123(1, 1, 1, 0), Monomial::ONE);
    }

    #[test]
    fn psi_values() {
        assert_eq!(psi_eval(Monomial::ONE), Err(FieldError::PoleAtOne));
        let a = psi_eval(Monomial::q1()).unwrap();
        let b = psi_eval(Monomial::q2() / Monomial::q1()).unwrap();
        assert!((&a * &b).is_one());
    }

    #[test]
    fn json_round_trip() {
        let x = psi_eval(Monomial::q3().pow(2) * Monomial::k()).unwrap();
        let j = x.to_json();
        let y = FieldElem::from_json(&j).unwrap();
        assert_eq!(j, y.to_json());
        assert_eq!(x, y);
    }

    #[test]
    fn as_monomial_detects_units() {
        let m = Monomial::q().pow(3) * Monomial::d();
        assert_eq!(FieldElem::mono(m).as_monomial(), Some((1, m)));
        assert_eq!((-&FieldElem::mono(m)).as_monomial(), Some((-1, m)));
        assert_eq!(FieldElem::binomial(Monomial::q(), Monomial::ONE).as_monomial(), None);
    }
}

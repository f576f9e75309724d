//! Matrix coefficients in factored form `sign * monomial * prod (1 - m)^e`.

use std::collections::BTreeMap;
use std::fmt;

use crate::field::{FieldElem, FieldError, Monomial, Poly};

/// A nonzero coefficient is `sign * mono * prod_m (1 - m)^{e_m}` with every `m > 1` in the
/// monomial order, which makes the representation canonical.
#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Coeff {
    sign: i8,
    mono: Monomial,
    factors: BTreeMap<Monomial, i32>,
}

impl Coeff {
    pub fn zero() -> Self {
        Coeff { sign: 0, mono: Monomial::ONE, factors: BTreeMap::new() }
    }
    pub fn one() -> Self {
        Coeff::mono(Monomial::ONE)
    }
    pub fn mono(m: Monomial) -> Self {
        Coeff { sign: 1, mono: m.strip_u(), factors: BTreeMap::new() }
    }
    pub fn signed(sign: i8, m: Monomial) -> Self {
        let mut c = Coeff::mono(m);
        c.sign = sign.signum();
        c
    }
    /// `(1 - m)^e`; zero for `m = 1, e > 0`.
    pub fn one_minus(m: Monomial, e: i32) -> Result<Self, FieldError> {
        let m = m.strip_u();
        if e == 0 {
            return Ok(Coeff::one());
        }
        if m.is_one() {
            return if e > 0 { Ok(Coeff::zero()) } else { Err(FieldError::DivisionByZero) };
        }
        let mut c = Coeff::one();
        c.push(m, e);
        Ok(c)
    }
    /// `a - b`.
    pub fn binomial(a: Monomial, b: Monomial) -> Self {
        let a = a.strip_u();
        let b = b.strip_u();
        Coeff::one_minus(b / a, 1).unwrap().scale(a)
    }
    /// `psi(x) = q (1 - q^{-2} x) / (1 - x)`.
    pub fn psi(x: Monomial) -> Result<Self, FieldError> {
        if x.u != 0 {
            return Err(FieldError::UnexpectedU);
        }
        if x.is_one() {
            return Err(FieldError::PoleAtOne);
        }
        let num = Coeff::one_minus(Monomial::q2().inv() * x, 1)?;
        Ok(num.mul(&Coeff::one_minus(x, -1)?).scale(Monomial::q()))
    }

    fn push(&mut self, m: Monomial, e: i32) {
        let (m, e) = if m > Monomial::ONE {
            (m, e)
        } else {
            // 1 - m = -m (1 - 1/m)
            if e % 2 != 0 {
                self.sign = -self.sign;
            }
            self.mono = self.mono * m.pow(e);
            (m.inv(), e)
        };
        let v = self.factors.entry(m).or_insert(0);
        *v += e;
        if *v == 0 {
            self.factors.remove(&m);
        }
    }

    pub fn is_zero(&self) -> bool {
        self.sign == 0
    }
    pub fn is_one(&self) -> bool {
        self.sign == 1 && self.mono.is_one() && self.factors.is_empty()
    }
    pub fn sign(&self) -> i8 {
        self.sign
    }
    pub fn monomial(&self) -> Monomial {
        self.mono
    }
    pub fn factors(&self) -> impl Iterator<Item = (&Monomial, &i32)> {
        self.factors.iter()
    }
    /// `±monomial` if there are no binomial factors.
    pub fn as_monomial(&self) -> Option<(i8, Monomial)> {
        if self.sign != 0 && self.factors.is_empty() {
            Some((self.sign, self.mono))
        } else {
            None
        }
    }

    pub fn neg(&self) -> Self {
        let mut c = self.clone();
        c.sign = -c.sign;
        c
    }
    pub fn scale(&self, m: Monomial) -> Self {
        if self.is_zero() {
            return Coeff::zero();
        }
        let mut c = self.clone();
        c.mono = c.mono * m.strip_u();
        c
    }
    pub fn mul(&self, o: &Coeff) -> Self {
        if self.is_zero() || o.is_zero() {
            return Coeff::zero();
        }
        let mut c = self.clone();
        c.sign *= o.sign;
        c.mono = c.mono * o.mono;
        for (m, e) in &o.factors {
            c.push(*m, *e);
        }
        c
    }
    pub fn inv(&self) -> Result<Self, FieldError> {
        if self.is_zero() {
            return Err(FieldError::DivisionByZero);
        }
        Ok(Coeff {
            sign: self.sign,
            mono: self.mono.inv(),
            factors: self.factors.iter().map(|(m, e)| (*m, -e)).collect(),
        })
    }
    pub fn div(&self, o: &Coeff) -> Result<Self, FieldError> {
        Ok(self.mul(&o.inv()?))
    }
    pub fn pow(&self, e: i32) -> Result<Self, FieldError> {
        if e < 0 {
            return self.inv()?.pow(-e);
        }
        let mut r = Coeff::one();
        for _ in 0..e {
            r = r.mul(self);
        }
        Ok(r)
    }

    /// Apply a multiplicative substitution to every monomial.
    pub fn map(&self, f: impl Fn(Monomial) -> Monomial) -> Self {
        if self.is_zero() {
            return Coeff::zero();
        }
        let mut c = Coeff { sign: self.sign, mono: f(self.mono), factors: BTreeMap::new() };
        for (m, e) in &self.factors {
            c.push(f(*m), *e);
        }
        c
    }

    /// Numerator and denominator polynomials.
    pub fn parts(&self) -> (Poly, Poly) {
        if self.is_zero() {
            return (Poly::zero(), Poly::one());
        }
        let mut num = Poly::term(self.sign.into(), Monomial::ONE);
        let mut den = Poly::one();
        num = num.scale_mono(self.mono);
        for (m, e) in &self.factors {
            let f = &Poly::one() - &Poly::mono(*m);
            for _ in 0..e.unsigned_abs() {
                if *e > 0 {
                    num = &num * &f;
                } else {
                    den = &den * &f;
                }
            }
        }
        (num, den)
    }

    pub fn to_field(&self) -> FieldElem {
        let (n, d) = self.parts();
        FieldElem::new(n, d).expect("nonzero denominator")
    }

    /// Exact sum over a common denominator.
    pub fn sum(terms: &[Coeff]) -> FieldElem {
        let (num, den) = Coeff::sum_parts(terms);
        FieldElem::new(num, den).expect("nonzero denominator")
    }

    /// Whether `sum terms == 0`.
    pub fn sum_is_zero(terms: &[Coeff]) -> bool {
        let live: Vec<&Coeff> = terms.iter().filter(|c| !c.is_zero()).collect();
        match live.len() {
            0 => true,
            1 => false,
            2 => *live[0] == live[1].neg(),
            _ => Coeff::sum_parts(terms).0.is_zero(),
        }
    }

    fn sum_parts(terms: &[Coeff]) -> (Poly, Poly) {
        let live: Vec<&Coeff> = terms.iter().filter(|c| !c.is_zero()).collect();
        if live.is_empty() {
            return (Poly::zero(), Poly::one());
        }
        let mut dmax: BTreeMap<Monomial, i32> = BTreeMap::new();
        for c in &live {
            for (m, e) in &c.factors {
                if *e < 0 {
                    let v = dmax.entry(*m).or_insert(0);
                    *v = (*v).max(-e);
                }
            }
        }
        let mut den = Poly::one();
        for (m, e) in &dmax {
            for _ in 0..*e {
                den = &den * &(&Poly::one() - &Poly::mono(*m));
            }
        }
        let mut num = Poly::zero();
        for c in &live {
            let mut t = Poly::term(c.sign.into(), Monomial::ONE).scale_mono(c.mono);
            for (m, d) in &dmax {
                let have = c.factors.get(m).copied().unwrap_or(0).min(0);
                for _ in 0..(d + have) {
                    t = &t * &(&Poly::one() - &Poly::mono(*m));
                }
            }
            for (m, e) in &c.factors {
                for _ in 0..e.max(&0).unsigned_abs() {
                    t = &t * &(&Poly::one() - &Poly::mono(*m));
                }
            }
            num = &num + &t;
        }
        (num, den)
    }
}

impl fmt::Display for Coeff {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.is_zero() {
            return write!(f, "0");
        }
        if self.sign < 0 {
            write!(f, "-")?;
        }
        write!(f, "{}", self.mono)?;
        for (m, e) in &self.factors {
            if *e == 1 {
                write!(f, "*(1 - {m})")?;
            } else {
                write!(f, "*(1 - {m})^{e}")?;
            }
        }
        Ok(())
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn psi_matches_field() {
        for a in -3..=3 {
            for b in -3..=3 {
                let x = Monomial::q1().pow(a) * Monomial::q3().pow(b);
                if x.is_one() {
                    continue;
                }
                let c = Coeff::psi(x).unwrap();
                assert_eq!(c.to_field(), crate::field::psi_eval(x).unwrap());
            }
        }
    }

    #[test]
    fn canonical_form_absorbs_inverse_binomials() {
        let x = Monomial::q1();
        let a = Coeff::one_minus(x, 1).unwrap();
        let b = Coeff::one_minus(x.inv(), 1).unwrap().scale(x).neg();
        assert_eq!(a, b);
        assert_eq!(Coeff::psi(Monomial::q2()).unwrap(), Coeff::zero());
    }

    #[test]
    fn sums() {
        let x = Monomial::q1();
        let a = Coeff::one_minus(x, -1).unwrap();
        let b = Coeff::one_minus(x, -1).unwrap().scale(x).neg();
        // 1/(1-x) - x/(1-x) = 1
        assert!(Coeff::sum(&[a, b]).is_one());
        let p = Coeff::psi(Monomial::q3()).unwrap();
        let qq = Coeff::psi(Monomial::q2() / Monomial::q3()).unwrap();
        assert!(p.mul(&qq).is_one());
        assert!(Coeff::sum_is_zero(&[p.clone(), p.neg()]));
    }
}

//! Rational functions of `zeta = u/z` built from linear factors `(A - B zeta)^{±1}`.

use std::collections::BTreeMap;
use std::fmt;

use serde::{Deserialize, Serialize};
use thiserror::Error;

use crate::coeff::Coeff;
use crate::field::{FieldElem, FieldError, Monomial, Poly};

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum ZetaError {
    #[error("factor is identically zero")]
    DegenerateFactor,
    #[error("function is not proper in zeta")]
    NotProper,
    #[error("pole at zeta = 0")]
    PoleAtZero,
    #[error("repeated pole")]
    RepeatedPole,
    #[error("constant is not a signed monomial")]
    NonMonomialConstant,
    #[error(transparent)]
    Field(#[from] FieldError),
}

/// `(A - B zeta)^exp`; `None` stands for a vanishing coefficient.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct ZetaFactor {
    pub a: Option<Monomial>,
    pub b: Option<Monomial>,
    pub exp: i32,
}

/// `constant * zeta^zpow * prod_m (1 - m zeta)^{e_m}`, kept in canonical form.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ZetaFunction {
    constant: FieldElem,
    zpow: i32,
    lin: BTreeMap<Monomial, i32>,
}

/// Value at a point, with the order of vanishing tracked separately.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct PointValue {
    pub value: FieldElem,
    pub order: i32,
}

impl PointValue {
    pub fn one() -> Self {
        PointValue { value: FieldElem::one(), order: 0 }
    }
    pub fn mul(&self, o: &PointValue) -> PointValue {
        PointValue { value: &self.value * &o.value, order: self.order + o.order }
    }
    pub fn is_zero(&self) -> bool {
        self.order > 0 || self.value.is_zero()
    }
    pub fn is_pole(&self) -> bool {
        self.order < 0
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct PartialFractions {
    pub constant: FieldElem,
    /// `(zeta_p, r_p)` with `f = c + sum r_p / (1 - zeta/zeta_p)`.
    pub poles: Vec<(Monomial, FieldElem)>,
}

impl ZetaFunction {
    pub fn one() -> Self {
        ZetaFunction::constant(FieldElem::one())
    }
    pub fn constant(c: FieldElem) -> Self {
        ZetaFunction { constant: c, zpow: 0, lin: BTreeMap::new() }
    }
    /// `(1 - m zeta)^e`.
    pub fn linear(m: Monomial, e: i32) -> Self {
        let mut lin = BTreeMap::new();
        if e != 0 {
            lin.insert(m.strip_u(), e);
        }
        ZetaFunction { constant: FieldElem::one(), zpow: 0, lin }
    }
    pub fn zeta_pow(p: i32) -> Self {
        ZetaFunction { constant: FieldElem::one(), zpow: p, lin: BTreeMap::new() }
    }
    pub fn from_factor(f: ZetaFactor) -> Result<Self, ZetaError> {
        let base = match (f.a, f.b) {
            (None, None) => return Err(ZetaError::DegenerateFactor),
            (Some(a), None) => ZetaFunction::constant(FieldElem::mono(a)),
            (None, Some(b)) => ZetaFunction { constant: -&FieldElem::mono(b), zpow: 1, lin: BTreeMap::new() },
            (Some(a), Some(b)) => {
                let mut z = ZetaFunction::linear(b.strip_u() / a.strip_u(), 1);
                z.constant = FieldElem::mono(a);
                z
            }
        };
        base.pow(f.exp)
    }
    pub fn from_factors(c: FieldElem, fs: &[ZetaFactor]) -> Result<Self, ZetaError> {
        let mut z = ZetaFunction::constant(c);
        for f in fs {
            z = z.mul(&ZetaFunction::from_factor(*f)?);
        }
        Ok(z)
    }
    /// `psi(m zeta) = (q - q^{-1} m zeta)/(1 - m zeta)`.
    pub fn psi(m: Monomial) -> Self {
        let m = m.strip_u();
        let mut z = ZetaFunction::linear(Monomial::q2().inv() * m, 1).mul(&ZetaFunction::linear(m, -1));
        z.constant = FieldElem::mono(Monomial::q());
        z
    }

    pub fn constant_part(&self) -> &FieldElem {
        &self.constant
    }
    pub fn zpow(&self) -> i32 {
        self.zpow
    }
    pub fn linear_factors(&self) -> impl Iterator<Item = (&Monomial, &i32)> {
        self.lin.iter()
    }
    pub fn is_zero(&self) -> bool {
        self.constant.is_zero()
    }

    pub fn mul(&self, o: &ZetaFunction) -> ZetaFunction {
        let constant = &self.constant * &o.constant;
        if constant.is_zero() {
            return ZetaFunction::constant(constant);
        }
        let mut lin = self.lin.clone();
        for (m, e) in &o.lin {
            let v = lin.entry(*m).or_insert(0);
            *v += e;
            if *v == 0 {
                lin.remove(m);
            }
        }
        ZetaFunction { constant, zpow: self.zpow + o.zpow, lin }
    }
    pub fn scale(&self, c: &FieldElem) -> ZetaFunction {
        self.mul(&ZetaFunction::constant(c.clone()))
    }
    pub fn inv(&self) -> Result<ZetaFunction, ZetaError> {
        Ok(ZetaFunction {
            constant: self.constant.inv()?,
            zpow: -self.zpow,
            lin: self.lin.iter().map(|(m, e)| (*m, -e)).collect(),
        })
    }
    pub fn pow(&self, e: i32) -> Result<ZetaFunction, ZetaError> {
        Ok(ZetaFunction {
            constant: self.constant.pow(e)?,
            zpow: self.zpow * e,
            lin: if e == 0 { BTreeMap::new() } else { self.lin.iter().map(|(m, x)| (*m, x * e)).collect() },
        })
    }

    /// Total degree in `zeta` of numerator minus denominator.
    pub fn degree(&self) -> i32 {
        self.zpow + self.lin.values().sum::<i32>()
    }

    pub fn value_at_zero(&self) -> Result<FieldElem, ZetaError> {
        if self.zpow < 0 {
            return Err(ZetaError::PoleAtZero);
        }
        if self.zpow > 0 {
            return Ok(FieldElem::zero());
        }
        Ok(self.constant.clone())
    }

    /// Coefficient of `zeta^{degree}` at infinity.
    pub fn leading_at_infinity(&self) -> Result<FieldElem, ZetaError> {
        let mut c = self.constant.clone();
        for (m, e) in &self.lin {
            c = &c * &(-&FieldElem::mono(*m)).pow(*e)?;
        }
        Ok(c)
    }

    pub fn value_at_infinity(&self) -> Result<FieldElem, ZetaError> {
        match self.degree() {
            0 => self.leading_at_infinity(),
            d if d < 0 => Ok(FieldElem::zero()),
            _ => Err(ZetaError::NotProper),
        }
    }

    /// Evaluate at `zeta = z0`.
    pub fn eval(&self, z0: Monomial) -> Result<PointValue, ZetaError> {
        let z0 = z0.strip_u();
        let mut order = 0;
        let mut num = Poly::one();
        let mut den = Poly::one();
        let zp = Poly::mono(z0.pow(self.zpow.abs()));
        if self.zpow >= 0 {
            num = &num * &zp;
        } else {
            den = &den * &zp;
        }
        for (m, e) in &self.lin {
            let x = *m * z0;
            if x.is_one() {
                order += e;
                continue;
            }
            let f = &Poly::one() - &Poly::mono(x);
            for _ in 0..e.unsigned_abs() {
                if *e > 0 {
                    num = &num * &f;
                } else {
                    den = &den * &f;
                }
            }
        }
        let v = FieldElem::new(num, den)?;
        Ok(PointValue { value: &self.constant * &v, order })
    }

    fn constant_coeff(&self) -> Result<Coeff, ZetaError> {
        if self.constant.is_zero() {
            return Ok(Coeff::zero());
        }
        let (s, m) = self.constant.as_monomial().ok_or(ZetaError::NonMonomialConstant)?;
        Ok(Coeff::signed(s as i8, m))
    }

    /// Evaluate at `zeta = z0` in factored form, returning the value with zero/pole
    /// factors removed together with their total order.
    pub fn eval_coeff(&self, z0: Monomial) -> Result<(Coeff, i32), ZetaError> {
        let z0 = z0.strip_u();
        let mut c = self.constant_coeff()?.scale(z0.pow(self.zpow));
        let mut order = 0;
        for (m, e) in &self.lin {
            let x = *m * z0;
            if x.is_one() {
                order += e;
                continue;
            }
            c = c.mul(&Coeff::one_minus(x, *e)?);
        }
        Ok((c, order))
    }

    /// Residue data `(m_p, r_p)` for each simple pole factor `(1 - m_p zeta)^{-1}`, where
    /// `f = c + sum r_p / (1 - m_p zeta)`.
    pub fn pole_residues(&self) -> Result<Vec<(Monomial, Coeff)>, ZetaError> {
        if self.zpow < 0 {
            return Err(ZetaError::PoleAtZero);
        }
        if self.degree() > 0 {
            return Err(ZetaError::NotProper);
        }
        let c0 = self.constant_coeff()?;
        let mut out = Vec::new();
        for (mp, ep) in &self.lin {
            if *ep >= 0 {
                continue;
            }
            if *ep < -1 {
                return Err(ZetaError::RepeatedPole);
            }
            let zp = mp.inv();
            let mut r = c0.scale(zp.pow(self.zpow));
            for (m, e) in &self.lin {
                if m != mp {
                    r = r.mul(&Coeff::one_minus(*m * zp, *e)?);
                }
            }
            out.push((*mp, r));
        }
        Ok(out)
    }

    /// Coefficients `[zeta^0 .. zeta^order]` of the expansion at `zeta = 0`.
    pub fn expand_zero(&self, order: usize) -> Result<Vec<FieldElem>, ZetaError> {
        if self.zpow < 0 {
            return Err(ZetaError::PoleAtZero);
        }
        let mut s = vec![Poly::zero(); order + 1];
        if (self.zpow as usize) <= order {
            s[self.zpow as usize] = Poly::one();
        }
        for (m, e) in &self.lin {
            let f = series_linear(*m, *e, order);
            s = series_mul(&s, &f, order);
        }
        Ok(s.into_iter().map(|p| &self.constant * &FieldElem::from_poly(p)).collect())
    }

    /// Coefficient of `zeta^n` in the expansion at `zeta = 0`.
    pub fn coeff_zero(&self, n: i32) -> Result<FieldElem, ZetaError> {
        if n < 0 {
            if self.zpow < 0 {
                return Err(ZetaError::PoleAtZero);
            }
            return Ok(FieldElem::zero());
        }
        Ok(self.expand_zero(n as usize)?.pop().unwrap())
    }

    /// Coefficients of `zeta^{D}, zeta^{D-1}, ..., zeta^{D-order}` at infinity, `D = degree()`.
    pub fn expand_infinity(&self, order: usize) -> Result<Vec<FieldElem>, ZetaError> {
        let mut s = vec![Poly::zero(); order + 1];
        s[0] = Poly::one();
        for (m, e) in &self.lin {
            let f = series_linear(m.inv(), *e, order);
            s = series_mul(&s, &f, order);
        }
        let lead = self.leading_at_infinity()?;
        Ok(s.into_iter().map(|p| &lead * &FieldElem::from_poly(p)).collect())
    }

    /// Coefficient of `zeta^n` in the expansion at `zeta = infinity`.
    pub fn coeff_infinity(&self, n: i32) -> Result<FieldElem, ZetaError> {
        let d = self.degree();
        if n > d {
            return Ok(FieldElem::zero());
        }
        Ok(self.expand_infinity((d - n) as usize)?.pop().unwrap())
    }

    pub fn partial_fractions(&self) -> Result<PartialFractions, ZetaError> {
        if self.zpow < 0 {
            return Err(ZetaError::PoleAtZero);
        }
        if self.degree() > 0 {
            return Err(ZetaError::NotProper);
        }
        let mut poles = Vec::new();
        for (mp, ep) in &self.lin {
            if *ep >= 0 {
                continue;
            }
            if *ep < -1 {
                return Err(ZetaError::RepeatedPole);
            }
            let zp = mp.inv();
            let mut r = &self.constant * &FieldElem::mono(zp.pow(self.zpow));
            for (m, e) in &self.lin {
                if m == mp {
                    continue;
                }
                r = &r * &FieldElem::binomial(Monomial::ONE, *m * zp).pow(*e)?;
            }
            poles.push((zp, r));
        }
        Ok(PartialFractions { constant: self.value_at_infinity()?, poles })
    }

    /// Replace every monomial `m` by `f(m)` in the linear factors and `g` on the constant.
    pub fn map(&self, f: impl Fn(Monomial) -> Monomial, g: impl Fn(&FieldElem) -> FieldElem) -> ZetaFunction {
        let mut out = ZetaFunction::constant(g(&self.constant));
        out.zpow = self.zpow;
        for (m, e) in &self.lin {
            out = out.mul(&ZetaFunction::linear(f(*m), *e));
        }
        out
    }

    /// Rescale `zeta -> a zeta`.
    pub fn rescale(&self, a: Monomial) -> ZetaFunction {
        let c = &self.constant * &FieldElem::mono(a.strip_u().pow(self.zpow));
        let mut out = self.map(|m| m * a.strip_u(), |_| c.clone());
        out.zpow = self.zpow;
        out
    }

    pub fn specialize_k(&self, kval: Monomial) -> Result<ZetaFunction, ZetaError> {
        let spec = |m: Monomial| -> Monomial {
            let k = if m.k2 % 2 == 0 { kval.pow(m.k2 / 2) } else { kval.sqrt().expect("K value must be a square").pow(m.k2) };
            Monomial::new(0, m.q2, m.d2, 0) * k
        };
        let c = self.constant.specialize_k(kval)?;
        let mut out = ZetaFunction::constant(c);
        out.zpow = self.zpow;
        for (m, e) in &self.lin {
            let mm = spec(*m);
            out = out.mul(&ZetaFunction::linear(mm, *e));
        }
        Ok(out)
    }

    pub fn to_json(&self) -> serde_json::Value {
        serde_json::json!({
            "constant": self.constant.to_json(),
            "zeta_power": self.zpow,
            "factors": self.lin.iter().map(|(m, e)| serde_json::json!({"one_minus": m, "exp": e})).collect::<Vec<_>>(),
        })
    }
}

fn series_linear(m: Monomial, e: i32, order: usize) -> Vec<Poly> {
    let mut s = vec![Poly::zero(); order + 1];
    s[0] = Poly::one();
    let base: Vec<Poly> = if e > 0 {
        let mut b = vec![Poly::zero(); order + 1];
        b[0] = Poly::one();
        if order >= 1 {
            b[1] = -&Poly::mono(m);
        }
        b
    } else {
        (0..=order).map(|k| Poly::mono(m.pow(k as i32))).collect()
    };
    for _ in 0..e.unsigned_abs() {
        s = series_mul(&s, &base, order);
    }
    s
}

fn series_mul(a: &[Poly], b: &[Poly], order: usize) -> Vec<Poly> {
    let mut r = vec![Poly::zero(); order + 1];
    for i in 0..=order {
        if a[i].is_zero() {
            continue;
        }
        for j in 0..=(order - i) {
            if b[j].is_zero() {
                continue;
            }
            r[i + j] = &r[i + j] + &(&a[i] * &b[j]);
        }
    }
    r
}

impl fmt::Display for ZetaFunction {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", self.constant)?;
        if self.zpow != 0 {
            write!(f, " * zeta^{}", self.zpow)?;
        }
        for (m, e) in &self.lin {
            write!(f, " * (1 - {m} zeta)^{e}")?;
        }
        Ok(())
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn psi_partial_fractions() {
        let p = ZetaFunction::psi(Monomial::ONE);
        let pf = p.partial_fractions().unwrap();
        assert_eq!(pf.constant, FieldElem::mono(Monomial::q().inv()));
        assert_eq!(pf.poles.len(), 1);
        assert_eq!(pf.poles[0].0, Monomial::ONE);
        assert_eq!(pf.poles[0].1, FieldElem::binomial(Monomial::q(), Monomial::q().inv()));
    }

    #[test]
    fn psi_expansions() {
        let p = ZetaFunction::psi(Monomial::ONE);
        assert_eq!(p.expand_zero(0).unwrap(), vec![FieldElem::mono(Monomial::q())]);
        assert_eq!(p.expand_infinity(0).unwrap(), vec![FieldElem::mono(Monomial::q().inv())]);
        // psi(zeta) = q + (q - q^{-1}) zeta + ...
        assert_eq!(p.coeff_zero(1).unwrap(), FieldElem::binomial(Monomial::q(), Monomial::q().inv()));
        assert_eq!(p.coeff_infinity(-1).unwrap(), -&FieldElem::binomial(Monomial::q(), Monomial::q().inv()));
    }

    #[test]
    fn factor_forms() {
        let f = ZetaFunction::from_factor(ZetaFactor { a: Some(Monomial::k().inv()), b: Some(Monomial::k()), exp: 1 }).unwrap();
        assert_eq!(f.value_at_zero().unwrap(), FieldElem::mono(Monomial::k().inv()));
        assert_eq!(f.leading_at_infinity().unwrap(), -&FieldElem::mono(Monomial::k()));
        let g = ZetaFunction::from_factor(ZetaFactor { a: None, b: Some(Monomial::q()), exp: -1 }).unwrap();
        assert_eq!(g.zpow(), -1);
        assert!(g.partial_fractions().is_err());
        assert_eq!(
            ZetaFunction::from_factor(ZetaFactor { a: None, b: None, exp: 1 }),
            Err(ZetaError::DegenerateFactor)
        );
    }

    #[test]
    fn repeated_pole_rejected() {
        let f = ZetaFunction::linear(Monomial::q(), -2);
        assert_eq!(f.partial_fractions(), Err(ZetaError::RepeatedPole));
    }

    #[test]
    fn eval_tracks_zeros() {
        let p = ZetaFunction::psi(Monomial::q1());
        let at_pole = p.eval(Monomial::q1().inv()).unwrap();
        assert!(at_pole.is_pole());
        let at_zero = p.eval(Monomial::q1().inv() * Monomial::q2()).unwrap();
        assert!(at_zero.is_zero());
    }
}

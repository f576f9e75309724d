//! Principal characters: enumeration, Weyl-type alternating sums and lowest-weight checks for `G_{μ,ν}`.

use std::fmt;

use num_bigint::BigInt;
use num_traits::{One, Zero};
use serde::Serialize;
use thiserror::Error;

use crate::field::{FieldElem, Monomial};
use crate::partitions::Partition;
use crate::rep::{Module, RepError};
use crate::roots::{kt_shift, lambda_weight, reduced_words, LambdaWeight, Permutation, RootError};

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum CharError {
    #[error("eigenvalue mismatch for {what}: expected {expected}, got {got}")]
    EigenvalueMismatch { what: String, expected: String, got: String },
    #[error("pairing {0} is not a positive integer")]
    NonIntegralPairing(i64),
    #[error(transparent)]
    Rep(#[from] RepError),
    #[error(transparent)]
    Root(#[from] RootError),
}

/// Integer power series truncated after `x^max`.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct PowerSeries {
    pub coeffs: Vec<BigInt>,
}

impl PowerSeries {
    pub fn zero(max: usize) -> Self {
        PowerSeries { coeffs: vec![BigInt::zero(); max + 1] }
    }
    pub fn one(max: usize) -> Self {
        let mut s = PowerSeries::zero(max);
        s.coeffs[0] = BigInt::one();
        s
    }
    pub fn from_counts(c: &[usize]) -> Self {
        PowerSeries { coeffs: c.iter().map(|&v| BigInt::from(v)).collect() }
    }
    pub fn max(&self) -> usize {
        self.coeffs.len() - 1
    }
    pub fn add_term(&mut self, e: usize, c: i64) {
        if e <= self.max() {
            self.coeffs[e] += c;
        }
    }
    pub fn mul(&self, o: &PowerSeries) -> PowerSeries {
        let max = self.max().min(o.max());
        let mut r = PowerSeries::zero(max);
        for (i, a) in self.coeffs.iter().enumerate().take(max + 1) {
            if a.is_zero() {
                continue;
            }
            for (j, b) in o.coeffs.iter().enumerate().take(max + 1 - i) {
                r.coeffs[i + j] += a * b;
            }
        }
        r
    }
    /// `(x; x)_∞^{-n}`.
    pub fn pochhammer_inv(n: usize, max: usize) -> PowerSeries {
        // 1/(1 - x^j) = sum_t x^{jt}
        let mut r = PowerSeries::one(max);
        for _ in 0..n {
            for j in 1..=max {
                for e in j..=max {
                    let prev = r.coeffs[e - j].clone();
                    r.coeffs[e] += prev;
                }
            }
        }
        r
    }
    /// `∏_{m≥1} (1 - x^m)^{-m}`.
    pub fn macmahon(max: usize) -> PowerSeries {
        let mut r = PowerSeries::one(max);
        for j in 1..=max {
            for _ in 0..j {
                for e in j..=max {
                    let prev = r.coeffs[e - j].clone();
                    r.coeffs[e] += prev;
                }
            }
        }
        r
    }
    /// First degree where the two series differ.
    pub fn first_mismatch(&self, o: &PowerSeries) -> Option<usize> {
        let m = self.max().min(o.max());
        (0..=m).find(|&i| self.coeffs[i] != o.coeffs[i])
    }
}

impl fmt::Display for PowerSeries {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let s: Vec<String> = self.coeffs.iter().map(|c| c.to_string()).collect();
        write!(f, "{}", s.join(","))
    }
}

/// `Σ x^{deg}` over the basis up to `max_degree`.
pub fn char_enumerate(h: &dyn Module, max_degree: usize) -> PowerSeries {
    let c: Vec<usize> = (0..=max_degree as i64).map(|d| h.basis_by_degree(d).len()).collect();
    PowerSeries::from_counts(&c)
}

/// Which side carries the permutation in `e(s)`.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
pub enum Convention {
    /// `Σ b_i (a_i - a_{s(i)})`.
    Primary,
    /// `Σ a_i (b_i - b_{s(i)})`.
    Alternative,
}

/// `a_i = ν'_i + n - i`, `b_i = μ'_i + n - i`.
fn ab(mu: &Partition, nu: &Partition, n: usize) -> (Vec<i64>, Vec<i64>) {
    let mc = mu.conjugate();
    let nc = nu.conjugate();
    let a = (1..=n).map(|i| nc.get(i as i64) as i64 + (n - i) as i64).collect();
    let b = (1..=n).map(|i| mc.get(i as i64) as i64 + (n - i) as i64).collect();
    (a, b)
}

pub fn weyl_exponent(s: &Permutation, mu: &Partition, nu: &Partition, n: usize, conv: Convention) -> i64 {
    let (a, b) = ab(mu, nu, n);
    let (x, y) = match conv {
        Convention::Primary => (&b, &a),
        Convention::Alternative => (&a, &b),
    };
    (1..=n).map(|i| x[i - 1] * (y[i - 1] - y[s.apply(i) - 1])).sum()
}

/// `(x)_∞^{-n} Σ_s (-1)^{ℓ(s)} x^{e(s)}` with a fixed convention.
pub fn weyl_sum_with(mu: &Partition, nu: &Partition, n: usize, max_degree: usize, conv: Convention) -> PowerSeries {
    let mut num = PowerSeries::zero(max_degree);
    for (s, _) in reduced_words(n) {
        let e = weyl_exponent(&s, mu, nu, n, conv);
        assert!(e >= 0, "negative exponent {e} for {s:?}");
        let sign = if s.length() % 2 == 0 { 1 } else { -1 };
        num.add_term(e as usize, sign);
    }
    num.mul(&PowerSeries::pochhammer_inv(n, max_degree))
}

/// Alternating sum with the convention pinned against `reference`; the primary form is kept
/// when it matches.
pub fn weyl_sum_char(mu: &Partition, nu: &Partition, n: usize, max_degree: usize, reference: &PowerSeries) -> (PowerSeries, Convention) {
    let p = weyl_sum_with(mu, nu, n, max_degree, Convention::Primary);
    if p.first_mismatch(reference).is_none() {
        return (p, Convention::Primary);
    }
    (weyl_sum_with(mu, nu, n, max_degree, Convention::Alternative), Convention::Alternative)
}

/// Alternating sum over the orbit of `λ+ρ` built from reflections in the `β_i`.
pub fn kt_char(lw: &LambdaWeight, max_degree: usize) -> Result<PowerSeries, CharError> {
    for &p in lw.beta_pairings.iter().chain(&lw.rho_pairings) {
        if p <= 0 {
            return Err(CharError::NonIntegralPairing(p));
        }
    }
    let mut num = PowerSeries::zero(max_degree);
    for (s, word) in reduced_words(lw.n) {
        let e = kt_shift(lw, &word).height();
        if e < 0 {
            return Err(CharError::NonIntegralPairing(e));
        }
        num.add_term(e as usize, if s.length() % 2 == 0 { 1 } else { -1 });
    }
    Ok(num.mul(&PowerSeries::pochhammer_inv(lw.n, max_degree)))
}

/// Exponents of `kt_char` paired with those of the alternating sum, per permutation.
pub fn kt_terms(lw: &LambdaWeight, mu: &Partition, nu: &Partition, conv: Convention) -> Vec<(Permutation, i64, i64)> {
    reduced_words(lw.n)
        .into_iter()
        .map(|(s, w)| {
            let kt = kt_shift(lw, &w).height();
            let ws = weyl_exponent(&s, mu, nu, lw.n, conv);
            (s, kt, ws)
        })
        .collect()
}

#[derive(Clone, Debug, Serialize)]
pub struct HwtRow {
    pub what: String,
    pub expected: String,
    pub got: String,
    pub ok: bool,
}

#[derive(Clone, Debug, Serialize)]
pub struct HwtReport {
    pub rows: Vec<HwtRow>,
}

impl HwtReport {
    pub fn passed(&self) -> bool {
        self.rows.iter().all(|r| r.ok)
    }
    pub fn ensure(&self) -> Result<(), CharError> {
        match self.rows.iter().find(|r| !r.ok) {
            None => Ok(()),
            Some(r) => Err(CharError::EigenvalueMismatch { what: r.what.clone(), expected: r.expected.clone(), got: r.got.clone() }),
        }
    }
}

/// Constant term of `∏_j K_j^{m_j}(ζ)` at `ζ = 0` on the lowest weight vector.
pub fn k_product_at_zero(h: &dyn Module, m: &[i64]) -> Result<FieldElem, CharError> {
    let v = h.lowest();
    let mut acc = FieldElem::one();
    for (j, &e) in m.iter().enumerate() {
        if e != 0 {
            let z = h.k_eigen(j, &v)?.value_at_zero().map_err(RepError::from)?;
            acc = &acc * &z.pow(e as i32).map_err(RepError::from)?;
        }
    }
    Ok(acc)
}

/// Eigenvalues of `K_{β_i}` and `K_δ` on the lowest weight vector of `G_{μ,ν}`.
pub fn hwt_check(g: &dyn Module, mu: &Partition, nu: &Partition, k: usize, n: usize, level: Monomial) -> Result<HwtReport, CharError> {
    let lw = lambda_weight(mu, nu, k, n)?;
    let mc = mu.conjugate();
    let nc = nu.conjugate();
    let mut rows = Vec::new();
    for (i, b) in lw.betas.iter().enumerate() {
        let i1 = i as i64 + 1;
        let e = mc.get(i1 + 1) as i64 - mc.get(i1) as i64 + nc.get(i1) as i64 - nc.get(i1 + 1) as i64;
        let want = Monomial::q().pow(e as i32);
        let got = k_product_at_zero(g, &b.alpha)?;
        rows.push(HwtRow { what: format!("K_beta_{i1}"), expected: want.to_string(), got: got.to_string(), ok: got == FieldElem::mono(want) });
    }
    let want = level.inv();
    let got = k_product_at_zero(g, &vec![1; n])?;
    rows.push(HwtRow { what: "K_delta".into(), expected: want.to_string(), got: got.to_string(), ok: got == FieldElem::mono(want) });
    Ok(HwtReport { rows })
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn pochhammer_is_partition_count() {
        let p = PowerSeries::pochhammer_inv(1, 10);
        let want = [1, 1, 2, 3, 5, 7, 11, 15, 22, 30, 42];
        assert_eq!(p, PowerSeries::from_counts(&want));
    }

    #[test]
    fn macmahon_counts_plane_partitions() {
        let want = [1, 1, 3, 6, 13, 24, 48, 86, 160];
        assert_eq!(PowerSeries::macmahon(8), PowerSeries::from_counts(&want));
    }

    #[test]
    fn identity_term() {
        let e = Partition::empty();
        assert_eq!(weyl_exponent(&Permutation::identity(3), &e, &e, 3, Convention::Primary), 0);
    }
}

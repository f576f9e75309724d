//! Affine root lattice of type A, colorless partitions of bounded width and the weights of G-modules.

use std::collections::{BTreeMap, BTreeSet, VecDeque};

use serde::{Deserialize, Serialize};
use thiserror::Error;

use crate::field::Monomial;
use crate::partitions::{is_colorless, partitions_of, Partition};

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum RootError {
    #[error("partition {0} violates the width bound")]
    WidthViolation(Partition),
    #[error("partition {0} is not colorless")]
    NotColorless(Partition),
    #[error("index {0} is not an ascent of the permutation")]
    NotAnAscent(usize),
    #[error("partition {0} is outside the family")]
    OutOfFamily(Partition),
    #[error("reflection property violated for j = {0}")]
    PropertyViolated(usize),
    #[error("invalid pair: {0}")]
    InvalidPair(String),
}

/// `Σ m_i α_i`, indices mod `n`.
#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
pub struct RootVec {
    pub alpha: Vec<i64>,
}

impl RootVec {
    pub fn zero(n: usize) -> Self {
        RootVec { alpha: vec![0; n] }
    }
    pub fn simple(n: usize, i: i64) -> Self {
        let mut r = RootVec::zero(n);
        r.alpha[i.rem_euclid(n as i64) as usize] = 1;
        r
    }
    pub fn delta(n: usize) -> Self {
        RootVec { alpha: vec![1; n] }
    }
    pub fn n(&self) -> usize {
        self.alpha.len()
    }
    /// `α_a + α_{a+1} + … + α_b`, indices mod `n`.
    pub fn segment(n: usize, a: i64, b: i64) -> Self {
        let mut r = RootVec::zero(n);
        let mut t = a;
        while t <= b {
            r.alpha[t.rem_euclid(n as i64) as usize] += 1;
            t += 1;
        }
        r
    }
    pub fn add(&self, o: &RootVec) -> RootVec {
        RootVec { alpha: self.alpha.iter().zip(&o.alpha).map(|(a, b)| a + b).collect() }
    }
    pub fn scale(&self, c: i64) -> RootVec {
        RootVec { alpha: self.alpha.iter().map(|a| a * c).collect() }
    }
    pub fn sub(&self, o: &RootVec) -> RootVec {
        self.add(&o.scale(-1))
    }
    /// `(β, β')` for the affine Cartan matrix.
    pub fn pairing(&self, o: &RootVec) -> i64 {
        let n = self.n();
        let mut s = 0;
        for i in 0..n {
            for j in 0..n {
                s += self.alpha[i] * cartan_affine(n, i, j) * o.alpha[j];
            }
        }
        s
    }
    /// `(β, ρ)`.
    pub fn height(&self) -> i64 {
        self.alpha.iter().sum()
    }
    /// `r_{α_i}(β) = β - (β, α_i) α_i`.
    pub fn reflect_simple(&self, i: usize) -> RootVec {
        let n = self.n();
        let a = RootVec::simple(n, i as i64);
        self.sub(&a.scale(self.pairing(&a)))
    }
}

fn cartan_affine(n: usize, i: usize, j: usize) -> i64 {
    if i == j {
        2
    } else if (i + 1) % n == j || (j + 1) % n == i {
        -1
    } else {
        0
    }
}

/// `a_{ij}` of the finite Cartan matrix, `1 ≤ i, j ≤ n-1`.
pub fn cartan_finite(i: usize, j: usize) -> i64 {
    if i == j {
        2
    } else if i.abs_diff(j) == 1 {
        -1
    } else {
        0
    }
}

/// Images of `1..=n`, stored 1-based.
#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
pub struct Permutation {
    pub images: Vec<usize>,
}

impl Permutation {
    pub fn identity(n: usize) -> Self {
        Permutation { images: (1..=n).collect() }
    }
    pub fn n(&self) -> usize {
        self.images.len()
    }
    pub fn apply(&self, i: usize) -> usize {
        self.images[i - 1]
    }
    pub fn inverse(&self) -> Permutation {
        let mut inv = vec![0; self.n()];
        for (i, &v) in self.images.iter().enumerate() {
            inv[v - 1] = i + 1;
        }
        Permutation { images: inv }
    }
    /// `self ∘ o`.
    pub fn compose(&self, o: &Permutation) -> Permutation {
        Permutation { images: o.images.iter().map(|&i| self.apply(i)).collect() }
    }
    /// Simple transposition `s_i = (i, i+1)`.
    pub fn simple(n: usize, i: usize) -> Permutation {
        let mut p = Permutation::identity(n);
        p.images.swap(i - 1, i);
        p
    }
    pub fn length(&self) -> usize {
        let v = &self.images;
        let mut c = 0;
        for i in 0..v.len() {
            for j in i + 1..v.len() {
                if v[i] > v[j] {
                    c += 1;
                }
            }
        }
        c
    }
    pub fn is_bijection(&self) -> bool {
        let s: BTreeSet<usize> = self.images.iter().copied().collect();
        s.len() == self.n() && s.iter().all(|&v| v >= 1 && v <= self.n())
    }
}

/// All permutations of `1..=n` with a reduced word each, by breadth-first search on left multiplication.
pub fn reduced_words(n: usize) -> Vec<(Permutation, Vec<usize>)> {
    let id = Permutation::identity(n);
    let mut seen: BTreeMap<Permutation, Vec<usize>> = BTreeMap::new();
    seen.insert(id.clone(), Vec::new());
    let mut queue = VecDeque::from([id]);
    let mut out = Vec::new();
    while let Some(w) = queue.pop_front() {
        let word = seen[&w].clone();
        out.push((w.clone(), word.clone()));
        for i in 1..n {
            let w2 = Permutation::simple(n, i).compose(&w);
            if !seen.contains_key(&w2) {
                let mut wd = vec![i];
                wd.extend(&word);
                seen.insert(w2.clone(), wd);
                queue.push_back(w2);
            }
        }
    }
    out
}

/// `ν'_i` for `i ≥ 1`.
fn colp(nu: &Partition, i: i64) -> i64 {
    nu.conjugate().get(i) as i64
}

/// `β_i^{(k)}(ν) = α_{ν'_{i+1}+k-i} + … + α_{ν'_i+k-i}` for `i = 1..n-1`.
pub fn beta_roots(nu: &Partition, n: usize, k: usize) -> Vec<RootVec> {
    let c = nu.conjugate();
    (1..n as i64)
        .map(|i| {
            let a = c.get(i + 1) as i64 + k as i64 - i;
            let b = c.get(i) as i64 + k as i64 - i;
            RootVec::segment(n, a, b)
        })
        .collect()
}

/// Membership in `P^{(n)}_0`: colorless, `ν_1 ≤ n`, `ν'_n < n`.
pub fn check_family(nu: &Partition, n: usize) -> Result<(), RootError> {
    if nu.get(1) > n || colp(nu, n as i64) >= n as i64 {
        return Err(RootError::WidthViolation(nu.clone()));
    }
    if !is_colorless(nu, n) {
        return Err(RootError::NotColorless(nu.clone()));
    }
    Ok(())
}

/// `σ_ν(n-m+1) ≡ ν'_m + 1 - m`, valued in `1..=n`.
pub fn sigma_perm(nu: &Partition, n: usize) -> Result<Permutation, RootError> {
    check_family(nu, n)?;
    let mut images = vec![0; n];
    for m in 1..=n as i64 {
        let v = (colp(nu, m) + 1 - m - 1).rem_euclid(n as i64) + 1;
        images[n - m as usize] = v as usize;
    }
    Ok(Permutation { images })
}

pub fn is_minimal(nu: &Partition, n: usize) -> bool {
    let c = nu.conjugate();
    (1..n as i64).all(|i| (c.get(i) as i64) < c.get(i + 1) as i64 + n as i64 - 1)
}

/// All members of `P^{(n)}_0` with at most `max_size` boxes.
pub fn family(n: usize, max_size: usize) -> Vec<Partition> {
    (0..=max_size).flat_map(partitions_of).filter(|p| check_family(p, n).is_ok()).collect()
}

/// The minimal partition `ν^{(i)}` with `σ_{ν^{(i)}} = s_i ∘ σ_ν`.
pub fn orbit_step(nu: &Partition, n: usize, i: usize) -> Result<Partition, RootError> {
    let sigma = sigma_perm(nu, n)?;
    if i == 0 || i >= n {
        return Err(RootError::NotAnAscent(i));
    }
    let inv = sigma.inverse();
    let mi = inv.apply(i);
    let mj = inv.apply(i + 1);
    if mi >= mj {
        return Err(RootError::NotAnAscent(i));
    }
    let c = nu.conjugate();
    let mut cols: Vec<i64> = (1..=n as i64).map(|t| c.get(t) as i64).collect();
    let col = n - mi + 1;
    let col2 = n - mj + 1;
    if mj == mi + 1 {
        cols[col - 1] += 1;
        cols[col - 2] += n as i64 - 1;
        for t in 1..col - 1 {
            cols[t - 1] += n as i64;
        }
    } else {
        cols[col - 1] += 1;
        cols[col2 - 1] -= 1;
    }
    if cols.windows(2).any(|w| w[0] < w[1]) || cols.iter().any(|&x| x < 0) {
        return Err(RootError::OutOfFamily(nu.clone()));
    }
    let conj = Partition::new(&cols).map_err(|_| RootError::OutOfFamily(nu.clone()))?;
    Ok(conj.conjugate())
}

/// Which alternative of the reflection property holds for `β_j`.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub enum ReflectionOutcome {
    Reflected,
    ReflectedPlusDelta,
}

pub fn ribeta_check(nu: &Partition, n: usize, i: usize) -> Result<Vec<ReflectionOutcome>, RootError> {
    let nu2 = orbit_step(nu, n, i)?;
    let b1 = beta_roots(nu, n, 0);
    let b2 = beta_roots(&nu2, n, 0);
    let delta = RootVec::delta(n);
    let mut out = Vec::new();
    for j in 0..n - 1 {
        let r = b1[j].reflect_simple(i % n);
        if b2[j] == r {
            out.push(ReflectionOutcome::Reflected);
        } else if b2[j] == r.add(&delta) {
            out.push(ReflectionOutcome::ReflectedPlusDelta);
        } else {
            return Err(RootError::PropertyViolated(j + 1));
        }
    }
    Ok(out)
}

/// All `n!` minimal partitions, reached from `∅` by ascent steps.
pub fn minimal_orbit(n: usize) -> Result<BTreeMap<Permutation, Partition>, RootError> {
    let mut seen = BTreeMap::new();
    let start = Partition::empty();
    seen.insert(sigma_perm(&start, n)?, start.clone());
    let mut queue = VecDeque::from([start]);
    while let Some(nu) = queue.pop_front() {
        let s = sigma_perm(&nu, n)?;
        let inv = s.inverse();
        for i in 1..n {
            if inv.apply(i) < inv.apply(i + 1) {
                let nu2 = orbit_step(&nu, n, i)?;
                let s2 = sigma_perm(&nu2, n)?;
                if !seen.contains_key(&s2) {
                    seen.insert(s2, nu2.clone());
                    queue.push_back(nu2);
                }
            }
        }
    }
    Ok(seen)
}

/// Split `β(ν)` into minimal roots plus multiples of `δ`.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct BetaDecomposition {
    pub minimal: Vec<RootVec>,
    pub shifts: Vec<i64>,
}

pub fn beta_map_decompose(nu: &Partition, n: usize) -> Result<BetaDecomposition, RootError> {
    check_family(nu, n).map_err(|_| RootError::OutOfFamily(nu.clone()))?;
    let c = nu.conjugate();
    let delta = RootVec::delta(n);
    let mut minimal = Vec::new();
    let mut shifts = Vec::new();
    for (j, b) in beta_roots(nu, n, 0).into_iter().enumerate() {
        let len = c.get(j as i64 + 1) as i64 - c.get(j as i64 + 2) as i64 + 1;
        if len % n as i64 == 0 {
            return Err(RootError::OutOfFamily(nu.clone()));
        }
        let m = len / n as i64;
        minimal.push(b.sub(&delta.scale(m)));
        shifts.push(m);
    }
    Ok(BetaDecomposition { minimal, shifts })
}

/// Inverse of [`beta_map_decompose`]: recover `ν` from `β(ν)`.
pub fn beta_reconstruct(betas: &[RootVec], n: usize) -> Option<Partition> {
    let heights: Vec<i64> = betas.iter().map(|b| b.height()).collect();
    let last = betas.last()?;
    // start index of β_{n-1} is ν'_n - (n-1)
    let start = segment_start(last)?;
    let nun = (start + n as i64 - 1).rem_euclid(n as i64);
    let mut cols = vec![0i64; n];
    cols[n - 1] = nun;
    for j in (0..n - 1).rev() {
        cols[j] = cols[j + 1] + heights[j] - 1;
    }
    let p = Partition::new(&cols).ok()?.conjugate();
    (beta_roots(&p, n, 0) == betas).then_some(p)
}

fn segment_start(b: &RootVec) -> Option<i64> {
    let n = b.n() as i64;
    let h = b.height();
    (0..n).find(|&a| RootVec::segment(b.n(), a, a + h - 1) == *b)
}

/// Integer data of `λ^{(k)}(μ, ν)`.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct LambdaWeight {
    pub n: usize,
    pub k: usize,
    /// `(λ+ρ, β_i)`.
    pub beta_pairings: Vec<i64>,
    /// `(ρ, β_i)`.
    pub rho_pairings: Vec<i64>,
    pub betas: Vec<RootVec>,
    pub level_monomial: Monomial,
}

pub fn lambda_weight(mu: &Partition, nu: &Partition, k: usize, n: usize) -> Result<LambdaWeight, RootError> {
    if mu.get(1) >= n || nu.get(1) >= n {
        return Err(RootError::InvalidPair(format!("widths of {mu} and {nu} must be below {n}")));
    }
    if !is_colorless(nu, n) {
        return Err(RootError::NotColorless(nu.clone()));
    }
    let mc = mu.conjugate();
    let nc = nu.conjugate();
    let beta_pairings = (1..n as i64).map(|i| mc.get(i) as i64 - mc.get(i + 1) as i64 + 1).collect();
    let rho_pairings = (1..n as i64).map(|i| nc.get(i) as i64 - nc.get(i + 1) as i64 + 1).collect();
    let level = Monomial::q1().pow(n as i32).sqrt().unwrap_or(Monomial::new(0, -(n as i32), n as i32, 0));
    Ok(LambdaWeight {
        n,
        k,
        beta_pairings,
        rho_pairings,
        betas: beta_roots(nu, n, k),
        level_monomial: level,
    })
}

/// `λ+ρ - w(λ+ρ)` for `w` given as a word `s_{i_1} … s_{i_l}` mapped to reflections in the `β`s.
pub fn kt_shift(lw: &LambdaWeight, word: &[usize]) -> RootVec {
    let mut d = RootVec::zero(lw.n);
    for &j in word.iter().rev() {
        let b = &lw.betas[j - 1];
        let c = lw.beta_pairings[j - 1] - d.pairing(b);
        d = d.add(&b.scale(c));
    }
    d
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn beta_of_empty() {
        for n in 3..6 {
            let b = beta_roots(&Partition::empty(), n, 0);
            for i in 1..n {
                assert_eq!(b[i - 1], RootVec::simple(n, (n - i) as i64));
            }
        }
    }

    #[test]
    fn minimal_count() {
        assert_eq!(minimal_orbit(3).unwrap().len(), 6);
        assert_eq!(minimal_orbit(4).unwrap().len(), 24);
    }

    #[test]
    fn lambda_weight_example() {
        let lw = lambda_weight(&Partition::parse("2,1,1").unwrap(), &Partition::parse("2,2,2").unwrap(), 0, 3).unwrap();
        assert_eq!(lw.beta_pairings, vec![3, 2]);
        assert_eq!(lw.level_monomial, Monomial::new(0, -3, 3, 0));
    }

    #[test]
    fn single_reflection_shift() {
        let lw = lambda_weight(&Partition::parse("2,1").unwrap(), &Partition::parse("2,1").unwrap(), 1, 3).unwrap();
        for i in 1..3 {
            let d = kt_shift(&lw, &[i]);
            assert_eq!(d.height(), lw.beta_pairings[i - 1] * lw.rho_pairings[i - 1]);
        }
    }
}

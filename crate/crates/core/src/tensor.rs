//! Tensor products through the comultiplication, wedge truncations and resonance classification.

use std::sync::Arc;

use crate::coeff::Coeff;
use crate::field::Monomial;
use crate::fock::FockModule;
use crate::partitions::{partitions_of, ColorContext, Partition};
use crate::rep::{BasisLabel, DeltaTerm, Module, ModuleHandle, RepError, RepResult};
use crate::vector::VectorRep;
use crate::zeta::ZetaFunction;

pub type Admissible = Arc<dyn Fn(&[BasisLabel]) -> bool + Send + Sync>;
pub type Enumerator = Arc<dyn Fn(i64) -> Vec<Vec<BasisLabel>> + Send + Sync>;

/// Value of a product of eigenvalues at `zeta = z0`, or the pole it hits.
pub fn eval_product(fs: &[&ZetaFunction], z0: Monomial) -> RepResult<Option<Coeff>> {
    let mut c = Coeff::one();
    let mut order = 0;
    for f in fs {
        let (v, o) = f.eval_coeff(z0)?;
        c = c.mul(&v);
        order += o;
    }
    match order {
        0 => Ok(Some(c)),
        o if o > 0 => Ok(Some(Coeff::zero())),
        _ => Ok(None),
    }
}

/// A coproduct term before projection: `None` marks a pole.
#[derive(Clone, Debug)]
pub struct RawTerm {
    pub slot: usize,
    pub target: Vec<BasisLabel>,
    pub coeff: Option<Coeff>,
    pub support: Monomial,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Gen {
    E,
    F,
}

/// Subspace of `V_1 ⊗ … ⊗ V_m` cut out by an admissibility predicate.
pub struct TensorModule {
    pub factors: Vec<ModuleHandle>,
    admissible: Admissible,
    enumerate: Enumerator,
    lowest: Vec<BasisLabel>,
    name: String,
    probes: Option<Arc<dyn Fn(usize) -> Vec<BasisLabel> + Send + Sync>>,
}

fn tuple(v: &BasisLabel) -> RepResult<&[BasisLabel]> {
    match v {
        BasisLabel::TensorTuple(ts) => Ok(ts),
        _ => Err(RepError::ForeignLabel(v.to_string())),
    }
}

impl TensorModule {
    pub fn new(factors: Vec<ModuleHandle>, admissible: Admissible, enumerate: Enumerator, lowest: Vec<BasisLabel>, name: String) -> Self {
        TensorModule { factors, admissible, enumerate, lowest, name, probes: None }
    }

    pub fn with_probes(mut self, p: Arc<dyn Fn(usize) -> Vec<BasisLabel> + Send + Sync>) -> Self {
        self.probes = Some(p);
        self
    }

    pub fn is_admissible(&self, ls: &[BasisLabel]) -> bool {
        (self.admissible)(ls)
    }

    /// All coproduct terms of `E_i` or `F_i` on a tuple, with poles and zeros kept.
    pub fn raw_terms(&self, g: Gen, i: usize, ls: &[BasisLabel]) -> RepResult<Vec<RawTerm>> {
        let eig: Vec<ZetaFunction> = self.factors.iter().zip(ls).map(|(f, l)| f.k_eigen(i, l)).collect::<RepResult<_>>()?;
        let mut out = Vec::new();
        for (s, (f, l)) in self.factors.iter().zip(ls).enumerate() {
            let terms = match g {
                Gen::E => f.e_action(i, l)?,
                Gen::F => f.f_action(i, l)?,
            };
            for t in terms {
                let z0 = t.support.strip_u().inv();
                let others: Vec<&ZetaFunction> = match g {
                    Gen::E => eig[..s].iter().collect(),
                    Gen::F => eig[s + 1..].iter().collect(),
                };
                let c = eval_product(&others, z0)?.map(|c| c.mul(&t.coeff));
                let mut target = ls.to_vec();
                target[s] = t.target;
                out.push(RawTerm { slot: s, target, coeff: c, support: t.support });
            }
        }
        Ok(out)
    }

    fn project(&self, g: Gen, i: usize, v: &BasisLabel) -> RepResult<Vec<DeltaTerm>> {
        let ls = tuple(v)?;
        let gname = format!("{}{i}", if g == Gen::E { "E" } else { "F" });
        let mut out = Vec::new();
        for t in self.raw_terms(g, i, ls)? {
            let Some(c) = t.coeff else {
                return Err(RepError::IllDefined { generator: gname, label: v.to_string(), support: t.support, factor: t.slot });
            };
            if c.is_zero() {
                continue;
            }
            if !self.is_admissible(&t.target) {
                return Err(RepError::EscapesSubmodule {
                    generator: gname,
                    label: v.to_string(),
                    target: BasisLabel::TensorTuple(t.target).to_string(),
                });
            }
            out.push(DeltaTerm { target: BasisLabel::TensorTuple(t.target), coeff: c, support: t.support });
        }
        Ok(out)
    }
}

impl Module for TensorModule {
    fn ctx(&self) -> ColorContext {
        self.factors[0].ctx()
    }
    fn name(&self) -> String {
        self.name.clone()
    }
    fn e_action(&self, i: usize, v: &BasisLabel) -> RepResult<Vec<DeltaTerm>> {
        self.project(Gen::E, i, v)
    }
    fn f_action(&self, i: usize, v: &BasisLabel) -> RepResult<Vec<DeltaTerm>> {
        self.project(Gen::F, i, v)
    }
    fn k_eigen(&self, i: usize, v: &BasisLabel) -> RepResult<ZetaFunction> {
        let ls = tuple(v)?;
        let mut z = ZetaFunction::one();
        for (f, l) in self.factors.iter().zip(ls) {
            z = z.mul(&f.k_eigen(i, l)?);
        }
        Ok(z)
    }
    fn degree(&self, v: &BasisLabel) -> Vec<i64> {
        let ls = tuple(v).expect("tensor label");
        let n = self.ctx().n;
        let mut d = vec![0; n];
        for ((f, l), l0) in self.factors.iter().zip(ls).zip(&self.lowest) {
            for (c, (a, b)) in f.degree(l).into_iter().zip(f.degree(l0)).enumerate() {
                d[c] += a - b;
            }
        }
        d
    }
    fn lowest(&self) -> BasisLabel {
        BasisLabel::TensorTuple(self.lowest.clone())
    }
    fn basis_by_degree(&self, d: i64) -> Vec<BasisLabel> {
        (self.enumerate)(d).into_iter().map(BasisLabel::TensorTuple).collect()
    }
    fn labels_up_to(&self, max: usize) -> Vec<BasisLabel> {
        match &self.probes {
            Some(p) => p(max),
            None => (0..=max as i64).flat_map(|d| self.basis_by_degree(d)).collect(),
        }
    }
}

/// Pairs `[i] ⊗ [j]` of `V^{(k)}(u) ⊗ V^{(l)}(u·ratio)`; probes cover `-max-1 <= i, j <= max-1`.
pub fn vector_pair(n: usize, k: usize, l: usize, ratio: Monomial) -> RepResult<TensorModule> {
    let c1 = ctx(n, k)?;
    let c2 = ctx(n, l)?;
    let v1: ModuleHandle = Arc::new(VectorRep::new(c1, Monomial::ONE));
    let v2: ModuleHandle = Arc::new(VectorRep::new(c2, ratio));
    let f1 = VectorRep::new(c1, Monomial::ONE);
    let f2 = VectorRep::new(c2, ratio);
    let enumerate: Enumerator = Arc::new(move |d| {
        // degree of [i] ⊗ [j] is |deg [i]| + |deg [j]| = (i + 1) + (j + 1)
        let w = d.abs() + 2;
        (-w..=w)
            .map(|i| {
                let j = d - 2 - i;
                vec![BasisLabel::VectorIndex(i), BasisLabel::VectorIndex(j)]
            })
            .filter(|p| {
                let (BasisLabel::VectorIndex(i), BasisLabel::VectorIndex(j)) = (&p[0], &p[1]) else { unreachable!() };
                f1.deg(*i).iter().sum::<i64>() + f2.deg(*j).iter().sum::<i64>() == d
            })
            .collect()
    });
    let probes = Arc::new(|max: usize| {
        let m = max as i64;
        let mut out = Vec::new();
        for i in -m - 1..m {
            for j in -m - 1..m {
                out.push(BasisLabel::TensorTuple(vec![BasisLabel::VectorIndex(i), BasisLabel::VectorIndex(j)]));
            }
        }
        out
    });
    let lowest = vec![BasisLabel::VectorIndex(-1), BasisLabel::VectorIndex(-1)];
    let name = format!("V^({k})(u) x V^({l})(u*{ratio}), n={n}");
    Ok(TensorModule::new(vec![v1, v2], Arc::new(|_| true), enumerate, lowest, name).with_probes(probes))
}

fn ctx(n: usize, k: usize) -> RepResult<ColorContext> {
    ColorContext::new(n, k as i64).map_err(|e| RepError::Invalid(e.to_string()))
}

/// `W_r^{(k)} ⊂ V^{(k)}(u) ⊗ V^{(k)}(u q2^{-1}) ⊗ … ⊗ V^{(k)}(u q2^{-r+1})`, labels `λ_s - s`.
pub fn wedge(n: usize, k: usize, r: usize) -> RepResult<TensorModule> {
    let c = ctx(n, k)?;
    let factors: Vec<ModuleHandle> =
        (0..r).map(|s| Arc::new(VectorRep::new(c, Monomial::q2().pow(-(s as i32)))) as ModuleHandle).collect();
    let admissible: Admissible = Arc::new(|ls| {
        ls.windows(2).all(|w| match (&w[0], &w[1]) {
            (BasisLabel::VectorIndex(a), BasisLabel::VectorIndex(b)) => a > b,
            _ => false,
        })
    });
    let enumerate: Enumerator = Arc::new(move |d| {
        if d < 0 {
            return vec![];
        }
        partitions_of(d as usize).into_iter().filter(|p| p.len() <= r).map(|p| wedge_label(&p, r)).collect()
    });
    let lowest = wedge_label(&Partition::empty(), r);
    Ok(TensorModule::new(factors, admissible, enumerate, lowest, format!("W_{r}^({k}), n={n}")))
}

pub fn wedge_label(p: &Partition, r: usize) -> Vec<BasisLabel> {
    (1..=r).map(|s| BasisLabel::VectorIndex(p.get(s as i64) as i64 - s as i64)).collect()
}

/// Partition encoded by a wedge label, if all entries are non-negative.
pub fn wedge_partition(ls: &[BasisLabel]) -> Option<Partition> {
    let mut parts = Vec::new();
    for (s, l) in ls.iter().enumerate() {
        let BasisLabel::VectorIndex(j) = l else { return None };
        let v = j + s as i64 + 1;
        if v < 0 {
            return None;
        }
        parts.push(v as usize);
    }
    Partition::new(&parts.iter().map(|&x| x as i64).collect::<Vec<_>>()).ok()
}

/// Compare the closed Fock formulas with the coproduct action in wedges.
/// `E` is compared in `W_r`; `F_i` and `K_i` in the smallest `W_{r'}`, `r' >= r`, with `r' + 1 ≡ i - k`.
pub fn fock_vs_wedge(n: usize, k: usize, r: usize, max_degree: usize) -> RepResult<Vec<String>> {
    let c = ctx(n, k)?;
    let fock = FockModule::new(c, Monomial::ONE);
    let mut bad = Vec::new();
    let w = wedge(n, k, r)?;
    let wr: Vec<TensorModule> = (0..n)
        .map(|i| {
            let mut rr = r;
            while c.modn(rr as i64 + 1 - i as i64 + k as i64) != 0 {
                rr += 1;
            }
            wedge(n, k, rr)
        })
        .collect::<RepResult<_>>()?;
    let as_young = |ts: Vec<DeltaTerm>| -> Vec<(Partition, Coeff, Monomial)> {
        let mut v: Vec<_> = ts
            .into_iter()
            .filter_map(|t| match t.target {
                BasisLabel::TensorTuple(ls) => wedge_partition(&ls).map(|p| (p, t.coeff, t.support)),
                BasisLabel::YoungDiagram(p) => Some((p, t.coeff, t.support)),
                _ => None,
            })
            .collect();
        v.sort();
        v
    };
    for d in 0..=max_degree {
        for lam in partitions_of(d) {
            for i in 0..n {
                let fe = as_young(fock.e(i, &lam)?);
                let we = as_young(w.e_action(i, &BasisLabel::TensorTuple(wedge_label(&lam, r)))?);
                if fe != we {
                    bad.push(format!("E{i} on {lam}: fock {fe:?} wedge {we:?}"));
                }
                let wi = &wr[i];
                let lab = BasisLabel::TensorTuple(wedge_label(&lam, wi.factors.len()));
                let ff = as_young(fock.f(i, &lam)?);
                let wf = as_young(wi.f_action(i, &lab)?);
                if ff != wf {
                    bad.push(format!("F{i} on {lam}: fock {ff:?} wedge {wf:?}"));
                }
                let fk = fock.k_row(i, &lam);
                let wk = wi.k_eigen(i, &lab)?;
                if fk != wk {
                    bad.push(format!("K{i} on {lam}: fock {fk} wedge {wk}"));
                }
                let lw = fock.deg(&lam);
                let dw = wi.degree(&lab);
                if lw != dw {
                    bad.push(format!("degree of {lam}: fock {lw:?} wedge {dw:?}"));
                }
            }
        }
    }
    Ok(bad)
}

/// Outcome of `V^{(k)}(u) ⊗ V^{(l)}(v)` at a given ratio `v/u`.
#[derive(Clone, Copy, Debug, PartialEq, Eq, serde::Serialize)]
pub enum VectorResonance {
    IllDefined { m: i64 },
    /// Submodule `i >= j + nm + k - l + shift`.
    Submodule { m: i64, shift: i64 },
    Irreducible,
}

/// Write `x = q1^e` if possible.
fn q1_power(x: Monomial) -> Option<i64> {
    if x.u != 0 || x.k2 != 0 || x.q2 != -x.d2 || x.d2 % 2 != 0 {
        return None;
    }
    Some(x.d2 as i64 / 2)
}

pub fn classify_vector_pair(n: usize, k: usize, l: usize, ratio: Monomial) -> VectorResonance {
    let n = n as i64;
    let base = k as i64 - l as i64;
    let lattice = |x: Monomial| q1_power(x).filter(|e| (e - base).rem_euclid(n) == 0).map(|e| (e - base) / n);
    if let Some(m) = lattice(ratio) {
        return VectorResonance::IllDefined { m };
    }
    if let Some(m) = lattice(ratio / Monomial::q2()) {
        return VectorResonance::Submodule { m, shift: 0 };
    }
    if let Some(m) = lattice(ratio * Monomial::q2()) {
        return VectorResonance::Submodule { m, shift: 1 };
    }
    VectorResonance::Irreducible
}

/// What the coproduct does on a window of pair labels.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum BruteOutcome {
    IllDefined,
    HasVanishing,
    Generic,
}

/// Scan all `E`/`F` coproduct terms on `[i] ⊗ [j]` with `i + 1, j + 1 ∈ [-w, w]`.
pub fn brute_force_vector_pair(n: usize, k: usize, l: usize, ratio: Monomial, w: i64) -> RepResult<BruteOutcome> {
    let t = vector_pair(n, k, l, ratio)?;
    let mut vanishing = false;
    for i in -w - 1..w {
        for j in -w - 1..w {
            let ls = [BasisLabel::VectorIndex(i), BasisLabel::VectorIndex(j)];
            for g in [Gen::E, Gen::F] {
                for a in 0..n {
                    for term in t.raw_terms(g, a, &ls)? {
                        match term.coeff {
                            None => return Ok(BruteOutcome::IllDefined),
                            Some(c) if c.is_zero() => vanishing = true,
                            _ => {}
                        }
                    }
                }
            }
        }
    }
    Ok(if vanishing { BruteOutcome::HasVanishing } else { BruteOutcome::Generic })
}

/// Outcome of `F^{(k)}(u) ⊗ F^{(l)}(v)`.
#[derive(Clone, Copy, Debug, PartialEq, Eq, serde::Serialize)]
pub enum FockResonance {
    /// Resonant with `a, b >= 0`: submodule `λ_i >= μ_{i+b} - a`.
    Submodule { a: i64, b: i64 },
    /// Resonant with `a, b <= 0`.
    Quotient { a: i64, b: i64 },
    /// Resonant with `ab < 0`.
    AnalyticContinuation { a: i64, b: i64 },
    Irreducible,
}

/// Solve `v/u = q2^{b+1} q1^{b-a}` with `b - a ≡ k - l`.
pub fn classify_fock_pair(n: usize, k: usize, l: usize, ratio: Monomial) -> FockResonance {
    if ratio.u != 0 || ratio.k2 != 0 {
        return FockResonance::Irreducible;
    }
    // q2^{b+1} q1^{c}: q-exponent 4(b+1) - 2c, d-exponent 2c
    if ratio.d2 % 2 != 0 {
        return FockResonance::Irreducible;
    }
    let c = ratio.d2 as i64 / 2;
    let rest = ratio.q2 as i64 + 2 * c;
    if rest % 4 != 0 {
        return FockResonance::Irreducible;
    }
    let b = rest / 4 - 1;
    let a = b - c;
    if (c - (k as i64 - l as i64)).rem_euclid(n as i64) != 0 {
        return FockResonance::Irreducible;
    }
    if a >= 0 && b >= 0 {
        FockResonance::Submodule { a, b }
    } else if a <= 0 && b <= 0 {
        FockResonance::Quotient { a, b }
    } else {
        FockResonance::AnalyticContinuation { a, b }
    }
}

/// `F^{(k)}(u) ⊗ F^{(l)}(u q2^{b+1} q1^{b-a})` restricted to `λ_i >= μ_{i+b} - a`.
pub fn fock_pair_submodule(n: usize, k: usize, l: usize, a: i64, b: i64) -> RepResult<TensorModule> {
    if a < 0 || b < 0 {
        return Err(RepError::AnalyticContinuation);
    }
    if (b - a - (k as i64 - l as i64)).rem_euclid(n as i64) != 0 {
        return Err(RepError::Invalid(format!("b - a = {} is not congruent to k - l", b - a)));
    }
    let ratio = Monomial::q2().pow(b as i32 + 1) * Monomial::q1().pow((b - a) as i32);
    let c1 = ctx(n, k)?;
    let c2 = ctx(n, l)?;
    let f1: ModuleHandle = Arc::new(FockModule::new(c1, Monomial::ONE));
    let f2: ModuleHandle = Arc::new(FockModule::new(c2, ratio));
    let (au, bu) = (a as usize, b as usize);
    let ok = move |lam: &Partition, mu: &Partition| interlaced(lam, mu, au, bu);
    let admissible: Admissible = Arc::new(move |ls| match (&ls[0], &ls[1]) {
        (BasisLabel::YoungDiagram(x), BasisLabel::YoungDiagram(y)) => ok(x, y),
        _ => false,
    });
    let low_mu = Partition::empty();
    let low = vec![BasisLabel::YoungDiagram(Partition::empty()), BasisLabel::YoungDiagram(low_mu)];
    let enumerate: Enumerator = Arc::new(move |d| {
        let mut out = Vec::new();
        if d < 0 {
            return out;
        }
        for e in 0..=d as usize {
            for lam in partitions_of(e) {
                for mu in partitions_of(d as usize - e) {
                    if interlaced(&lam, &mu, au, bu) {
                        out.push(vec![BasisLabel::YoungDiagram(lam.clone()), BasisLabel::YoungDiagram(mu)]);
                    }
                }
            }
        }
        out
    });
    let name = format!("F^({k})(u) x F^({l})(u*{ratio}) [a={a}, b={b}], n={n}");
    Ok(TensorModule::new(vec![f1, f2], admissible, enumerate, low, name))
}

/// `λ_j >= μ_{j+b} - a` for all `j`.
pub fn interlaced(lam: &Partition, mu: &Partition, a: usize, b: usize) -> bool {
    (1..=mu.len() as i64).all(|j| lam.get(j) as i64 >= mu.get(j + b as i64) as i64 - a as i64)
}

/// Full `F^{(k)}(u) ⊗ F^{(l)}(u·ratio)` with every pair of partitions admissible.
pub fn fock_pair(n: usize, k: usize, l: usize, ratio: Monomial) -> RepResult<TensorModule> {
    let f1: ModuleHandle = Arc::new(FockModule::new(ctx(n, k)?, Monomial::ONE));
    let f2: ModuleHandle = Arc::new(FockModule::new(ctx(n, l)?, ratio));
    let enumerate: Enumerator = Arc::new(move |d| {
        let mut out = Vec::new();
        for e in 0..=d.max(0) as usize {
            for lam in partitions_of(e) {
                for mu in partitions_of(d as usize - e) {
                    out.push(vec![BasisLabel::YoungDiagram(lam.clone()), BasisLabel::YoungDiagram(mu)]);
                }
            }
        }
        out
    });
    let low = vec![BasisLabel::YoungDiagram(Partition::empty()), BasisLabel::YoungDiagram(Partition::empty())];
    Ok(TensorModule::new(vec![f1, f2], Arc::new(|_| true), enumerate, low, format!("F^({k})(u) x F^({l})(u*{ratio}), n={n}")))
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn classify_examples() {
        assert_eq!(classify_vector_pair(3, 0, 0, Monomial::q1().pow(3)), VectorResonance::IllDefined { m: 1 });
        assert_eq!(classify_vector_pair(3, 1, 0, Monomial::q2() * Monomial::q1()), VectorResonance::Submodule { m: 0, shift: 0 });
        assert_eq!(classify_vector_pair(3, 0, 0, Monomial::q()), VectorResonance::Irreducible);
        assert_eq!(classify_fock_pair(3, 0, 0, Monomial::q2()), FockResonance::Submodule { a: 0, b: 0 });
        assert_eq!(classify_fock_pair(3, 0, 0, Monomial::q2() * Monomial::q1().pow(-3)), FockResonance::Submodule { a: 3, b: 0 });
        assert_eq!(classify_fock_pair(3, 0, 0, Monomial::ONE), FockResonance::Quotient { a: -1, b: -1 });
    }

    #[test]
    fn wedge_labels_round_trip() {
        let p = Partition::parse("3,1").unwrap();
        assert_eq!(wedge_partition(&wedge_label(&p, 4)), Some(p));
    }
}

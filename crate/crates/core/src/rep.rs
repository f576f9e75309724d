//! Module framework: basis labels, delta-supported actions, the relation checker, levels and twists.

use std::collections::{BTreeMap, HashMap};
use std::fmt;
use std::sync::{Arc, RwLock};

use rayon::prelude::*;
use serde::{Deserialize, Serialize};
use thiserror::Error;

use crate::coeff::Coeff;
use crate::field::{FieldElem, FieldError, Monomial};
use crate::partitions::{ColorContext, Partition};
use crate::zeta::{ZetaError, ZetaFunction};

#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
pub enum BasisLabel {
    VectorIndex(i64),
    YoungDiagram(Partition),
    LayerSequence(Vec<Partition>),
    TensorTuple(Vec<BasisLabel>),
}

impl fmt::Display for BasisLabel {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            BasisLabel::VectorIndex(j) => write!(f, "[{j}]"),
            BasisLabel::YoungDiagram(p) => write!(f, "{p}"),
            BasisLabel::LayerSequence(ls) => {
                let s: Vec<String> = ls.iter().map(|p| p.to_string()).collect();
                write!(f, "<{}>", s.join("|"))
            }
            BasisLabel::TensorTuple(ts) => {
                let s: Vec<String> = ts.iter().map(|p| p.to_string()).collect();
                write!(f, "{}", s.join("x"))
            }
        }
    }
}

/// One summand `coeff * delta(support/z) * target`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct DeltaTerm {
    pub target: BasisLabel,
    pub coeff: Coeff,
    pub support: Monomial,
}

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum RepError {
    #[error("action of {generator} on {label} is ill-defined: pole at support {support} from factor {factor}")]
    IllDefined { generator: String, label: String, support: Monomial, factor: usize },
    #[error("action of {generator} on {label} leaves the submodule at {target}")]
    EscapesSubmodule { generator: String, label: String, target: String },
    #[error("partition {0} is not colorless")]
    NotColorless(Partition),
    #[error("box ({0},{1},{2}) is not special")]
    NotSpecial(i64, i64, i64),
    #[error("box ({0},{1},{2}) does not have color k")]
    WrongColor(i64, i64, i64),
    #[error("K specialization is not admissible: {0}")]
    BadK(String),
    #[error("K value {0} is not generic")]
    NonGenericK(Monomial),
    #[error("chain condition violated: {0}")]
    BadChain(String),
    #[error("label {0} does not belong to the module")]
    ForeignLabel(String),
    #[error("invalid input: {0}")]
    Invalid(String),
    #[error("level is not constant: {0} vs {1}")]
    Inconsistent(String, String),
    #[error("the ab<0 resonance case requires analytic continuation")]
    AnalyticContinuation,
    #[error(transparent)]
    Field(#[from] FieldError),
    #[error(transparent)]
    Zeta(#[from] ZetaError),
}

pub type RepResult<T> = Result<T, RepError>;

/// A weighted representation given by its action providers.
pub trait Module: Send + Sync {
    fn ctx(&self) -> ColorContext;
    fn name(&self) -> String;
    fn e_action(&self, i: usize, v: &BasisLabel) -> RepResult<Vec<DeltaTerm>>;
    fn f_action(&self, i: usize, v: &BasisLabel) -> RepResult<Vec<DeltaTerm>>;
    fn k_eigen(&self, i: usize, v: &BasisLabel) -> RepResult<ZetaFunction>;
    /// `Z^n`-degree relative to the lowest weight vector.
    fn degree(&self, v: &BasisLabel) -> Vec<i64>;
    fn lowest(&self) -> BasisLabel;
    /// Basis vectors of total degree `d`.
    fn basis_by_degree(&self, d: i64) -> Vec<BasisLabel>;
    /// Labels used as probes by the checker.
    fn labels_up_to(&self, max: usize) -> Vec<BasisLabel> {
        (0..=max as i64).flat_map(|d| self.basis_by_degree(d)).collect()
    }
}

pub type ModuleHandle = Arc<dyn Module>;

pub fn total_degree(deg: &[i64]) -> i64 {
    deg.iter().sum()
}

pub fn unit_degree(n: usize, i: usize, sign: i64) -> Vec<i64> {
    let mut v = vec![0; n];
    v[i] = sign;
    v
}

/// `a_{ij}` of the affine Cartan matrix.
pub fn a_ij(n: usize, i: usize, j: usize) -> i32 {
    if i == j {
        2
    } else if (i + 1) % n == j || (j + 1) % n == i {
        -1
    } else {
        0
    }
}

/// `m_{ij}`: `-1` for `j = i+1`, `+1` for `j = i-1`, `0` otherwise.
pub fn m_ij(n: usize, i: usize, j: usize) -> i32 {
    if (i + 1) % n == j {
        -1
    } else if (j + 1) % n == i {
        1
    } else {
        0
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
enum Op {
    E,
    F,
}

type ActionKey = (Op, usize, BasisLabel);

/// Memoizing wrapper; answers are identical to the wrapped module.
pub struct Cached {
    inner: ModuleHandle,
    actions: RwLock<HashMap<ActionKey, RepResult<Vec<DeltaTerm>>>>,
    eigen: RwLock<HashMap<(usize, BasisLabel), RepResult<ZetaFunction>>>,
}

impl Cached {
    pub fn new(inner: ModuleHandle) -> Self {
        Cached { inner, actions: RwLock::new(HashMap::new()), eigen: RwLock::new(HashMap::new()) }
    }
    fn act(&self, op: Op, i: usize, v: &BasisLabel) -> RepResult<Vec<DeltaTerm>> {
        let key = (op, i, v.clone());
        if let Some(r) = self.actions.read().unwrap().get(&key) {
            return r.clone();
        }
        let r = match op {
            Op::E => self.inner.e_action(i, v),
            Op::F => self.inner.f_action(i, v),
        };
        self.actions.write().unwrap().insert(key, r.clone());
        r
    }
}

impl Module for Cached {
    fn ctx(&self) -> ColorContext {
        self.inner.ctx()
    }
    fn name(&self) -> String {
        self.inner.name()
    }
    fn e_action(&self, i: usize, v: &BasisLabel) -> RepResult<Vec<DeltaTerm>> {
        self.act(Op::E, i, v)
    }
    fn f_action(&self, i: usize, v: &BasisLabel) -> RepResult<Vec<DeltaTerm>> {
        self.act(Op::F, i, v)
    }
    fn k_eigen(&self, i: usize, v: &BasisLabel) -> RepResult<ZetaFunction> {
        let key = (i, v.clone());
        if let Some(r) = self.eigen.read().unwrap().get(&key) {
            return r.clone();
        }
        let r = self.inner.k_eigen(i, v);
        self.eigen.write().unwrap().insert(key, r.clone());
        r
    }
    fn degree(&self, v: &BasisLabel) -> Vec<i64> {
        self.inner.degree(v)
    }
    fn lowest(&self) -> BasisLabel {
        self.inner.lowest()
    }
    fn basis_by_degree(&self, d: i64) -> Vec<BasisLabel> {
        self.inner.basis_by_degree(d)
    }
    fn labels_up_to(&self, max: usize) -> Vec<BasisLabel> {
        self.inner.labels_up_to(max)
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct Failure {
    pub relation: String,
    pub label: String,
    pub detail: String,
}

#[derive(Clone, Debug, Default, PartialEq, Eq, Serialize, Deserialize)]
pub struct RelationReport {
    pub module: String,
    pub labels_checked: usize,
    /// Number of individual identities verified, per relation family.
    pub checks: BTreeMap<String, usize>,
    pub failures: Vec<Failure>,
    pub ill_defined: Vec<Failure>,
}

impl RelationReport {
    pub fn passed(&self) -> bool {
        self.failures.is_empty() && self.ill_defined.is_empty()
    }
    fn merge(&mut self, o: RelationReport) {
        self.labels_checked += o.labels_checked;
        for (k, v) in o.checks {
            *self.checks.entry(k).or_insert(0) += v;
        }
        self.failures.extend(o.failures);
        self.ill_defined.extend(o.ill_defined);
    }
    fn count(&mut self, rel: &str) {
        *self.checks.entry(rel.to_string()).or_insert(0) += 1;
    }
    fn fail(&mut self, rel: &str, v: &BasisLabel, detail: String) {
        self.failures.push(Failure { relation: rel.to_string(), label: v.to_string(), detail });
    }
    pub fn to_json(&self) -> serde_json::Value {
        serde_json::to_value(self).expect("serializable report")
    }
}

/// `a - b zeta` as a zeta function.
fn lin(a: Monomial, b: Monomial) -> ZetaFunction {
    ZetaFunction::linear(b / a, 1).scale(&FieldElem::mono(a))
}

fn q_minus_qinv() -> Coeff {
    Coeff::binomial(Monomial::q(), Monomial::q().inv())
}

type PathKey = (BasisLabel, Vec<Monomial>);

struct Checker<'a> {
    h: &'a dyn Module,
    n: usize,
}

impl<'a> Checker<'a> {
    fn act(&self, op: Op, i: usize, v: &BasisLabel) -> RepResult<Vec<DeltaTerm>> {
        match op {
            Op::E => self.h.e_action(i, v),
            Op::F => self.h.f_action(i, v),
        }
    }

    /// All paths applying `ops` left to right (first applied first).
    fn paths(&self, ops: &[(Op, usize)], v: &BasisLabel) -> RepResult<Vec<(BasisLabel, Vec<Monomial>, Coeff)>> {
        let mut cur = vec![(v.clone(), Vec::new(), Coeff::one())];
        for (op, i) in ops {
            let mut next = Vec::new();
            for (t, sups, c) in cur {
                for term in self.act(*op, *i, &t)? {
                    let mut s = sups.clone();
                    s.push(term.support);
                    next.push((term.target, s, c.mul(&term.coeff)));
                }
            }
            cur = next;
        }
        Ok(cur)
    }

    fn grading(&self, v: &BasisLabel, rep: &mut RelationReport) -> RepResult<()> {
        let dv = self.h.degree(v);
        for i in 0..self.n {
            for (op, sign) in [(Op::E, 1), (Op::F, -1)] {
                for t in self.act(op, i, v)? {
                    let dt = self.h.degree(&t.target);
                    let want: Vec<i64> = dv.iter().zip(unit_degree(self.n, i, sign)).map(|(a, b)| a + b).collect();
                    rep.count("grading");
                    if dt != want {
                        rep.fail("grading", v, format!("{:?}{} -> {} has degree {:?}, expected {:?}", op, i, t.target, dt, want));
                    }
                    if t.coeff.is_zero() {
                        rep.fail("grading", v, format!("zero coefficient term {:?}{} -> {}", op, i, t.target));
                    }
                    if t.support.u != 1 {
                        rep.fail("grading", v, format!("support {} is not u times a monomial", t.support));
                    }
                }
            }
        }
        Ok(())
    }

    fn k_vs_ef(&self, v: &BasisLabel, rep: &mut RelationReport) -> RepResult<()> {
        let mut phi_cache: HashMap<(usize, BasisLabel), ZetaFunction> = HashMap::new();
        let mut phi = |i: usize, x: &BasisLabel| -> RepResult<ZetaFunction> {
            if let Some(z) = phi_cache.get(&(i, x.clone())) {
                return Ok(z.clone());
            }
            let z = self.h.k_eigen(i, x)?;
            phi_cache.insert((i, x.clone()), z.clone());
            Ok(z)
        };
        for j in 0..self.n {
            for (op, rel) in [(Op::E, "K-E"), (Op::F, "K-F")] {
                for t in self.act(op, j, v)? {
                    let sigma = t.support.strip_u();
                    for i in 0..self.n {
                        let dm = Monomial::d().pow(m_ij(self.n, i, j));
                        let qa = Monomial::q().pow(a_ij(self.n, i, j));
                        let (lt, lv) = match op {
                            Op::E => (lin(dm, qa * sigma), lin(dm * qa, sigma)),
                            Op::F => (lin(dm * qa, sigma), lin(dm, qa * sigma)),
                        };
                        let lhs = lt.mul(&phi(i, &t.target)?);
                        let rhs = lv.mul(&phi(i, v)?);
                        rep.count(rel);
                        if lhs != rhs {
                            rep.fail(rel, v, format!("K{i} vs {:?}{j} at support {} -> {}: {} != {}", op, t.support, t.target, lhs, rhs));
                        }
                    }
                }
            }
        }
        Ok(())
    }

    fn collect(
        &self,
        acc: &mut BTreeMap<PathKey, Vec<Coeff>>,
        ops: &[(Op, usize)],
        v: &BasisLabel,
        key: impl Fn(&[Monomial]) -> Vec<Monomial>,
        weight: impl Fn(&[Monomial]) -> Coeff,
    ) -> RepResult<()> {
        for (t, sups, c) in self.paths(ops, v)? {
            let w = weight(&sups);
            acc.entry((t, key(&sups))).or_default().push(c.mul(&w));
        }
        Ok(())
    }

    fn settle(acc: BTreeMap<PathKey, Vec<Coeff>>, rel: &str, v: &BasisLabel, rep: &mut RelationReport) {
        for ((t, sups), cs) in acc {
            rep.count(rel);
            if !Coeff::sum_is_zero(&cs) {
                let s: Vec<String> = sups.iter().map(|m| m.to_string()).collect();
                rep.fail(rel, v, format!("target {t}, supports [{}]: sum {}", s.join(", "), Coeff::sum(&cs)));
            }
        }
    }

    fn quadratic(&self, v: &BasisLabel, rep: &mut RelationReport) -> RepResult<()> {
        let n = self.n;
        for (op, rel) in [(Op::E, "E-E"), (Op::F, "F-F")] {
            for i in 0..n {
                for j in 0..n {
                    let a = a_ij(n, i, j);
                    let a = if op == Op::E { a } else { -a };
                    let dm = Monomial::d().pow(m_ij(n, i, j));
                    let qa = Monomial::q().pow(a);
                    let mut acc = BTreeMap::new();
                    // X_i(z) X_j(w): X_j first (s2), then X_i (s1); weight d^m s1 - q^a s2
                    self.collect(&mut acc, &[(op, j), (op, i)], v, |s| vec![s[1], s[0]], |s| {
                        Coeff::binomial(dm * s[1], qa * s[0])
                    })?;
                    // X_j(w) X_i(z): X_i first (s1), then X_j (s2); weight d^m q^a s1 - s2
                    self.collect(&mut acc, &[(op, i), (op, j)], v, |s| vec![s[0], s[1]], |s| {
                        Coeff::binomial(dm * qa * s[0], s[1]).neg()
                    })?;
                    Self::settle(acc, rel, v, rep);
                    if n >= 4 && i != j && a_ij(n, i, j) == 0 {
                        let rel2 = if op == Op::E { "E-E commute" } else { "F-F commute" };
                        let mut acc = BTreeMap::new();
                        self.collect(&mut acc, &[(op, j), (op, i)], v, |s| vec![s[1], s[0]], |_| Coeff::one())?;
                        self.collect(&mut acc, &[(op, i), (op, j)], v, |s| vec![s[0], s[1]], |_| Coeff::one().neg())?;
                        Self::settle(acc, rel2, v, rep);
                    }
                }
            }
        }
        Ok(())
    }

    fn serre(&self, v: &BasisLabel, rep: &mut RelationReport) -> RepResult<()> {
        let n = self.n;
        // q + q^{-1} = q (1 - q^{-4}) / (1 - q^{-2})
        let qq = Coeff::mono(Monomial::q())
            .mul(&Coeff::one_minus(Monomial::q2().pow(-2), 1)?)
            .mul(&Coeff::one_minus(Monomial::q2().inv(), -1)?);
        for (op, rel) in [(Op::E, "Serre E"), (Op::F, "Serre F")] {
            for i in 0..n {
                for j in [(i + 1) % n, (i + n - 1) % n] {
                    let mut acc = BTreeMap::new();
                    let sorted = |a: Monomial, b: Monomial, w: Monomial| {
                        let (x, y) = if a <= b { (a, b) } else { (b, a) };
                        vec![x, y, w]
                    };
                    // X_i(z1) X_i(z2) X_j(w): applied j, i, i
                    self.collect(&mut acc, &[(op, j), (op, i), (op, i)], v, |s| sorted(s[1], s[2], s[0]), |_| Coeff::one())?;
                    // X_i(z1) X_j(w) X_i(z2): applied i, j, i
                    let qn = qq.neg();
                    self.collect(&mut acc, &[(op, i), (op, j), (op, i)], v, |s| sorted(s[0], s[2], s[1]), |_| qn.clone())?;
                    // X_j(w) X_i(z1) X_i(z2): applied i, i, j
                    self.collect(&mut acc, &[(op, i), (op, i), (op, j)], v, |s| sorted(s[0], s[1], s[2]), |_| Coeff::one())?;
                    Self::settle(acc, rel, v, rep);
                }
            }
        }
        Ok(())
    }

    /// `R(s)` for the diagonal part of `[E_i, F_i]` on `v`, after checking off-diagonal cancellation.
    fn commutator_diag(&self, i: usize, j: usize, v: &BasisLabel, rep: &mut RelationReport) -> RepResult<BTreeMap<Monomial, Vec<Coeff>>> {
        let mut acc: BTreeMap<PathKey, Vec<Coeff>> = BTreeMap::new();
        // E_i(z) F_j(w): F first (s_w), then E (s_z)
        self.collect(&mut acc, &[(Op::F, j), (Op::E, i)], v, |s| vec![s[1], s[0]], |_| Coeff::one())?;
        // F_j(w) E_i(z): E first (s_z), then F (s_w)
        self.collect(&mut acc, &[(Op::E, i), (Op::F, j)], v, |s| vec![s[0], s[1]], |_| Coeff::one().neg())?;
        let mut diag: BTreeMap<Monomial, Vec<Coeff>> = BTreeMap::new();
        let mut off = BTreeMap::new();
        for ((t, s), cs) in acc {
            if i == j && &t == v && s[0] == s[1] {
                diag.insert(s[0], cs);
            } else {
                off.insert((t, s), cs);
            }
        }
        Self::settle(off, "[E,F] off-diagonal", v, rep);
        Ok(diag)
    }

    fn commutator(&self, v: &BasisLabel, rep: &mut RelationReport) -> RepResult<()> {
        let n = self.n;
        let qd = q_minus_qinv();
        for i in 0..n {
            for j in 0..n {
                let diag = self.commutator_diag(i, j, v, rep)?;
                if i != j {
                    continue;
                }
                let phi = self.h.k_eigen(i, v)?;
                let mut poles: BTreeMap<Monomial, Coeff> = BTreeMap::new();
                for (mp, r) in phi.pole_residues()? {
                    poles.insert((Monomial::u() * mp).strip_u(), r);
                }
                let mut sups: Vec<Monomial> = diag.keys().map(|s| s.strip_u()).collect();
                sups.extend(poles.keys().copied());
                sups.sort();
                sups.dedup();
                for s in sups {
                    let mut terms: Vec<Coeff> =
                        diag.get(&(Monomial::u() * s)).map(|cs| cs.iter().map(|c| c.mul(&qd)).collect()).unwrap_or_default();
                    if let Some(r) = poles.get(&s) {
                        terms.push(r.neg());
                    }
                    rep.count("[E,F] diagonal");
                    if !Coeff::sum_is_zero(&terms) {
                        rep.fail("[E,F] diagonal", v, format!("E{i}F{i} at support u*{s}: (q-1/q) R - r = {}", Coeff::sum(&terms)));
                    }
                }
            }
        }
        Ok(())
    }
}

/// Verify the defining relations exactly on each probe label.
pub fn check_relations_on(h: &dyn Module, labels: &[BasisLabel]) -> RelationReport {
    let n = h.ctx().n;
    let parts: Vec<RelationReport> = labels
        .par_iter()
        .map(|v| {
            let ck = Checker { h, n };
            let mut rep = RelationReport { labels_checked: 1, ..Default::default() };
            let res = (|| -> RepResult<()> {
                ck.grading(v, &mut rep)?;
                ck.k_vs_ef(v, &mut rep)?;
                ck.quadratic(v, &mut rep)?;
                ck.serre(v, &mut rep)?;
                ck.commutator(v, &mut rep)?;
                Ok(())
            })();
            if let Err(e) = res {
                rep.ill_defined.push(Failure { relation: "action".into(), label: v.to_string(), detail: e.to_string() });
            }
            rep
        })
        .collect();
    let mut out = RelationReport { module: h.name(), ..Default::default() };
    for p in parts {
        out.merge(p);
    }
    out.failures.sort_by(|a, b| (&a.relation, &a.label, &a.detail).cmp(&(&b.relation, &b.label, &b.detail)));
    out.ill_defined.sort_by(|a, b| (&a.label, &a.detail).cmp(&(&b.label, &b.detail)));
    out
}

/// Verify the defining relations on all labels of degree at most `max_degree`.
pub fn check_relations(h: &ModuleHandle, max_degree: usize) -> RelationReport {
    let cached = Cached::new(h.clone());
    let labels = h.labels_up_to(max_degree);
    check_relations_on(&cached, &labels)
}

/// Cross-check of the diagonal `[E_i, F_i]` relation by comparing modes `zeta^N`, `|N| <= window`,
/// of `(q - q^{-1}) sum_s R(s) delta(s/z)` with the two expansions of the eigenvalue.
pub fn mode_window_check(h: &dyn Module, v: &BasisLabel, window: i32) -> RepResult<Vec<String>> {
    let n = h.ctx().n;
    let ck = Checker { h, n };
    let mut scratch = RelationReport::default();
    let mut bad = Vec::new();
    for i in 0..n {
        let diag = ck.commutator_diag(i, i, v, &mut scratch)?;
        let phi = h.k_eigen(i, v)?;
        for nn in -window..=window {
            let mut lhs = FieldElem::zero();
            for (s, cs) in &diag {
                let sigma = s.strip_u();
                let r = Coeff::sum(cs);
                lhs = &lhs + &(&r * &FieldElem::mono(sigma.pow(nn)));
            }
            lhs = &lhs * &q_minus_qinv().to_field();
            let rhs = &phi.coeff_zero(nn)? - &phi.coeff_infinity(nn)?;
            if lhs != rhs {
                bad.push(format!("E{i}F{i} mode {nn} on {v}: {lhs} != {rhs}"));
            }
        }
    }
    bad.extend(scratch.failures.into_iter().map(|f| f.detail));
    Ok(bad)
}

/// Graded dimensions by `Z^n`-degree and by total degree.
pub fn graded_character(h: &dyn Module, max_degree: usize) -> (BTreeMap<Vec<i64>, usize>, Vec<usize>) {
    let mut by_deg = BTreeMap::new();
    let mut total = Vec::new();
    for d in 0..=max_degree as i64 {
        let b = h.basis_by_degree(d);
        total.push(b.len());
        for v in b {
            *by_deg.entry(h.degree(&v)).or_insert(0) += 1;
        }
    }
    (by_deg, total)
}

/// `prod_i K_i^{-1}` on a probe label, as a monomial.
pub fn level_at(h: &dyn Module, v: &BasisLabel) -> RepResult<Monomial> {
    let mut prod = FieldElem::one();
    for i in 0..h.ctx().n {
        prod = &prod * &h.k_eigen(i, v)?.value_at_zero()?;
    }
    let inv = prod.inv()?;
    match inv.as_monomial() {
        Some((1, m)) => Ok(m),
        _ => Err(RepError::Invalid(format!("level {inv} is not a monomial"))),
    }
}

/// The level, verified to be the same on all labels of degree at most 2.
pub fn level_of(h: &dyn Module) -> RepResult<Monomial> {
    let probes = h.labels_up_to(2);
    let first = level_at(h, &h.lowest())?;
    for v in probes {
        let l = level_at(h, &v)?;
        if l != first {
            return Err(RepError::Inconsistent(first.to_string(), l.to_string()));
        }
    }
    Ok(first)
}

/// A vector is singular when every `F_i` annihilates it.
pub fn singular_check(h: &dyn Module, v: &BasisLabel) -> RepResult<bool> {
    for i in 0..h.ctx().n {
        if !h.f_action(i, v)?.is_empty() {
            return Ok(false);
        }
    }
    Ok(true)
}

/// Distinct labels of equal `Z^n`-degree must have distinct eigenvalue tuples.
pub fn tameness_witness(h: &dyn Module, max_degree: usize) -> RepResult<Vec<(String, String)>> {
    let n = h.ctx().n;
    let mut clashes = Vec::new();
    let mut seen: BTreeMap<Vec<i64>, Vec<(BasisLabel, Vec<ZetaFunction>)>> = BTreeMap::new();
    for v in h.labels_up_to(max_degree) {
        let eig: Vec<ZetaFunction> = (0..n).map(|i| h.k_eigen(i, &v)).collect::<RepResult<_>>()?;
        let slot = seen.entry(h.degree(&v)).or_default();
        for (w, e) in slot.iter() {
            if *e == eig {
                clashes.push((w.to_string(), v.to_string()));
            }
        }
        slot.push((v, eig));
    }
    Ok(clashes)
}

/// `phi(0) * phi(infinity)` for each `i` on the lowest weight vector.
pub fn lowest_weight_products(h: &dyn Module) -> RepResult<Vec<FieldElem>> {
    let v = h.lowest();
    (0..h.ctx().n)
        .map(|i| {
            let z = h.k_eigen(i, &v)?;
            Ok(&z.value_at_zero()? * &z.value_at_infinity()?)
        })
        .collect()
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Twist {
    /// `X_i -> X_{i+1}`.
    Tau,
    /// `X_i(z) -> X_i(az)`, realized by scaling supports by `a`.
    Shift(Monomial),
    /// `X_i -> X_{n-i}` together with `d -> 1/d`.
    Iota,
    /// `E_i <-> F_i` together with `q -> 1/q`.
    Omega,
}

pub struct Twisted {
    base: ModuleHandle,
    twist: Twist,
}

pub fn twist(h: ModuleHandle, t: Twist) -> ModuleHandle {
    Arc::new(Twisted { base: h, twist: t })
}

impl Twisted {
    fn index(&self, i: usize) -> usize {
        let n = self.base.ctx().n;
        match self.twist {
            Twist::Tau => (i + 1) % n,
            Twist::Iota => (n - i) % n,
            _ => i,
        }
    }
    fn mono(&self, m: Monomial) -> Monomial {
        match self.twist {
            Twist::Iota => m.substitute(1, -1),
            Twist::Omega => m.substitute(-1, 1),
            _ => m,
        }
    }
    fn map_terms(&self, ts: Vec<DeltaTerm>) -> Vec<DeltaTerm> {
        ts.into_iter()
            .map(|t| match self.twist {
                Twist::Shift(a) => DeltaTerm { support: t.support * a.strip_u(), ..t },
                _ => DeltaTerm { target: t.target, coeff: t.coeff.map(|m| self.mono(m)), support: self.mono(t.support) },
            })
            .collect()
    }
}

impl Module for Twisted {
    fn ctx(&self) -> ColorContext {
        let c = self.base.ctx();
        match self.twist {
            Twist::Tau => ColorContext { n: c.n, k: (c.k + c.n - 1) % c.n },
            Twist::Iota => ColorContext { n: c.n, k: (c.n - c.k) % c.n },
            _ => c,
        }
    }
    fn name(&self) -> String {
        format!("{:?}({})", self.twist, self.base.name())
    }
    fn e_action(&self, i: usize, v: &BasisLabel) -> RepResult<Vec<DeltaTerm>> {
        let i = self.index(i);
        let ts = if self.twist == Twist::Omega { self.base.f_action(i, v)? } else { self.base.e_action(i, v)? };
        Ok(self.map_terms(ts))
    }
    fn f_action(&self, i: usize, v: &BasisLabel) -> RepResult<Vec<DeltaTerm>> {
        let i = self.index(i);
        let ts = if self.twist == Twist::Omega { self.base.e_action(i, v)? } else { self.base.f_action(i, v)? };
        Ok(self.map_terms(ts))
    }
    fn k_eigen(&self, i: usize, v: &BasisLabel) -> RepResult<ZetaFunction> {
        let z = self.base.k_eigen(self.index(i), v)?;
        Ok(match self.twist {
            Twist::Shift(a) => z.rescale(a),
            Twist::Iota => z.map(|m| m.substitute(1, -1), |c| c.substitute(1, -1)),
            Twist::Omega => z.map(|m| m.substitute(-1, 1), |c| c.substitute(-1, 1)),
            Twist::Tau => z,
        })
    }
    fn degree(&self, v: &BasisLabel) -> Vec<i64> {
        let d = self.base.degree(v);
        let n = d.len();
        (0..n)
            .map(|i| match self.twist {
                Twist::Omega => -d[i],
                _ => d[self.index(i)],
            })
            .collect()
    }
    fn lowest(&self) -> BasisLabel {
        self.base.lowest()
    }
    fn basis_by_degree(&self, d: i64) -> Vec<BasisLabel> {
        if self.twist == Twist::Omega {
            self.base.basis_by_degree(-d)
        } else {
            self.base.basis_by_degree(d)
        }
    }
    fn labels_up_to(&self, max: usize) -> Vec<BasisLabel> {
        self.base.labels_up_to(max)
    }
}

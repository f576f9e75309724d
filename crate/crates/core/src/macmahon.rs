//! Modules on plane partitions: `N_{α,β}`, vacuum, γ- and general Macmahon modules,
//! special-K quotients `H` and the modules `G_{μ,ν}`.

use crate::field::{FieldElem, Monomial};
use crate::fock::FockModule;
use crate::partitions::{colored_corners, is_colorless, ColorContext, Partition};
use crate::plane::{first_trivial_index, is_special, lowest_layers, Box3, PlanePartition};
use crate::rep::{BasisLabel, DeltaTerm, Module, RepError, RepResult};
use crate::tensor::eval_product;
use crate::zeta::ZetaFunction;

/// Specialization of the parameter `K`.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum KSpec {
    Symbolic,
    Value(Monomial),
}

impl KSpec {
    pub fn monomial(&self) -> Monomial {
        match self {
            KSpec::Symbolic => Monomial::k(),
            KSpec::Value(m) => *m,
        }
    }
}

/// `K ∈ q1^Z q2^Z`.
pub fn is_non_generic(k: Monomial) -> bool {
    if k.k2 != 0 || k.u != 0 {
        return false;
    }
    // q1 = (-2, 2), q2 = (4, 0) in doubled exponents
    k.d2 % 2 == 0 && (k.q2 + k.d2) % 4 == 0
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum MacmahonKind {
    Vacuum,
    Gamma(Partition),
    General { alpha: Partition, beta: Partition, gamma: Partition },
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct MacmahonDescriptor {
    pub kind: MacmahonKind,
    pub n: usize,
    pub k: usize,
    pub kspec: KSpec,
}

impl MacmahonDescriptor {
    pub fn asymptotics(&self) -> (Partition, Partition, Partition) {
        match &self.kind {
            MacmahonKind::Vacuum => (Partition::empty(), Partition::empty(), Partition::empty()),
            MacmahonKind::Gamma(g) => (Partition::empty(), Partition::empty(), g.clone()),
            MacmahonKind::General { alpha, beta, gamma } => (alpha.clone(), beta.clone(), gamma.clone()),
        }
    }

    pub fn build(&self) -> RepResult<Layered> {
        let (a, b, g) = self.asymptotics();
        match self.kind {
            MacmahonKind::General { .. } => general_macmahon(&a, &b, &g, self.k, self.n, self.kspec),
            _ => gamma_macmahon(self.k, self.n, self.kspec, &g),
        }
    }
}

/// `γ`-Macmahon module appended after the Fock prefix.
#[derive(Clone, Debug)]
struct Tail {
    ctx: ColorContext,
    anchor: Monomial,
    level: Monomial,
    gamma: Partition,
    /// `Λ_i(ζ)` for every color.
    lambda: Vec<ZetaFunction>,
}

impl Tail {
    fn new(ctx: ColorContext, anchor: Monomial, level: Monomial, gamma: Partition) -> Self {
        let c3 = |x: i64, y: i64| Monomial::q3().pow(x as i32 - 1) * Monomial::q1().pow(y as i32 - 1);
        let lambda = (0..ctx.n)
            .map(|i| {
                let c = colored_corners(&gamma, ctx, i);
                let mut z = ZetaFunction::one();
                let mut sq = Monomial::q2().pow(c.convex.len() as i32);
                for &(x, y) in &c.convex {
                    z = z.mul(&ZetaFunction::linear(Monomial::q2().inv() * c3(x, y) * anchor, 1));
                    sq = sq / c3(x, y);
                }
                for &(x, y) in &c.concave {
                    z = z.mul(&ZetaFunction::linear(c3(x, y) * anchor, -1));
                    sq = sq * c3(x, y);
                }
                let mut cst = sq.sqrt().expect("corner product is a square");
                if i == ctx.k {
                    z = z.mul(&ZetaFunction::linear(level * level * anchor, 1));
                    cst = cst * level.inv();
                }
                z.scale(&FieldElem::mono(cst))
            })
            .collect();
        Tail { ctx, anchor, level, gamma, lambda }
    }

    fn fock(&self, t: usize) -> FockModule {
        FockModule::new(self.ctx, self.anchor * Monomial::q2().pow(t as i32))
    }
}

/// Module on layer sequences: `m` Fock factors followed by an optional `γ`-Macmahon tail.
#[derive(Clone, Debug)]
pub struct Layered {
    ctx: ColorContext,
    alpha: Partition,
    beta: Partition,
    gamma: Partition,
    prefix: Vec<FockModule>,
    shifts: Vec<(usize, usize)>,
    low: Vec<Partition>,
    tail: Option<Tail>,
    /// `(keep, drop)`: labels must contain `keep` and must not contain `drop`.
    quotient: Option<(Option<Box3>, Box3)>,
    /// Extra slots inspected past the stored layers.
    pub extra: usize,
    name: String,
}

fn layers(v: &BasisLabel) -> RepResult<&[Partition]> {
    match v {
        BasisLabel::LayerSequence(ls) => Ok(ls),
        _ => Err(RepError::ForeignLabel(v.to_string())),
    }
}

/// Partitions `λ ⊇ lb` with `|λ| = size`.
fn containing(lb: &Partition, size: usize) -> Vec<Partition> {
    fn rec(j: usize, maxv: usize, rem: usize, lb: &Partition, cur: &mut Vec<usize>, out: &mut Vec<Partition>) {
        let need: usize = (j..=lb.len()).map(|r| lb.get(r as i64)).sum();
        if rem < need {
            return;
        }
        if rem == 0 {
            out.push(Partition::from_parts(cur.clone()));
            return;
        }
        let lo = lb.get(j as i64).max(1);
        for v in lo..=maxv.min(rem) {
            cur.push(v);
            rec(j + 1, v, rem - v, lb, cur, out);
            cur.pop();
        }
    }
    let mut out = Vec::new();
    if size >= lb.size() {
        rec(1, size, size, lb, &mut Vec::new(), &mut out);
    }
    out
}

fn prefix_data(alpha: &Partition, beta: &Partition, n: usize, k: usize) -> RepResult<(Vec<FockModule>, Vec<(usize, usize)>, Monomial)> {
    let m = first_trivial_index(alpha, beta);
    let ctx = |kk: i64| ColorContext::new(n, kk).map_err(|e| RepError::Invalid(e.to_string()));
    let mut u = Monomial::q1().pow(alpha.get(1) as i32) * Monomial::q3().pow(beta.get(1) as i32);
    let mut kk = k as i64 - alpha.get(1) as i64 + beta.get(1) as i64;
    let mut focks = vec![FockModule::new(ctx(kk)?, u)];
    let mut shifts = Vec::new();
    for s in 1..m {
        let a = alpha.get(s as i64) - alpha.get(s as i64 + 1);
        let b = beta.get(s as i64) - beta.get(s as i64 + 1);
        shifts.push((a, b));
        u = u * Monomial::q2().pow(b as i32 + 1) * Monomial::q1().pow(b as i32 - a as i32);
        kk += a as i64 - b as i64;
        focks.push(FockModule::new(ctx(kk)?, u));
    }
    Ok((focks, shifts, u))
}

impl Layered {
    pub fn ctx(&self) -> ColorContext {
        self.ctx
    }
    pub fn prefix_len(&self) -> usize {
        self.prefix.len()
    }
    pub fn asymptotics(&self) -> (&Partition, &Partition, &Partition) {
        (&self.alpha, &self.beta, &self.gamma)
    }
    /// Anchors `u_s / u` and colors `k_s` of the Fock prefix.
    pub fn prefix_params(&self) -> Vec<(Monomial, usize)> {
        self.prefix.iter().map(|f| (f.anchor, f.ctx.k)).collect()
    }
    pub fn level(&self) -> Monomial {
        let q = Monomial::q().pow(self.prefix.len() as i32);
        match &self.tail {
            Some(t) => q * t.level,
            None => q,
        }
    }

    fn fock(&self, s: usize) -> FockModule {
        let m = self.prefix.len();
        if s < m {
            self.prefix[s]
        } else {
            self.tail.as_ref().expect("tail slot").fock(s - m)
        }
    }

    fn base(&self, s: usize) -> Partition {
        self.low.get(s).cloned().unwrap_or_else(|| self.gamma.clone())
    }

    fn layer(&self, ls: &[Partition], s: usize) -> Partition {
        ls.get(s).cloned().unwrap_or_else(|| self.base(s))
    }

    fn shift(&self, s: usize) -> (usize, usize) {
        self.shifts.get(s).copied().unwrap_or((0, 0))
    }

    /// Number of slots that can be touched by an operator on `ls`.
    fn span(&self, ls: &[Partition]) -> usize {
        if self.tail.is_some() {
            ls.len().max(self.prefix.len()) + self.extra
        } else {
            self.prefix.len()
        }
    }

    fn canonical(&self, mut ls: Vec<Partition>) -> Vec<Partition> {
        let m = self.prefix.len();
        while ls.len() > m && ls.last() == Some(&self.gamma) {
            ls.pop();
        }
        ls
    }

    pub fn plane(&self, ls: &[Partition]) -> PlanePartition {
        PlanePartition { alpha: self.alpha.clone(), beta: self.beta.clone(), gamma: self.gamma.clone(), layers: ls.to_vec() }
    }

    /// Interlacing along the whole chain plus the quotient constraint.
    pub fn is_admissible(&self, ls: &[Partition]) -> bool {
        let m = self.prefix.len();
        if ls.len() < m {
            return false;
        }
        let last = if self.tail.is_some() { ls.len() + 1 } else { m };
        for s in 0..last.saturating_sub(1) {
            let (a, b) = self.shift(s);
            let next = if s + 1 < m || self.tail.is_some() { self.layer(ls, s + 1) } else { Partition::empty() };
            if !self.layer(ls, s).contains(&next.shift(a, b)) {
                return false;
            }
        }
        self.in_quotient(ls)
    }

    fn in_quotient(&self, ls: &[Partition]) -> bool {
        match self.quotient {
            None => true,
            Some((keep, drop)) => {
                let p = self.plane(ls);
                keep.is_none_or(|b| p.contains(b)) && !p.contains(drop)
            }
        }
    }

    fn eig(&self, i: usize, ls: &[Partition], s: usize) -> ZetaFunction {
        self.fock(s).k_corner(i, &self.layer(ls, s))
    }

    /// `Λ_i ∏_{t ≤ T} φ^{(t)}_λ / φ^{(t)}_γ`.
    fn k_tail(&self, i: usize, ls: &[Partition]) -> RepResult<ZetaFunction> {
        let Some(tail) = &self.tail else { return Ok(ZetaFunction::one()) };
        let m = self.prefix.len();
        let mut z = tail.lambda[i].clone();
        for s in m..ls.len() {
            let f = self.fock(s);
            z = z.mul(&f.k_corner(i, &ls[s])).mul(&f.k_corner(i, &tail.gamma).inv()?);
        }
        Ok(z)
    }

    pub fn k_value(&self, i: usize, ls: &[Partition]) -> RepResult<ZetaFunction> {
        let mut z = self.k_tail(i, ls)?;
        for s in 0..self.prefix.len() {
            z = z.mul(&self.eig(i, ls, s));
        }
        Ok(z)
    }

    /// Eigenvalue factors multiplying an `F` term in slot `s`.
    fn f_factors(&self, i: usize, ls: &[Partition], s: usize) -> RepResult<Vec<ZetaFunction>> {
        let m = self.prefix.len();
        let mut out = Vec::new();
        if s < m {
            for r in s + 1..m {
                out.push(self.eig(i, ls, r));
            }
            out.push(self.k_tail(i, ls)?);
        } else {
            let tail = self.tail.as_ref().expect("tail slot");
            out.push(tail.lambda[i].clone());
            for r in s + 1..ls.len() {
                let f = self.fock(r);
                out.push(f.k_corner(i, &ls[r]).mul(&f.k_corner(i, &tail.gamma).inv()?));
            }
            for r in m..=s {
                out.push(self.fock(r).k_corner(i, &tail.gamma).inv()?);
            }
        }
        Ok(out)
    }

    fn act(&self, e: bool, i: usize, v: &BasisLabel) -> RepResult<Vec<DeltaTerm>> {
        let ls = layers(v)?;
        let gname = format!("{}{i}", if e { "E" } else { "F" });
        let mut out = Vec::new();
        for s in 0..self.span(ls) {
            let lam = self.layer(ls, s);
            let f = self.fock(s);
            let terms = if e { f.e(i, &lam)? } else { f.f(i, &lam)? };
            if terms.is_empty() {
                continue;
            }
            let factors = if e { (0..s).map(|r| self.eig(i, ls, r)).collect() } else { self.f_factors(i, ls, s)? };
            let refs: Vec<&ZetaFunction> = factors.iter().collect();
            for t in terms {
                let Some(c) = eval_product(&refs, t.support.strip_u().inv())? else {
                    return Err(RepError::IllDefined { generator: gname, label: v.to_string(), support: t.support, factor: s });
                };
                let c = c.mul(&t.coeff);
                if c.is_zero() {
                    continue;
                }
                let BasisLabel::YoungDiagram(nl) = t.target else { unreachable!() };
                let mut target: Vec<Partition> = (0..ls.len().max(s + 1)).map(|r| self.layer(ls, r)).collect();
                target[s] = nl;
                let target = self.canonical(target);
                if !self.is_admissible(&target) {
                    if e {
                        if let Some((_, drop)) = self.quotient {
                            if self.plane(&target).contains(drop) {
                                continue;
                            }
                        }
                    }
                    return Err(RepError::EscapesSubmodule {
                        generator: gname,
                        label: v.to_string(),
                        target: BasisLabel::LayerSequence(target).to_string(),
                    });
                }
                out.push(DeltaTerm { target: BasisLabel::LayerSequence(target), coeff: c, support: t.support });
            }
        }
        Ok(out)
    }

    /// Color-graded degree relative to the lowest layers.
    pub fn deg(&self, ls: &[Partition]) -> Vec<i64> {
        let mut d = vec![0i64; self.ctx.n];
        for (s, l) in ls.iter().enumerate() {
            let f = self.fock(s);
            let x = f.deg(l);
            let y = f.deg(&self.base(s));
            for c in 0..self.ctx.n {
                d[c] += x[c] - y[c];
            }
        }
        d
    }

    /// All admissible layer sequences with `d` boxes beyond the lowest configuration.
    pub fn enumerate(&self, d: usize) -> Vec<Vec<Partition>> {
        let m = self.prefix.len();
        let tmax = if self.tail.is_some() { d } else { 0 };
        let mut out = Vec::new();
        for t in 0..=tmax {
            let len = m + t;
            let mut cur = vec![Partition::empty(); len];
            self.fill(len, len, d, t > 0, &mut cur, &mut out);
        }
        out.retain(|ls| self.in_quotient(ls));
        out
    }

    fn fill(&self, len: usize, s: usize, rem: usize, strict_last: bool, cur: &mut Vec<Partition>, out: &mut Vec<Vec<Partition>>) {
        if s == 0 {
            if rem == 0 {
                out.push(cur.clone());
            }
            return;
        }
        let s = s - 1;
        let (a, b) = self.shift(s);
        let lb = if s + 1 < len {
            cur[s + 1].shift(a, b)
        } else if self.tail.is_some() {
            self.gamma.shift(a, b)
        } else {
            Partition::empty()
        };
        let base = self.base(s);
        let bsz = base.size();
        let min = lb.size().max(bsz) + usize::from(strict_last && s + 1 == len);
        for size in min..=bsz + rem {
            for lam in containing(&lb, size) {
                if strict_last && s + 1 == len && lam == self.gamma {
                    continue;
                }
                let cost = size - bsz;
                cur[s] = lam;
                self.fill(len, s, rem - cost, strict_last, cur, out);
            }
        }
    }

    pub fn lowest_label(&self) -> Vec<Partition> {
        match self.quotient {
            Some((Some(_), _)) => (0..).find_map(|d| self.enumerate(d).into_iter().next()).expect("nonempty"),
            _ => self.low.clone(),
        }
    }
}

impl Module for Layered {
    fn ctx(&self) -> ColorContext {
        self.ctx
    }
    fn name(&self) -> String {
        self.name.clone()
    }
    fn e_action(&self, i: usize, v: &BasisLabel) -> RepResult<Vec<DeltaTerm>> {
        self.act(true, i, v)
    }
    fn f_action(&self, i: usize, v: &BasisLabel) -> RepResult<Vec<DeltaTerm>> {
        self.act(false, i, v)
    }
    fn k_eigen(&self, i: usize, v: &BasisLabel) -> RepResult<ZetaFunction> {
        self.k_value(i, layers(v)?)
    }
    fn degree(&self, v: &BasisLabel) -> Vec<i64> {
        self.deg(layers(v).expect("layer sequence"))
    }
    fn lowest(&self) -> BasisLabel {
        BasisLabel::LayerSequence(self.lowest_label())
    }
    fn basis_by_degree(&self, d: i64) -> Vec<BasisLabel> {
        if d < 0 {
            return vec![];
        }
        self.enumerate(d as usize).into_iter().map(BasisLabel::LayerSequence).collect()
    }
}

fn check_k(kspec: KSpec) -> RepResult<Monomial> {
    let k = kspec.monomial();
    if is_non_generic(k) {
        return Err(RepError::NonGenericK(k));
    }
    Ok(k)
}

fn ctx_of(n: usize, k: usize) -> RepResult<ColorContext> {
    ColorContext::new(n, k as i64).map_err(|e| RepError::Invalid(e.to_string()))
}

/// `N^{(k)}_{α,β}`: the interlaced part of `F^{(k_1)}(u_1) ⊗ … ⊗ F^{(k_m)}(u_m)`.
pub fn n_module(alpha: &Partition, beta: &Partition, k: usize, n: usize) -> RepResult<Layered> {
    let ctx = ctx_of(n, k)?;
    let (prefix, shifts, _) = prefix_data(alpha, beta, n, k)?;
    let low = lowest_layers(alpha, beta, &Partition::empty());
    Ok(Layered {
        ctx,
        alpha: alpha.clone(),
        beta: beta.clone(),
        gamma: Partition::empty(),
        prefix,
        shifts,
        low,
        tail: None,
        quotient: None,
        extra: 2,
        name: format!("N^({k})_{{{alpha},{beta}}}, n={n}"),
    })
}

fn gamma_unchecked(k: usize, n: usize, kval: Monomial, gamma: &Partition) -> RepResult<Layered> {
    let ctx = ctx_of(n, k)?;
    if !is_colorless(gamma, n) {
        return Err(RepError::NotColorless(gamma.clone()));
    }
    Ok(Layered {
        ctx,
        alpha: Partition::empty(),
        beta: Partition::empty(),
        gamma: gamma.clone(),
        prefix: vec![],
        shifts: vec![],
        low: vec![],
        tail: Some(Tail::new(ctx, Monomial::ONE, kval, gamma.clone())),
        quotient: None,
        extra: 2,
        name: format!("M^({k})_{gamma}(u; {kval}), n={n}"),
    })
}

pub fn vacuum_macmahon(k: usize, n: usize, kspec: KSpec) -> RepResult<Layered> {
    gamma_macmahon(k, n, kspec, &Partition::empty())
}

pub fn gamma_macmahon(k: usize, n: usize, kspec: KSpec, gamma: &Partition) -> RepResult<Layered> {
    gamma_unchecked(k, n, check_k(kspec)?, gamma)
}

/// General Macmahon module; `m` is the first index with `α_m = β_m = 0`.
pub fn general_macmahon(alpha: &Partition, beta: &Partition, gamma: &Partition, k: usize, n: usize, kspec: KSpec) -> RepResult<Layered> {
    general_unchecked(alpha, beta, gamma, k, n, check_k(kspec)?, first_trivial_index(alpha, beta))
}

/// General Macmahon module with `m` Fock factors (`m ≥ first_trivial_index`).
pub fn general_padded(alpha: &Partition, beta: &Partition, gamma: &Partition, k: usize, n: usize, kspec: KSpec, m: usize) -> RepResult<Layered> {
    general_unchecked(alpha, beta, gamma, k, n, check_k(kspec)?, m)
}

fn general_unchecked(alpha: &Partition, beta: &Partition, gamma: &Partition, k: usize, n: usize, kval: Monomial, m: usize) -> RepResult<Layered> {
    let ctx = ctx_of(n, k)?;
    if !is_colorless(gamma, n) {
        return Err(RepError::NotColorless(gamma.clone()));
    }
    if m < first_trivial_index(alpha, beta) {
        return Err(RepError::Invalid(format!("need at least {} Fock factors", first_trivial_index(alpha, beta))));
    }
    let (mut prefix, shifts, mut um) = prefix_data(alpha, beta, n, k)?;
    while prefix.len() < m {
        um = um * Monomial::q2();
        prefix.push(FockModule::new(ctx, um));
    }
    let mut low = lowest_layers(alpha, beta, gamma);
    low.resize(m, gamma.clone());
    let level = kval * Monomial::q().pow(-(m as i32));
    Ok(Layered {
        ctx,
        alpha: alpha.clone(),
        beta: beta.clone(),
        gamma: gamma.clone(),
        prefix,
        shifts,
        low,
        tail: Some(Tail::new(ctx, Monomial::q2() * um, level, gamma.clone())),
        quotient: None,
        extra: 2,
        name: format!("M^({k})_{{{alpha},{beta},{gamma}}}(u; {kval}), n={n}"),
    })
}

/// `K` with `K^2 = q3^x q1^y q2^z`.
pub fn special_k(b: Box3) -> Monomial {
    let sq = Monomial::q3().pow(b.x as i32) * Monomial::q1().pow(b.y as i32) * Monomial::q2().pow(b.z as i32);
    sq.sqrt().expect("doubled exponents are even")
}

/// `H^{(k),(x,y,z;t)}`: labels containing `(x+t-1, y+t-1, z+t-1)` but not `(x+t, y+t, z+t)`.
pub fn special_k_quotient(desc: &MacmahonDescriptor, b: Box3, t: usize) -> RepResult<Layered> {
    let (alpha, beta, gamma) = desc.asymptotics();
    if !is_special(&alpha, &beta, &gamma, b) {
        return Err(RepError::NotSpecial(b.x, b.y, b.z));
    }
    let ctx = ctx_of(desc.n, desc.k)?;
    if ctx.modn(b.x - b.y) != 0 {
        return Err(RepError::WrongColor(b.x, b.y, b.z));
    }
    let kval = special_k(b);
    if let KSpec::Value(v) = desc.kspec {
        if v != kval {
            return Err(RepError::BadK(format!("{v} does not satisfy K^2 = {}", kval * kval)));
        }
    }
    let mut h = general_unchecked(&alpha, &beta, &gamma, desc.k, desc.n, kval, first_trivial_index(&alpha, &beta))?;
    let t = t as i64;
    let keep = (t > 0).then(|| Box3::new(b.x + t - 1, b.y + t - 1, b.z + t - 1));
    h.quotient = Some((keep, Box3::new(b.x + t, b.y + t, b.z + t)));
    h.name = format!("H^({}),({},{},{};{t})_{{{alpha},{beta},{gamma}}}, n={}", desc.k, b.x, b.y, b.z, desc.n);
    Ok(h)
}

/// `G_{μ,ν} = H_{μ,∅,ν}^{(1,n+1,1;0)}`.
pub fn g_module(mu: &Partition, nu: &Partition, k: usize, n: usize) -> RepResult<Layered> {
    if mu.get(1) >= n || nu.get(1) >= n {
        return Err(RepError::Invalid(format!("need μ_1 < {n} and ν_1 < {n}")));
    }
    if !is_colorless(nu, n) {
        return Err(RepError::NotColorless(nu.clone()));
    }
    let desc = MacmahonDescriptor {
        kind: MacmahonKind::General { alpha: mu.clone(), beta: Partition::empty(), gamma: nu.clone() },
        n,
        k,
        kspec: KSpec::Symbolic,
    };
    let mut g = special_k_quotient(&desc, Box3::new(1, n as i64 + 1, 1), 0)?;
    g.name = format!("G^({k})_{{{mu},{nu}}}, n={n}");
    Ok(g)
}

/// `n`-tuples `λ^{(1)}, …, λ^{(n)}` with `λ^{(j)}_i ≥ λ^{(j+1)}_{i+ν'_j-ν'_{j+1}} - μ'_j + μ'_{j+1}`, by total size.
pub fn pab_tuples(mu: &Partition, nu: &Partition, n: usize, d: usize) -> Vec<Vec<Partition>> {
    let mc = mu.conjugate();
    let nc = nu.conjugate();
    let mut out = Vec::new();
    let mut cur = vec![Partition::empty(); n];
    pab_fill(n, d, &mc, &nc, &mut cur, &mut out);
    out
}

fn pab_fill(s: usize, rem: usize, mc: &Partition, nc: &Partition, cur: &mut Vec<Partition>, out: &mut Vec<Vec<Partition>>) {
    if s == 0 {
        if rem == 0 {
            out.push(cur.clone());
        }
        return;
    }
    let j = s - 1;
    let n = cur.len();
    let lb = if j + 1 < n {
        let g = |p: &Partition, r: usize| p.get(r as i64) as i64;
        let b = g(nc, j + 1) - g(nc, j + 2);
        let a = g(mc, j + 1) - g(mc, j + 2);
        if a < 0 || b < 0 {
            return;
        }
        cur[j + 1].shift(a as usize, b as usize)
    } else {
        Partition::empty()
    };
    for size in lb.size()..=rem {
        for lam in containing(&lb, size) {
            cur[j] = lam;
            pab_fill(j, rem - size, mc, nc, cur, out);
        }
    }
}

/// Basis count of `G_{μ,ν}` by total degree, from the layer description.
pub fn g_counts(g: &Layered, max: usize) -> Vec<usize> {
    (0..=max).map(|d| g.enumerate(d).len()).collect()
}

/// One tensor factor of a multi-Macmahon subquotient.
#[derive(Clone, Debug)]
pub struct MultiFactor {
    pub desc: MacmahonDescriptor,
    /// `u_i / u` when known; `None` leaves the evaluation parameter generic.
    pub anchor: Option<Monomial>,
    pub b: Box3,
}

/// Graded basis of `H^{k,(x,y,z)}_{α,β,γ}(u_1, …, u_m)`.
#[derive(Clone, Debug)]
pub struct MultiBasis {
    pub by_degree: Vec<Vec<Vec<PlanePartition>>>,
    pub level: Monomial,
}

impl MultiBasis {
    pub fn character(&self) -> Vec<usize> {
        self.by_degree.iter().map(|v| v.len()).collect()
    }
}

fn box_mono(b: Box3) -> Monomial {
    Monomial::q3().pow(b.x as i32) * Monomial::q1().pow(b.y as i32) * Monomial::q2().pow(b.z as i32)
}

/// Checks `K_i^2 = q3^{x_{i+1}} q1^{y_{i+1}} q2^{z_{i+1}} u_{i+1}/u_i` (indices mod `m`) and returns the level.
pub fn check_chain(fs: &[MultiFactor]) -> RepResult<Monomial> {
    let m = fs.len();
    let anchors: Option<Vec<Monomial>> = fs.iter().map(|f| f.anchor).collect();
    let mut total = Monomial::ONE;
    for f in fs {
        total = total * box_mono(f.b);
    }
    let level = total.sqrt().ok_or_else(|| RepError::BadChain(format!("level squared {total} has no square root")))?;
    let given: Vec<Option<Monomial>> = fs
        .iter()
        .map(|f| match f.desc.kspec {
            KSpec::Value(v) => Some(v),
            KSpec::Symbolic => None,
        })
        .collect();
    if let Some(us) = anchors {
        for i in 0..m {
            let j = (i + 1) % m;
            let sq = box_mono(fs[j].b) * us[j] / us[i];
            if let Some(v) = given[i] {
                if v * v != sq {
                    return Err(RepError::BadChain(format!("K_{}^2 = {} but the chain requires {sq}", i + 1, v * v)));
                }
            }
        }
    } else if given.iter().all(|g| g.is_some()) {
        let prod = given.iter().fold(Monomial::ONE, |a, g| a * g.unwrap());
        if prod * prod != total {
            return Err(RepError::BadChain(format!("product of K_i squared is {}, expected {total}", prod * prod)));
        }
    }
    Ok(level)
}

/// Tuples of plane partitions, the `i`-th containing `(x_i, y_i, z_i)` when that box can occur
/// and not containing `(x_i+1, y_i+1, z_i+1)`.
pub fn multi_macmahon_basis(fs: &[MultiFactor], max_degree: usize) -> RepResult<MultiBasis> {
    if fs.is_empty() {
        return Err(RepError::Invalid("no factors".into()));
    }
    let level = check_chain(fs)?;
    let mut per: Vec<Vec<Vec<PlanePartition>>> = Vec::new();
    for f in fs {
        let d = &f.desc;
        let (a, b, g) = d.asymptotics();
        if !is_colorless(&g, d.n) {
            return Err(RepError::NotColorless(g));
        }
        let keep = f.b;
        let drop = Box3::new(keep.x + 1, keep.y + 1, keep.z + 1);
        let base = general_unchecked(&a, &b, &g, d.k, d.n, d.kspec.monomial(), first_trivial_index(&a, &b))?;
        let positive = keep.x >= 1 && keep.y >= 1 && keep.z >= 1;
        // Enumerate far enough to reach the minimal configuration containing `keep`.
        let reach = if positive { (keep.x * keep.y * keep.z) as usize } else { 0 };
        let rows: Vec<Vec<PlanePartition>> = (0..=max_degree + reach)
            .map(|deg| {
                base.enumerate(deg)
                    .into_iter()
                    .map(|ls| base.plane(&ls))
                    .filter(|p| (!positive || p.contains(keep)) && !p.contains(drop))
                    .collect()
            })
            .collect();
        let off = rows.iter().position(|v| !v.is_empty()).unwrap_or(0);
        per.push(rows.into_iter().skip(off).take(max_degree + 1).collect());
    }
    let mut by_degree = vec![Vec::new(); max_degree + 1];
    combine(&per, 0, 0, max_degree, &mut Vec::new(), &mut by_degree);
    Ok(MultiBasis { by_degree, level })
}

fn combine(
    per: &[Vec<Vec<PlanePartition>>],
    i: usize,
    d: usize,
    max: usize,
    cur: &mut Vec<PlanePartition>,
    out: &mut Vec<Vec<Vec<PlanePartition>>>,
) {
    if i == per.len() {
        out[d].push(cur.clone());
        return;
    }
    for (deg, v) in per[i].iter().enumerate() {
        let dd = d + deg;
        if dd > max {
            break;
        }
        for p in v {
            cur.push(p.clone());
            combine(per, i + 1, dd, max, cur, out);
            cur.pop();
        }
    }
}

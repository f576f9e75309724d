//! Fock modules `F^{(k)}(u)` with basis labelled by partitions.

use crate::coeff::Coeff;
use crate::field::{mono_from_q123, Monomial};
use crate::partitions::{colored_corners, partitions_of, ColorContext, Partition};
use crate::rep::{BasisLabel, DeltaTerm, Module, RepError, RepResult};
use crate::zeta::ZetaFunction;

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct FockModule {
    pub ctx: ColorContext,
    pub anchor: Monomial,
}

fn q13(a: i64, c: i64) -> Monomial {
    mono_from_q123(a as i32, 0, c as i32, 0)
}

impl FockModule {
    pub fn new(ctx: ColorContext, anchor: Monomial) -> Self {
        FockModule { ctx, anchor: anchor.strip_u() }
    }

    fn congruent(&self, a: i64, b: i64) -> bool {
        self.ctx.modn(a - b) == 0
    }

    /// Support `q1^{λ_j} q3^{j-1} u` of the box added to row `j`.
    pub fn support(&self, lambda: &Partition, j: usize) -> Monomial {
        Monomial::u() * self.anchor * q13(lambda.get(j as i64) as i64, j as i64 - 1)
    }

    /// Product of the two filtered psi families over rows `s` in `range`.
    fn row_product(&self, i: usize, lambda: &Partition, j: usize, range: impl Iterator<Item = usize>) -> RepResult<Coeff> {
        let k = self.ctx.k as i64;
        let i = i as i64;
        let lj = lambda.get(j as i64) as i64;
        let mut c = Coeff::one();
        for s in range {
            let ls = lambda.get(s as i64) as i64;
            let (s, jj) = (s as i64, j as i64);
            if self.congruent(ls + i, s + k) {
                c = c.mul(&Coeff::psi(q13(ls - lj - 1, s - jj))?);
            }
            if self.congruent(ls + i + 1, s + k) {
                c = c.mul(&Coeff::psi(q13(lj - ls, jj - s))?);
            }
        }
        Ok(c)
    }

    /// `<λ+1_j| E_i |λ>` by the product formula; zero when `λ+1_j` is not a partition.
    pub fn e_coeff(&self, i: usize, lambda: &Partition, j: usize) -> RepResult<Option<Coeff>> {
        let lj = lambda.get(j as i64) as i64;
        if !self.congruent(i as i64 + lj + 1, j as i64 + self.ctx.k as i64) {
            return Ok(None);
        }
        Ok(Some(self.row_product(i, lambda, j, 1..j)?))
    }

    /// Smallest `r >= lo` with `r ≡ i - k`.
    pub fn tail_index(&self, i: usize, lo: usize) -> usize {
        let mut r = lo;
        while !self.congruent(r as i64, i as i64 - self.ctx.k as i64) {
            r += 1;
        }
        r
    }

    /// `<λ| F_i |λ+1_j>` with the row product truncated at `r`.
    pub fn f_coeff_with_tail(&self, i: usize, lambda: &Partition, j: usize, r: usize) -> RepResult<Option<Coeff>> {
        let lj = lambda.get(j as i64) as i64;
        if !self.congruent(i as i64 + lj + 1, j as i64 + self.ctx.k as i64) {
            return Ok(None);
        }
        Ok(Some(self.row_product(i, lambda, j, j + 1..r)?))
    }

    pub fn f_coeff(&self, i: usize, lambda: &Partition, j: usize) -> RepResult<Option<Coeff>> {
        let big = lambda.len().max(j);
        self.f_coeff_with_tail(i, lambda, j, self.tail_index(i, big + 1))
    }

    /// Row form of the `K_i` eigenvalue, truncated at `r`.
    pub fn k_row_with_tail(&self, i: usize, lambda: &Partition, r: usize) -> ZetaFunction {
        let k = self.ctx.k as i64;
        let i = i as i64;
        let mut z = ZetaFunction::one();
        for s in 1..r {
            let ls = lambda.get(s as i64) as i64;
            let s = s as i64;
            if self.congruent(ls + i, s + k) {
                z = z.mul(&ZetaFunction::psi(self.anchor * q13(ls - 1, s - 1)));
            }
            if self.congruent(ls + i + 1, s + k) {
                z = z.mul(&ZetaFunction::psi(self.anchor * q13(ls - 1, s - 2)).inv().expect("invertible"));
            }
        }
        z
    }

    pub fn k_row(&self, i: usize, lambda: &Partition) -> ZetaFunction {
        self.k_row_with_tail(i, lambda, self.tail_index(i, lambda.len() + 1))
    }

    /// Corner form of the `K_i` eigenvalue.
    pub fn k_corner(&self, i: usize, lambda: &Partition) -> ZetaFunction {
        let c = colored_corners(lambda, self.ctx, i);
        let mut z = ZetaFunction::one();
        for (x, y) in c.convex {
            z = z.mul(&ZetaFunction::psi(self.anchor * q13(y - 1, x - 1)));
        }
        for (x, y) in c.concave {
            z = z.mul(&ZetaFunction::psi(self.anchor * Monomial::q2() * q13(y - 1, x - 1)).inv().expect("invertible"));
        }
        z
    }

    pub fn deg(&self, lambda: &Partition) -> Vec<i64> {
        let mut d = vec![0; self.ctx.n];
        for (x, y) in lambda.boxes() {
            d[self.ctx.color(x, y)] += 1;
        }
        d
    }

    pub fn e(&self, i: usize, lambda: &Partition) -> RepResult<Vec<DeltaTerm>> {
        let mut out = Vec::new();
        for j in 1..=lambda.len() + 1 {
            let Some(c) = self.e_coeff(i, lambda, j)? else { continue };
            match lambda.add_box(j) {
                Some(t) if !c.is_zero() => {
                    out.push(DeltaTerm { target: BasisLabel::YoungDiagram(t), coeff: c, support: self.support(lambda, j) })
                }
                Some(_) => {}
                None if c.is_zero() => {}
                None => {
                    return Err(RepError::EscapesSubmodule {
                        generator: format!("E{i}"),
                        label: lambda.to_string(),
                        target: format!("row {j}"),
                    })
                }
            }
        }
        Ok(out)
    }

    pub fn f(&self, i: usize, lambda: &Partition) -> RepResult<Vec<DeltaTerm>> {
        let mut out = Vec::new();
        for j in lambda.removable_rows() {
            let small = lambda.remove_box(j).expect("removable");
            let Some(c) = self.f_coeff(i, &small, j)? else { continue };
            if !c.is_zero() {
                out.push(DeltaTerm { target: BasisLabel::YoungDiagram(small.clone()), coeff: c, support: self.support(&small, j) });
            }
        }
        Ok(out)
    }
}

fn young(v: &BasisLabel) -> RepResult<&Partition> {
    match v {
        BasisLabel::YoungDiagram(p) => Ok(p),
        _ => Err(RepError::ForeignLabel(v.to_string())),
    }
}

impl Module for FockModule {
    fn ctx(&self) -> ColorContext {
        self.ctx
    }
    fn name(&self) -> String {
        format!("F^({})(u*{}), n={}", self.ctx.k, self.anchor, self.ctx.n)
    }
    fn e_action(&self, i: usize, v: &BasisLabel) -> RepResult<Vec<DeltaTerm>> {
        self.e(i, young(v)?)
    }
    fn f_action(&self, i: usize, v: &BasisLabel) -> RepResult<Vec<DeltaTerm>> {
        self.f(i, young(v)?)
    }
    fn k_eigen(&self, i: usize, v: &BasisLabel) -> RepResult<ZetaFunction> {
        Ok(self.k_corner(i, young(v)?))
    }
    fn degree(&self, v: &BasisLabel) -> Vec<i64> {
        self.deg(young(v).expect("Young diagram label"))
    }
    fn lowest(&self) -> BasisLabel {
        BasisLabel::YoungDiagram(Partition::empty())
    }
    fn basis_by_degree(&self, d: i64) -> Vec<BasisLabel> {
        if d < 0 {
            return vec![];
        }
        partitions_of(d as usize).into_iter().map(BasisLabel::YoungDiagram).collect()
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn f3() -> FockModule {
        FockModule::new(ColorContext::new(3, 0).unwrap(), Monomial::ONE)
    }

    #[test]
    fn e_examples() {
        let f = f3();
        let e = f.e(0, &Partition::empty()).unwrap();
        assert_eq!(e.len(), 1);
        assert!(e[0].coeff.is_one());
        assert_eq!(e[0].support, Monomial::u());
        let one = Partition::parse("1").unwrap();
        let e = f.e(1, &one).unwrap();
        assert_eq!(e.len(), 1);
        assert!(e[0].coeff.is_one());
        assert_eq!(e[0].support, Monomial::u() * Monomial::q3());
        let e = f.e(2, &one).unwrap();
        assert_eq!(e.len(), 1);
        assert_eq!(e[0].support, Monomial::u() * Monomial::q1());
    }

    #[test]
    fn lowest_weight() {
        let f = f3();
        let e = Partition::empty();
        assert_eq!(f.k_corner(0, &e), ZetaFunction::psi(Monomial::q2()).inv().unwrap());
        assert_eq!(f.k_corner(1, &e), ZetaFunction::one());
        assert_eq!(f.k_row(0, &e), f.k_corner(0, &e));
    }

    #[test]
    fn single_box_removal() {
        let f = f3();
        let t = f.f(0, &Partition::parse("1").unwrap()).unwrap();
        assert_eq!(t.len(), 1);
        assert_eq!(t[0].support, Monomial::u());
        assert_eq!(t[0].target, BasisLabel::YoungDiagram(Partition::empty()));
    }
}

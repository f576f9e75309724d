//! Vector representations `V^{(k)}(u)` and their barred variants.

use crate::coeff::Coeff;
use crate::field::Monomial;
use crate::partitions::ColorContext;
use crate::rep::{BasisLabel, DeltaTerm, Module, RepError, RepResult};
use crate::zeta::ZetaFunction;

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct VectorRep {
    pub ctx: ColorContext,
    /// Evaluation parameter is `u * anchor`.
    pub anchor: Monomial,
    pub barred: bool,
}

impl VectorRep {
    pub fn new(ctx: ColorContext, anchor: Monomial) -> Self {
        VectorRep { ctx, anchor: anchor.strip_u(), barred: false }
    }
    pub fn barred(ctx: ColorContext, anchor: Monomial) -> Self {
        VectorRep { ctx, anchor: anchor.strip_u(), barred: true }
    }

    fn eval(&self) -> Monomial {
        Monomial::u() * self.anchor
    }
    fn step(&self) -> Monomial {
        if self.barred {
            Monomial::q3()
        } else {
            Monomial::q1()
        }
    }
    /// Color condition for the box between `j-1` and `j`.
    fn box_color(&self, j: i64) -> usize {
        let k = self.ctx.k as i64;
        if self.barred {
            self.ctx.modn(k + j)
        } else {
            self.ctx.modn(k - j)
        }
    }

    /// `E_i [j]`: at most one term.
    pub fn e(&self, i: usize, j: i64) -> Vec<DeltaTerm> {
        if self.box_color(j + 1) != i {
            return vec![];
        }
        vec![DeltaTerm {
            target: BasisLabel::VectorIndex(j + 1),
            coeff: Coeff::one(),
            support: self.eval() * self.step().pow((j + 1) as i32),
        }]
    }

    /// `F_i [j]`.
    pub fn f(&self, i: usize, j: i64) -> Vec<DeltaTerm> {
        if self.box_color(j) != i {
            return vec![];
        }
        vec![DeltaTerm {
            target: BasisLabel::VectorIndex(j - 1),
            coeff: Coeff::one(),
            support: self.eval() * self.step().pow(j as i32),
        }]
    }

    /// Eigenvalue of `K_i(z)` on `[j]`.
    pub fn k(&self, i: usize, j: i64) -> ZetaFunction {
        let k = self.ctx.k as i64;
        let i = i as i64;
        let (s, other) = if self.barred { (Monomial::q3(), Monomial::q1()) } else { (Monomial::q1(), Monomial::q3()) };
        let base = self.anchor * s.pow(j as i32);
        let (hit, miss) = if self.barred {
            (self.ctx.modn(k + j - i) == 0, self.ctx.modn(k + j + 1 - i) == 0)
        } else {
            (self.ctx.modn(j + i - k) == 0, self.ctx.modn(j + i + 1 - k) == 0)
        };
        if hit {
            ZetaFunction::psi(base)
        } else if miss {
            ZetaFunction::psi(base * other.inv()).inv().expect("psi is invertible")
        } else {
            ZetaFunction::one()
        }
    }

    /// `Z^n`-degree of `[j]`, with `deg [-1] = 0`.
    pub fn deg(&self, j: i64) -> Vec<i64> {
        let mut d = vec![0i64; self.ctx.n];
        if j >= 0 {
            for t in 0..=j {
                d[self.box_color(t)] += 1;
            }
        } else {
            for t in (j + 1)..=-1 {
                d[self.box_color(t)] -= 1;
            }
        }
        d
    }
}

fn index(v: &BasisLabel) -> RepResult<i64> {
    match v {
        BasisLabel::VectorIndex(j) => Ok(*j),
        _ => Err(RepError::ForeignLabel(v.to_string())),
    }
}

impl Module for VectorRep {
    fn ctx(&self) -> ColorContext {
        self.ctx
    }
    fn name(&self) -> String {
        let bar = if self.barred { "Vbar" } else { "V" };
        format!("{bar}^({})(u*{}), n={}", self.ctx.k, self.anchor, self.ctx.n)
    }
    fn e_action(&self, i: usize, v: &BasisLabel) -> RepResult<Vec<DeltaTerm>> {
        Ok(self.e(i, index(v)?))
    }
    fn f_action(&self, i: usize, v: &BasisLabel) -> RepResult<Vec<DeltaTerm>> {
        Ok(self.f(i, index(v)?))
    }
    fn k_eigen(&self, i: usize, v: &BasisLabel) -> RepResult<ZetaFunction> {
        Ok(self.k(i, index(v)?))
    }
    fn degree(&self, v: &BasisLabel) -> Vec<i64> {
        self.deg(index(v).expect("vector label"))
    }
    fn lowest(&self) -> BasisLabel {
        BasisLabel::VectorIndex(-1)
    }
    fn basis_by_degree(&self, d: i64) -> Vec<BasisLabel> {
        vec![BasisLabel::VectorIndex(d - 1)]
    }
    /// The vector representation has no lowest weight; probes cover degrees `-max..=max`.
    fn labels_up_to(&self, max: usize) -> Vec<BasisLabel> {
        let m = max as i64;
        (-m..=m).map(|d| BasisLabel::VectorIndex(d - 1)).collect()
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn ctx() -> ColorContext {
        ColorContext::new(3, 0).unwrap()
    }

    #[test]
    fn e_examples() {
        let v = VectorRep::new(ctx(), Monomial::ONE);
        let t = v.e(0, -1);
        assert_eq!(t.len(), 1);
        assert_eq!(t[0].target, BasisLabel::VectorIndex(0));
        assert_eq!(t[0].support, Monomial::u());
        assert!(v.e(1, -1).is_empty());
        let b = VectorRep::barred(ctx(), Monomial::ONE);
        assert_eq!(b.e(0, -1)[0].support, Monomial::u());
    }

    #[test]
    fn degrees() {
        let v = VectorRep::new(ctx(), Monomial::ONE);
        assert_eq!(v.deg(-1), vec![0, 0, 0]);
        assert_eq!(v.deg(0), vec![1, 0, 0]);
        assert_eq!(v.deg(1), vec![1, 0, 1]);
        assert_eq!(v.deg(2), vec![1, 1, 1]);
        assert_eq!(v.deg(-2), vec![0, -1, 0]);
    }

    #[test]
    fn k_cases() {
        let v = VectorRep::new(ctx(), Monomial::ONE);
        assert_eq!(v.k(0, 0), ZetaFunction::psi(Monomial::ONE));
        assert_eq!(v.k(2, 0), ZetaFunction::psi(Monomial::q3().inv()).inv().unwrap());
        assert_eq!(v.k(1, 0), ZetaFunction::one());
    }
}

//! Partitions, colorings and corners.

use std::fmt;

use serde::{Deserialize, Serialize};
use thiserror::Error;

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum PartitionError {
    #[error("parts must be weakly decreasing: {0:?}")]
    NotMonotone(Vec<i64>),
    #[error("parts must be non-negative: {0:?}")]
    Negative(Vec<i64>),
    #[error("n must be at least 1")]
    BadN,
    #[error("cannot parse partition `{0}`")]
    Parse(String),
}

/// Number of colors `n` and corner color `k`.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub struct ColorContext {
    pub n: usize,
    pub k: usize,
}

impl ColorContext {
    pub fn new(n: usize, k: i64) -> Result<Self, PartitionError> {
        if n == 0 {
            return Err(PartitionError::BadN);
        }
        Ok(ColorContext { n, k: k.rem_euclid(n as i64) as usize })
    }
    pub fn modn(&self, x: i64) -> usize {
        x.rem_euclid(self.n as i64) as usize
    }
    /// Color `k + x - y` of the box in row `x`, column `y`.
    pub fn color(&self, x: i64, y: i64) -> usize {
        self.modn(self.k as i64 + x - y)
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Default, Serialize, Deserialize)]
pub struct Partition {
    parts: Vec<usize>,
}

impl Partition {
    pub fn empty() -> Self {
        Partition::default()
    }
    pub fn new(parts: &[i64]) -> Result<Self, PartitionError> {
        if parts.iter().any(|&p| p < 0) {
            return Err(PartitionError::Negative(parts.to_vec()));
        }
        if parts.windows(2).any(|w| w[0] < w[1]) {
            return Err(PartitionError::NotMonotone(parts.to_vec()));
        }
        Ok(Partition { parts: parts.iter().filter(|&&p| p > 0).map(|&p| p as usize).collect() })
    }
    pub fn from_parts(parts: Vec<usize>) -> Self {
        let p: Vec<i64> = parts.iter().map(|&x| x as i64).collect();
        Partition::new(&p).expect("invalid partition")
    }
    /// Comma separated parts, `""` or `"0"` for the empty partition.
    pub fn parse(s: &str) -> Result<Self, PartitionError> {
        let s = s.trim();
        if s.is_empty() || s == "-" || s == "()" {
            return Ok(Partition::empty());
        }
        let s = s.trim_start_matches('(').trim_end_matches(')');
        let parts: Result<Vec<i64>, _> = s.split(',').map(|t| t.trim().parse::<i64>()).collect();
        Partition::new(&parts.map_err(|_| PartitionError::Parse(s.to_string()))?)
    }
    pub fn parts(&self) -> &[usize] {
        &self.parts
    }
    pub fn len(&self) -> usize {
        self.parts.len()
    }
    pub fn is_empty(&self) -> bool {
        self.parts.is_empty()
    }
    pub fn size(&self) -> usize {
        self.parts.iter().sum()
    }
    /// `λ_i`, 1-based, zero past the end.
    pub fn get(&self, i: i64) -> usize {
        if i < 1 {
            return usize::MAX;
        }
        self.parts.get((i - 1) as usize).copied().unwrap_or(0)
    }
    pub fn conjugate(&self) -> Partition {
        let m = self.parts.first().copied().unwrap_or(0);
        Partition { parts: (1..=m).map(|c| self.parts.iter().filter(|&&p| p >= c).count()).collect() }
    }
    pub fn contains_box(&self, x: i64, y: i64) -> bool {
        x >= 1 && y >= 1 && self.get(x) >= y as usize
    }
    pub fn contains(&self, o: &Partition) -> bool {
        o.parts.iter().enumerate().all(|(i, &p)| self.get(i as i64 + 1) >= p)
    }
    /// Add a box at the end of row `j` (1-based), if the result is a partition.
    pub fn add_box(&self, j: usize) -> Option<Partition> {
        if j == 0 || j > self.len() + 1 {
            return None;
        }
        let cur = self.get(j as i64);
        if j > 1 && self.get(j as i64 - 1) <= cur {
            return None;
        }
        let mut p = self.parts.clone();
        if j > p.len() {
            p.push(1);
        } else {
            p[j - 1] += 1;
        }
        Some(Partition { parts: p })
    }
    /// Remove the last box of row `j`, if the result is a partition.
    pub fn remove_box(&self, j: usize) -> Option<Partition> {
        if j == 0 || j > self.len() {
            return None;
        }
        if self.get(j as i64 + 1) >= self.get(j as i64) {
            return None;
        }
        let mut p = self.parts.clone();
        p[j - 1] -= 1;
        if p[j - 1] == 0 {
            p.pop();
        }
        Some(Partition { parts: p })
    }
    /// Rows where a box can be added.
    pub fn addable_rows(&self) -> Vec<usize> {
        (1..=self.len() + 1).filter(|&j| self.add_box(j).is_some()).collect()
    }
    pub fn removable_rows(&self) -> Vec<usize> {
        (1..=self.len()).filter(|&j| self.remove_box(j).is_some()).collect()
    }
    /// Boxes `(row, column)` in reading order.
    pub fn boxes(&self) -> Vec<(i64, i64)> {
        let mut out = Vec::new();
        for (i, &p) in self.parts.iter().enumerate() {
            for c in 1..=p {
                out.push((i as i64 + 1, c as i64));
            }
        }
        out
    }
    /// `λ[a, b]_i = max(λ_{i+b} - a, 0)`.
    pub fn shift(&self, a: usize, b: usize) -> Partition {
        let parts: Vec<usize> =
            (1..=self.len()).map(|i| self.get((i + b) as i64).saturating_sub(a)).filter(|&p| p > 0).collect();
        Partition { parts }
    }
}

impl fmt::Display for Partition {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.parts.is_empty() {
            return write!(f, "()");
        }
        let s: Vec<String> = self.parts.iter().map(|p| p.to_string()).collect();
        write!(f, "({})", s.join(","))
    }
}

/// Convex and concave corners as `(row, column)`.
#[derive(Clone, Debug, PartialEq, Eq, Default)]
pub struct Corners {
    pub convex: Vec<(i64, i64)>,
    pub concave: Vec<(i64, i64)>,
}

pub fn corners(lambda: &Partition) -> Corners {
    let mut c = Corners::default();
    for j in lambda.removable_rows() {
        c.convex.push((j as i64, lambda.get(j as i64) as i64));
    }
    for j in lambda.addable_rows() {
        c.concave.push((j as i64, lambda.get(j as i64) as i64 + 1));
    }
    c
}

/// Corners of a given color.
pub fn colored_corners(lambda: &Partition, ctx: ColorContext, i: usize) -> Corners {
    let c = corners(lambda);
    Corners {
        convex: c.convex.into_iter().filter(|&(x, y)| ctx.color(x, y) == i).collect(),
        concave: c.concave.into_iter().filter(|&(x, y)| ctx.color(x, y) == i).collect(),
    }
}

/// All partitions of `m`, in reverse lexicographic order.
pub fn partitions_of(m: usize) -> Vec<Partition> {
    fn rec(rem: usize, max: usize, cur: &mut Vec<usize>, out: &mut Vec<Partition>) {
        if rem == 0 {
            out.push(Partition { parts: cur.clone() });
            return;
        }
        for p in (1..=rem.min(max)).rev() {
            cur.push(p);
            rec(rem - p, p, cur, out);
            cur.pop();
        }
    }
    let mut out = Vec::new();
    rec(m, m, &mut Vec::new(), &mut out);
    out
}

pub fn partitions_up_to(m: usize) -> Vec<Partition> {
    (0..=m).flat_map(partitions_of).collect()
}

/// Box counts per color `(x - y) mod n`.
pub fn color_counts(gamma: &Partition, n: usize) -> Vec<usize> {
    let ctx = ColorContext { n, k: 0 };
    let mut v = vec![0; n];
    for (x, y) in gamma.boxes() {
        v[ctx.color(x, y)] += 1;
    }
    v
}

/// Equal numbers of boxes of every color.
pub fn is_colorless(gamma: &Partition, n: usize) -> bool {
    let v = color_counts(gamma, n);
    v.iter().all(|&c| c == v[0])
}

/// `v_i = |CC_i| - |CV_i|`.
pub fn v_vec(gamma: &Partition, ctx: ColorContext) -> Vec<i64> {
    (0..ctx.n)
        .map(|i| {
            let c = colored_corners(gamma, ctx, i);
            c.concave.len() as i64 - c.convex.len() as i64
        })
        .collect()
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn partition_counts() {
        let counts: Vec<usize> = (0..=10).map(|m| partitions_of(m).len()).collect();
        assert_eq!(counts, vec![1, 1, 2, 3, 5, 7, 11, 15, 22, 30, 42]);
    }

    #[test]
    fn rejects_non_monotone() {
        assert!(matches!(Partition::parse("1,2"), Err(PartitionError::NotMonotone(_))));
        assert_eq!(Partition::parse("3,1,1").unwrap().parts(), &[3, 1, 1]);
    }

    #[test]
    fn corners_of_7422() {
        let l = Partition::parse("7,4,2,2").unwrap();
        let ctx = ColorContext::new(3, 0).unwrap();
        let c = corners(&l);
        let cv: Vec<usize> = c.convex.iter().map(|&(x, y)| ctx.color(x, y)).collect();
        let cc: Vec<usize> = c.concave.iter().map(|&(x, y)| ctx.color(x, y)).collect();
        assert_eq!(cv, vec![0, 1, 2]);
        assert_eq!(cc, vec![2, 0, 0, 1]);
    }

    #[test]
    fn shift_matches_definition() {
        let g = Partition::parse("3,2,1").unwrap();
        assert_eq!(g.shift(0, 1), Partition::parse("2,1").unwrap());
        assert_eq!(g.shift(1, 0), Partition::parse("2,1").unwrap());
        assert_eq!(g.shift(1, 2), Partition::empty());
    }

    #[test]
    fn colorless_examples() {
        assert!(is_colorless(&Partition::empty(), 3));
        assert!(is_colorless(&Partition::parse("2,1").unwrap(), 3));
        assert!(!is_colorless(&Partition::parse("2").unwrap(), 3));
        assert!(is_colorless(&Partition::parse("3,2,1").unwrap(), 3));
        let ctx = ColorContext::new(3, 0).unwrap();
        assert_eq!(v_vec(&Partition::empty(), ctx), vec![1, 0, 0]);
        assert_eq!(v_vec(&Partition::parse("7,4,2,2").unwrap(), ctx), vec![1, 0, 0]);
        assert_eq!(v_vec(&Partition::parse("1").unwrap(), ctx), vec![-1, 1, 1]);
        assert!(!is_colorless(&Partition::parse("3,2,1").unwrap(), 6));
        assert!(is_colorless(&Partition::parse("7,4,2,2").unwrap(), 3));
    }
}

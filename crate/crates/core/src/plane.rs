//! Plane partitions with asymptotics `(α, β, γ)`, stored as layer sequences.

use std::collections::BTreeSet;

use serde::{Deserialize, Serialize};
use thiserror::Error;

use crate::field::{mono_from_q123, Monomial};
use crate::partitions::{ColorContext, Partition};

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum PlaneError {
    #[error("layers are not nested at layer {0}")]
    MalformedLayers(usize),
}

/// Height of a column: finite or infinite.
#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord)]
pub enum Height {
    Finite(usize),
    Infinite,
}

impl Height {
    pub fn at_least(self, z: usize) -> bool {
        match self {
            Height::Infinite => true,
            Height::Finite(h) => h >= z,
        }
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
pub struct Box3 {
    pub x: i64,
    pub y: i64,
    pub z: i64,
}

impl Box3 {
    pub fn new(x: i64, y: i64, z: i64) -> Self {
        Box3 { x, y, z }
    }
    pub fn color(&self, ctx: ColorContext) -> usize {
        ctx.color(self.x, self.y)
    }
    /// `u q3^x q1^y q2^z`.
    pub fn evaluation(&self) -> Monomial {
        mono_from_q123(self.y as i32, self.z as i32, self.x as i32, 1)
    }
}

/// Index of the first vanishing pair `α_m = β_m = 0`.
pub fn first_trivial_index(alpha: &Partition, beta: &Partition) -> usize {
    alpha.len().max(beta.len()) + 1
}

/// `γ^{(s)}` for `s = 1..=m`, with `γ^{(s)} = γ^{(s+1)}[a_s, b_s]`.
pub fn lowest_layers(alpha: &Partition, beta: &Partition, gamma: &Partition) -> Vec<Partition> {
    let m = first_trivial_index(alpha, beta);
    let mut out = vec![gamma.clone(); m];
    for s in (1..m).rev() {
        let a = alpha.get(s as i64) - alpha.get(s as i64 + 1);
        let b = beta.get(s as i64) - beta.get(s as i64 + 1);
        out[s - 1] = out[s].shift(a, b);
    }
    out
}

#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
pub struct PlanePartition {
    pub alpha: Partition,
    pub beta: Partition,
    pub gamma: Partition,
    /// `λ^{(1)}, λ^{(2)}, …`; missing layers take their lowest-weight value.
    pub layers: Vec<Partition>,
}

impl PlanePartition {
    pub fn lowest(alpha: &Partition, beta: &Partition, gamma: &Partition) -> Self {
        PlanePartition { alpha: alpha.clone(), beta: beta.clone(), gamma: gamma.clone(), layers: Vec::new() }
    }

    /// Layer `s` (1-based) as a partition.
    pub fn layer(&self, s: usize) -> Partition {
        if s <= self.layers.len() {
            return self.layers[s - 1].clone();
        }
        let low = lowest_layers(&self.alpha, &self.beta, &self.gamma);
        low.get(s - 1).cloned().unwrap_or_else(|| self.gamma.clone())
    }

    fn depth(&self) -> usize {
        self.layers.len().max(first_trivial_index(&self.alpha, &self.beta))
    }

    fn occupies(&self, s: usize, lam: &Partition, x: i64, y: i64) -> bool {
        let a = self.alpha.get(s as i64) as i64;
        let b = self.beta.get(s as i64) as i64;
        y <= a || x <= b || (x > b && y > a && lam.get(x - b) as i64 >= y - a)
    }

    /// `Λ_{x,y}`.
    pub fn height(&self, x: i64, y: i64) -> Height {
        if self.gamma.contains_box(x, y) {
            return Height::Infinite;
        }
        let mut h = 0;
        for s in 1..=self.depth() {
            if self.occupies(s, &self.layer(s), x, y) {
                h = s;
            }
        }
        Height::Finite(h)
    }

    pub fn contains(&self, b: Box3) -> bool {
        b.x >= 1 && b.y >= 1 && b.z >= 1 && self.height(b.x, b.y).at_least(b.z as usize)
    }

    /// Rows and columns beyond which the profile is asymptotic.
    fn extent(&self) -> (i64, i64) {
        let mut xm = self.beta.get(1).max(self.gamma.len()) as i64;
        let mut ym = self.alpha.get(1).max(self.gamma.get(1)) as i64;
        for s in 1..=self.depth() {
            let l = self.layer(s);
            xm = xm.max(self.beta.get(s as i64) as i64 + l.len() as i64);
            ym = ym.max(self.alpha.get(s as i64) as i64 + l.get(1) as i64);
        }
        (xm + 1, ym + 1)
    }

    /// Boxes beyond the lowest-weight configuration.
    pub fn degree(&self) -> usize {
        let low = lowest_layers(&self.alpha, &self.beta, &self.gamma);
        let mut d = 0i64;
        for (s, l) in self.layers.iter().enumerate() {
            let base = low.get(s).unwrap_or(&self.gamma);
            d += l.size() as i64 - base.size() as i64;
        }
        d as usize
    }

    /// Checks that occupied regions are nested in `s`.
    pub fn validate(&self) -> Result<(), PlaneError> {
        let (xm, ym) = self.extent();
        for s in 1..self.depth() + 1 {
            let l1 = self.layer(s);
            let l2 = self.layer(s + 1);
            for x in 1..=xm {
                for y in 1..=ym {
                    if self.occupies(s + 1, &l2, x, y) && !self.occupies(s, &l1, x, y) {
                        return Err(PlaneError::MalformedLayers(s));
                    }
                }
            }
        }
        Ok(())
    }

    /// Drop trailing layers equal to their lowest-weight value.
    pub fn canonical(mut self) -> Self {
        let low = lowest_layers(&self.alpha, &self.beta, &self.gamma);
        while let Some(last) = self.layers.last() {
            let s = self.layers.len();
            let base = low.get(s - 1).unwrap_or(&self.gamma);
            if last == base {
                self.layers.pop();
            } else {
                break;
            }
        }
        self
    }

    /// All boxes that can be added or removed keeping the asymptotics.
    pub fn addable_removable_all(&self) -> (Vec<Box3>, Vec<Box3>) {
        let (xm, ym) = self.extent();
        let h = |x: i64, y: i64| -> Height {
            if x < 1 || y < 1 {
                Height::Infinite
            } else {
                self.height(x, y)
            }
        };
        let mut add = Vec::new();
        let mut rem = Vec::new();
        for x in 1..=xm {
            for y in 1..=ym {
                if let Height::Finite(z) = h(x, y) {
                    let z = z as i64;
                    if h(x - 1, y).at_least(z as usize + 1) && h(x, y - 1).at_least(z as usize + 1) {
                        add.push(Box3::new(x, y, z + 1));
                    }
                    if z >= 1 && !h(x + 1, y).at_least(z as usize) && !h(x, y + 1).at_least(z as usize) {
                        rem.push(Box3::new(x, y, z));
                    }
                }
            }
        }
        (add, rem)
    }

    /// Layer index and row inside `λ^{(z)}` for box `b`, if it sits in a free region.
    pub fn box_slot(&self, b: Box3) -> Option<(usize, usize)> {
        let s = b.z as usize;
        let a = self.alpha.get(s as i64) as i64;
        let be = self.beta.get(s as i64) as i64;
        if b.x <= be || b.y <= a {
            return None;
        }
        Some((s, (b.x - be) as usize))
    }

    /// The plane partition with box `b` added (or removed).
    pub fn toggle(&self, b: Box3, add: bool) -> Option<PlanePartition> {
        let (s, row) = self.box_slot(b)?;
        let mut layers: Vec<Partition> = (1..=self.depth().max(s)).map(|t| self.layer(t)).collect();
        let l = &layers[s - 1];
        let nl = if add { l.add_box(row)? } else { l.remove_box(row)? };
        layers[s - 1] = nl;
        Some(PlanePartition { layers, ..self.clone() }.canonical())
    }

    /// Rebuild layers from a height accessor, scanning `x ≤ xb`, `y ≤ yb`.
    pub fn from_heights(
        alpha: &Partition,
        beta: &Partition,
        gamma: &Partition,
        h: impl Fn(i64, i64) -> Height,
        xb: i64,
        yb: i64,
        depth: usize,
    ) -> PlanePartition {
        let mut layers = Vec::new();
        for s in 1..=depth {
            let a = alpha.get(s as i64) as i64;
            let b = beta.get(s as i64) as i64;
            let mut parts = Vec::new();
            for i in 1..=(xb - b) {
                let c = ((a + 1)..=yb).filter(|&y| h(i + b, y).at_least(s)).count();
                if c == 0 {
                    break;
                }
                parts.push(c);
            }
            layers.push(Partition::from_parts(parts));
        }
        PlanePartition { alpha: alpha.clone(), beta: beta.clone(), gamma: gamma.clone(), layers }.canonical()
    }

    pub fn to_json(&self) -> serde_json::Value {
        serde_json::json!({
            "alpha": self.alpha,
            "beta": self.beta,
            "gamma": self.gamma,
            "layers": self.layers.iter().map(|l| l.parts().to_vec()).collect::<Vec<_>>(),
        })
    }
}

/// `Λ(λ)` from a layer sequence.
pub fn plane_from_layers(
    layers: &[Partition],
    alpha: &Partition,
    beta: &Partition,
    gamma: &Partition,
) -> Result<PlanePartition, PlaneError> {
    let p = PlanePartition { alpha: alpha.clone(), beta: beta.clone(), gamma: gamma.clone(), layers: layers.to_vec() };
    p.validate()?;
    Ok(p.canonical())
}

/// Inverse of [`plane_from_layers`].
pub fn layers_from_plane(p: &PlanePartition) -> Vec<Partition> {
    let depth = p.depth();
    let (xm, ym) = p.extent();
    let q = PlanePartition::from_heights(&p.alpha, &p.beta, &p.gamma, |x, y| p.height(x, y), xm, ym, depth);
    q.layers
}

pub fn addable_removable(p: &PlanePartition, color: usize, ctx: ColorContext) -> (Vec<Box3>, Vec<Box3>) {
    let (a, r) = p.addable_removable_all();
    (
        a.into_iter().filter(|b| b.color(ctx) == color).collect(),
        r.into_iter().filter(|b| b.color(ctx) == color).collect(),
    )
}

/// Which printing of the special-box clauses to use.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum SpecialConvention {
    /// Leg heights `α'_y` above column `y`, `β'_x` above row `x`.
    Consistent,
    /// Leg heights indexed as `α'_x`, `β'_y`.
    Printed,
}

pub fn is_special_with(alpha: &Partition, beta: &Partition, gamma: &Partition, b: Box3, conv: SpecialConvention) -> bool {
    if b.x < 1 || b.y < 1 || b.z < 1 {
        return false;
    }
    let ac = alpha.conjugate();
    let bc = beta.conjugate();
    let gc = gamma.conjugate();
    let (ha, hb) = match conv {
        SpecialConvention::Consistent => (ac.get(b.y) as i64, bc.get(b.x) as i64),
        SpecialConvention::Printed => (ac.get(b.x) as i64, bc.get(b.y) as i64),
    };
    let gx = gamma.get(b.x) as i64;
    let gy = gc.get(b.y) as i64;
    let c1 = b.z == ha + 1 && ha >= hb && b.y >= gx + 1;
    let c2 = b.z == hb + 1 && hb >= ha && b.y >= gx + 1;
    let c3 = (b.y == gx + 1 || b.x == gy + 1) && b.z >= ha + 1 && b.z >= hb + 1;
    c1 || c2 || c3
}

pub fn is_special(alpha: &Partition, beta: &Partition, gamma: &Partition, b: Box3) -> bool {
    is_special_with(alpha, beta, gamma, b, SpecialConvention::Consistent)
}

pub fn special_boxes(alpha: &Partition, beta: &Partition, gamma: &Partition, bound: i64) -> BTreeSet<Box3> {
    let mut out = BTreeSet::new();
    for x in 1..=bound {
        for y in 1..=bound {
            for z in 1..=bound {
                let b = Box3::new(x, y, z);
                if is_special(alpha, beta, gamma, b) {
                    out.insert(b);
                }
            }
        }
    }
    out
}

/// Colored Young diagram: digits are colors, `_c_` marks convex corners, `~c~` concave ones.
pub fn render_partition(lambda: &Partition, ctx: ColorContext) -> String {
    let c = crate::partitions::corners(lambda);
    let mut out = String::new();
    for x in 1..=(lambda.len() as i64 + 1) {
        let mut line = String::new();
        let len = lambda.get(x) as i64;
        for y in 1..=(len + 1) {
            let col = ctx.color(x, y);
            if y <= len {
                if c.convex.contains(&(x, y)) {
                    line.push_str(&format!("_{col}_"));
                } else {
                    line.push_str(&format!(" {col} "));
                }
            } else if c.concave.contains(&(x, y)) {
                line.push_str(&format!("~{col}~"));
            }
        }
        let line = line.trim_end().to_string();
        if !line.is_empty() {
            out.push_str(&line);
            out.push('\n');
        }
    }
    out
}

/// Isometric view of the top faces, showing box colors; legs are cut at `cut`.
pub fn render_plane(p: &PlanePartition, ctx: ColorContext, cut: i64) -> String {
    let (xm, ym) = p.extent();
    let xm = xm.max(cut);
    let ym = ym.max(cut);
    let mut cubes = Vec::new();
    for x in 1..=xm {
        for y in 1..=ym {
            let h = match p.height(x, y) {
                Height::Infinite => cut,
                Height::Finite(h) => (h as i64).min(cut),
            };
            for z in 1..=h {
                cubes.push((x, y, z));
            }
        }
    }
    if cubes.is_empty() {
        return String::from("(empty)\n");
    }
    cubes.sort_by_key(|&(x, y, z)| (x + y + z, z));
    let proj = |x: i64, y: i64, z: i64| -> (i64, i64) { (2 * (y - x), x + y - 2 * z) };
    let pts: Vec<(i64, i64)> = cubes.iter().map(|&(x, y, z)| proj(x, y, z)).collect();
    let c0 = pts.iter().map(|p| p.0).min().unwrap();
    let c1 = pts.iter().map(|p| p.0).max().unwrap();
    let r0 = pts.iter().map(|p| p.1).min().unwrap();
    let r1 = pts.iter().map(|p| p.1).max().unwrap();
    let mut grid = vec![vec![' '; (c1 - c0 + 2) as usize]; (r1 - r0 + 1) as usize];
    for (&(x, y, _), &(c, r)) in cubes.iter().zip(&pts) {
        let col = ctx.color(x, y);
        grid[(r - r0) as usize][(c - c0) as usize] = char::from_digit(col as u32, 36).unwrap_or('?');
    }
    let mut out = String::new();
    for row in grid {
        let s: String = row.into_iter().collect();
        out.push_str(s.trim_end());
        out.push('\n');
    }
    out
}

#[cfg(test)]
mod tests {
    use super::*;

    fn p(s: &str) -> Partition {
        Partition::parse(s).unwrap()
    }

    #[test]
    fn legs_of_general_example() {
        let (a, b, g) = (p("3,1"), p("4,3,1,1"), p("3,2,1"));
        let pp = PlanePartition::lowest(&a, &b, &g);
        pp.validate().unwrap();
        let ac = a.conjugate();
        let bc = b.conjugate();
        for y in 1..6 {
            assert_eq!(pp.height(40, y), Height::Finite(ac.get(y) as usize));
        }
        for x in 1..6 {
            if !g.contains_box(x, 40) {
                assert_eq!(pp.height(x, 40), Height::Finite(bc.get(x) as usize));
            }
        }
        assert_eq!(pp.height(1, 1), Height::Infinite);
        assert_eq!(pp.degree(), 0);
    }

    #[test]
    fn empty_plane_partition_moves() {
        let e = Partition::empty();
        let ctx = ColorContext::new(3, 0).unwrap();
        let pp = PlanePartition::lowest(&e, &e, &e);
        let (a, r) = addable_removable(&pp, 0, ctx);
        assert_eq!(a, vec![Box3::new(1, 1, 1)]);
        assert!(r.is_empty());
        let pp = pp.toggle(Box3::new(1, 1, 1), true).unwrap();
        let (a, r) = pp.addable_removable_all();
        assert_eq!(r, vec![Box3::new(1, 1, 1)]);
        let mut a = a;
        a.sort();
        assert_eq!(a, vec![Box3::new(1, 1, 2), Box3::new(1, 2, 1), Box3::new(2, 1, 1)]);
    }

    #[test]
    fn special_boxes_vacuum() {
        let e = Partition::empty();
        let s = special_boxes(&e, &e, &e, 4);
        for b in &s {
            assert!(b.x == 1 || b.y == 1 || b.z == 1);
        }
        assert!(s.contains(&Box3::new(1, 1, 1)));
        assert!(s.contains(&Box3::new(3, 3, 1)));
        assert!(!s.contains(&Box3::new(2, 2, 2)));
    }

    #[test]
    fn special_boxes_single_box_gamma() {
        let e = Partition::empty();
        let g = p("1");
        for z in 1..6 {
            assert!(is_special(&e, &e, &g, Box3::new(1, 2, z)));
            assert!(is_special(&e, &e, &g, Box3::new(2, 1, z)));
        }
    }

    #[test]
    fn render_7422() {
        let s = render_partition(&p("7,4,2,2"), ColorContext::new(3, 0).unwrap());
        let first = s.lines().next().unwrap();
        assert!(first.ends_with("_0_~2~"));
    }
}

//! Finite point-set realisations of threshold random sets.
//!
//! A threshold random set such as `{ (x, y) : x > p_x }` has as support every
//! set obtained by sweeping `p_x` over the real line. On a finite point set
//! only the cuts between consecutive coordinate values matter, so the support
//! is finite and can be listed.

use alloc::sync::Arc;
use alloc::vec::Vec;

use crate::family::{GroundSet, SetFamily, Subset};
use crate::rules::FamilyExpr;

/// Points of the plane with integer coordinates; point `i` is ground element `i`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct PointSet {
    points: Vec<(i64, i64)>,
}

impl PointSet {
    pub fn new(points: Vec<(i64, i64)>) -> Self {
        PointSet { points }
    }

    /// `(i, n + 1 - i)` for `i = 1..=n`: no point dominates another.
    pub fn diagonal_antichain(n: usize) -> Self {
        PointSet::new((1..=n as i64).map(|i| (i, n as i64 + 1 - i)).collect())
    }

    /// `(i, i)` for `i = 1..=n`: one point on each horizontal line.
    pub fn diagonal(n: usize) -> Self {
        PointSet::new((1..=n as i64).map(|i| (i, i)).collect())
    }

    /// `cols` points on each of `rows` horizontal lines.
    pub fn grid(rows: usize, cols: usize) -> Self {
        let mut points = Vec::with_capacity(rows * cols);
        for y in 1..=rows as i64 {
            for x in 1..=cols as i64 {
                points.push((x, y));
            }
        }
        PointSet::new(points)
    }

    pub fn len(&self) -> usize {
        self.points.len()
    }

    pub fn is_empty(&self) -> bool {
        self.points.is_empty()
    }

    pub fn points(&self) -> &[(i64, i64)] {
        &self.points
    }

    pub fn ground(&self) -> GroundSet {
        GroundSet::indexed(self.len())
    }

    pub fn select(&self, pred: impl Fn(i64, i64) -> bool) -> Subset {
        Subset::from_indices(
            self.len(),
            self.points.iter().enumerate().filter(|(_, &(x, y))| pred(x, y)).map(|(i, _)| i),
        )
    }

    /// Threshold values that realise every distinct cut along one axis: one
    /// below the minimum plus every coordinate value.
    fn cuts(&self, axis: impl Fn(&(i64, i64)) -> i64) -> Vec<i64> {
        let mut values: Vec<i64> = self.points.iter().map(axis).collect();
        values.sort_unstable();
        values.dedup();
        let below = values.first().map_or(0, |v| v - 1);
        core::iter::once(below).chain(values).collect()
    }

    /// Support of `{ p : x > t }` over all real `t`, as a chain from the empty set up.
    pub fn x_threshold_chain(&self) -> Vec<Subset> {
        let mut chain: Vec<Subset> = self.cuts(|p| p.0).into_iter().map(|t| self.select(|x, _| x > t)).collect();
        chain.reverse();
        chain.dedup();
        chain
    }

    /// Support of `{ p : y > t }` over all real `t`.
    pub fn y_threshold_chain(&self) -> Vec<Subset> {
        let mut chain: Vec<Subset> = self.cuts(|p| p.1).into_iter().map(|t| self.select(|_, y| y > t)).collect();
        chain.reverse();
        chain.dedup();
        chain
    }

    /// `{ p : x > t_x or y > t_y }` as a union of the two axis chains.
    pub fn union_of_axis_chains(&self) -> FamilyExpr {
        FamilyExpr::Union(alloc::vec![
            FamilyExpr::Chain(self.x_threshold_chain()),
            FamilyExpr::Chain(self.y_threshold_chain()),
        ])
    }

    /// `{ p : x > t_x and y > t_y }` with no cardinality bound; the rule
    /// engine refuses to bound it.
    pub fn intersection_of_axis_chains(&self) -> FamilyExpr {
        FamilyExpr::Intersect {
            children: alloc::vec![
                FamilyExpr::Chain(self.x_threshold_chain()),
                FamilyExpr::Chain(self.y_threshold_chain()),
            ],
            bounded: None,
        }
    }

    /// Every nonempty set cut out by an upper-right quarter-plane.
    pub fn quarterplane_sets(&self) -> Vec<Subset> {
        let xs = self.cuts(|p| p.0);
        let ys = self.cuts(|p| p.1);
        let mut sets = Vec::new();
        for &a in &xs {
            for &b in &ys {
                let s = self.select(|x, y| x > a && y > b);
                if !s.is_empty() {
                    sets.push(s);
                }
            }
        }
        sets
    }

    /// Every set `{ (x, y0) : x > t }` over all horizontal lines `y0` and
    /// thresholds `t`, including the empty set.
    pub fn half_line_sets(&self) -> Vec<Subset> {
        let xs = self.cuts(|p| p.0);
        let ys = self.cuts(|p| p.1);
        let mut sets = alloc::vec![Subset::empty(self.len())];
        for &y0 in &ys[1..] {
            for &t in &xs {
                sets.push(self.select(|x, y| y == y0 && x > t));
            }
        }
        sets
    }
}

/// Quarter-plane family on the diagonal antichain of `n` points.
///
/// Every member is a contiguous run of points, and every nonempty run occurs,
/// so the family has `n` singletons and needs `1 + ceil(log2 n)` to be bounded.
pub fn quarterplane_family(n: usize) -> SetFamily {
    let pts = PointSet::diagonal_antichain(n);
    SetFamily::from_parts(Arc::new(pts.ground()), pts.quarterplane_sets())
}

/// Half-line family on `rows × cols` grid points.
pub fn half_line_grid(rows: usize, cols: usize) -> SetFamily {
    let pts = PointSet::grid(rows, cols);
    SetFamily::from_parts(Arc::new(pts.ground()), pts.half_line_sets())
}

/// Half-line family on the diagonal `(i, i)`: the empty set and `n` singletons.
pub fn diagonal_half_lines(n: usize) -> SetFamily {
    let pts = PointSet::diagonal(n);
    SetFamily::from_parts(Arc::new(pts.ground()), pts.half_line_sets())
}

/// Prefixes `{0..k}` for `k = 0..=m`.
pub fn prefix_chain(m: usize) -> SetFamily {
    SetFamily::from_parts(
        Arc::new(GroundSet::indexed(m)),
        (0..=m).map(|k| Subset::range(m, 0, k)).collect(),
    )
}

/// Support of the union of the two axis chains on the diagonal antichain of
/// `n` points: every complement of a contiguous run, so `j + 1` members of
/// each size `j < n`.
pub fn diagonal_union_of_chains(n: usize) -> SetFamily {
    let pts = PointSet::diagonal_antichain(n);
    let xs = pts.x_threshold_chain();
    let ys = pts.y_threshold_chain();
    let mut sets = Vec::with_capacity(xs.len() * ys.len());
    for a in &xs {
        for b in &ys {
            sets.push(a.union(b));
        }
    }
    SetFamily::from_parts(Arc::new(pts.ground()), sets)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn quarterplane_small_cases() {
        let f = quarterplane_family(1);
        assert_eq!(f.len(), 1);
        assert_eq!(f.sets()[0], Subset::from_indices(1, [0]));

        let f = quarterplane_family(3);
        assert_eq!(f.count_of_size(1), 3);
        assert_eq!(f.len(), 6);

        let f = quarterplane_family(8);
        assert!(f.min_boundedness().min_d >= 4);
    }

    #[test]
    fn quarterplane_members_are_runs() {
        let f = quarterplane_family(7);
        assert_eq!(f.len(), 7 * 8 / 2);
        for s in f.sets() {
            let idx: Vec<usize> = s.iter().collect();
            assert!(idx.windows(2).all(|w| w[1] == w[0] + 1));
        }
    }

    #[test]
    fn threshold_chains_are_chains() {
        let pts = PointSet::new(alloc::vec![(3, 1), (1, 5), (2, 2), (2, 7)]);
        let xs = pts.x_threshold_chain();
        assert_eq!(xs.len(), 4);
        assert!(xs.windows(2).all(|w| w[0].is_strict_subset(&w[1])));
        assert!(xs[0].is_empty());
        assert_eq!(xs[3].len(), 4);
    }

    #[test]
    fn union_of_chains_profile() {
        let f = diagonal_union_of_chains(10);
        for j in 0..10 {
            assert_eq!(f.count_of_size(j), j + 1, "size {j}");
        }
        assert_eq!(f.count_of_size(10), 1);
        assert!(f.is_d_bounded(2));
    }

    #[test]
    fn half_lines() {
        let f = diagonal_half_lines(4);
        assert_eq!(f.len(), 5);
        let g = half_line_grid(3, 3);
        // empty set plus three nonempty suffixes per row
        assert_eq!(g.len(), 10);
    }
}

//! Seeded random families and expressions for property checks.

use alloc::sync::Arc;
use alloc::vec;
use alloc::vec::Vec;

use rand_core::RngCore;

use crate::family::{GroundSet, SetFamily, Subset};
use crate::rules::{CardinalityBound, FamilyExpr};

/// Uniform integer in `0..n` by multiply-shift on 32 random bits.
pub fn below<R: RngCore>(rng: &mut R, n: usize) -> usize {
    ((rng.next_u32() as u64 * n as u64) >> 32) as usize
}

/// Each element included independently with probability 1/2.
pub fn random_subset<R: RngCore>(rng: &mut R, m: usize) -> Subset {
    Subset::from_indices(m, (0..m).filter(|_| rng.next_u32() & 1 == 1))
}

/// Each element included independently with probability 3/4.
fn dense_subset<R: RngCore>(rng: &mut R, m: usize) -> Subset {
    Subset::from_indices(m, (0..m).filter(|_| rng.next_u32() & 3 != 0))
}

/// Between 0 and `max_members` uniformly random subsets (before deduplication).
pub fn random_family<R: RngCore>(rng: &mut R, ground: &Arc<GroundSet>, max_members: usize) -> SetFamily {
    let m = ground.len();
    let k = below(rng, max_members + 1);
    let sets = (0..k).map(|_| random_subset(rng, m)).collect();
    SetFamily::new(ground.clone(), sets).expect("subsets built over the ground set")
}

/// A strictly increasing chain of 1 to `max_len` sets, grown by adding
/// random elements in a random order.
pub fn random_chain<R: RngCore>(rng: &mut R, m: usize, max_len: usize) -> Vec<Subset> {
    let mut order: Vec<usize> = (0..m).collect();
    for i in (1..order.len()).rev() {
        order.swap(i, below(rng, i + 1));
    }
    let len = 1 + below(rng, max_len.min(m + 1).max(1));
    // Strictly increasing cut points in 0..=m.
    let mut cuts: Vec<usize> = Vec::with_capacity(len);
    let mut candidates: Vec<usize> = (0..=m).collect();
    for _ in 0..len {
        let i = below(rng, candidates.len());
        cuts.push(candidates.swap_remove(i));
    }
    cuts.sort_unstable();
    cuts.iter().map(|&c| Subset::from_indices(m, order[..c].iter().copied())).collect()
}

/// Shape parameters for [`random_expr`].
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct ExprShape {
    pub max_depth: usize,
    pub max_fanout: usize,
    pub max_chain: usize,
    pub max_explicit: usize,
}

impl Default for ExprShape {
    fn default() -> Self {
        ExprShape {
            max_depth: 3,
            max_fanout: 3,
            max_chain: 6,
            max_explicit: 6,
        }
    }
}

/// Upper bound on the size of any member of the expression's support.
pub fn max_support_size(e: &FamilyExpr, m: usize) -> usize {
    match e {
        FamilyExpr::Chain(sets) => sets.iter().map(Subset::len).max().unwrap_or(0),
        FamilyExpr::Deterministic(s) => s.len(),
        FamilyExpr::Explicit { family, .. } => family.max_cardinality(),
        FamilyExpr::Union(c) => c.iter().map(|c| max_support_size(c, m)).sum::<usize>().min(m),
        FamilyExpr::Intersect { children, .. } => children.iter().map(|c| max_support_size(c, m)).min().unwrap_or(0),
    }
}

fn random_leaf<R: RngCore>(rng: &mut R, ground: &Arc<GroundSet>, shape: &ExprShape) -> FamilyExpr {
    let m = ground.len();
    match below(rng, 10) {
        0..=4 => FamilyExpr::Chain(random_chain(rng, m, shape.max_chain)),
        5..=6 => FamilyExpr::Deterministic(dense_subset(rng, m)),
        _ => loop {
            let f = random_family(rng, ground, shape.max_explicit);
            if !f.is_empty() {
                break FamilyExpr::explicit(f);
            }
        },
    }
}

/// Random expression of depth at most `shape.max_depth` to which the rules apply.
///
/// Intersections either designate a child with a valid cardinality bound
/// (`k` = an upper bound on its member sizes plus 1 and a small slack), or
/// intersect one random child with deterministic sets.
pub fn random_expr<R: RngCore>(rng: &mut R, ground: &Arc<GroundSet>, shape: &ExprShape) -> FamilyExpr {
    random_expr_at(rng, ground, shape, shape.max_depth)
}

fn random_expr_at<R: RngCore>(rng: &mut R, ground: &Arc<GroundSet>, shape: &ExprShape, depth: usize) -> FamilyExpr {
    if depth == 0 || below(rng, 5) == 0 {
        return random_leaf(rng, ground, shape);
    }
    let m = ground.len();
    let fanout = 1 + below(rng, shape.max_fanout.max(1));
    match below(rng, 4) {
        0 | 1 => FamilyExpr::Union((0..fanout).map(|_| random_expr_at(rng, ground, shape, depth - 1)).collect()),
        2 => {
            let children: Vec<FamilyExpr> = (0..fanout).map(|_| random_expr_at(rng, ground, shape, depth - 1)).collect();
            let child = below(rng, children.len());
            let k = max_support_size(&children[child], m) + 1 + below(rng, 3);
            FamilyExpr::Intersect {
                children,
                bounded: Some(CardinalityBound { child, k }),
            }
        }
        _ => {
            let mut children = vec![random_expr_at(rng, ground, shape, depth - 1)];
            for _ in 1..fanout.max(2) {
                children.push(FamilyExpr::Deterministic(dense_subset(rng, m)));
            }
            let last = children.len() - 1;
            children.swap(0, below(rng, last + 1));
            FamilyExpr::Intersect {
                children,
                bounded: None,
            }
        }
    }
}

/// Calls `f` with every family of 0 to `max_members` distinct subsets of an
/// `m`-element universe, as sorted masks.
pub fn for_each_small_family(m: usize, max_members: usize, mut f: impl FnMut(&[u64])) {
    assert!(m < 64);
    let universe = 1u64 << m;
    let mut current: Vec<u64> = Vec::with_capacity(max_members);
    fn rec(start: u64, universe: u64, left: usize, current: &mut Vec<u64>, f: &mut dyn FnMut(&[u64])) {
        f(current);
        if left == 0 {
            return;
        }
        for s in start..universe {
            current.push(s);
            rec(s + 1, universe, left - 1, current, f);
            current.pop();
        }
    }
    rec(0, universe, max_members, &mut current, &mut f);
}

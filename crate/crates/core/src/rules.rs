//! Compositional random-set supports and rule-derived UI-dimension bounds.
//!
//! Bounds are combined bottom-up:
//!
//! | node | bound |
//! |------|-------|
//! | chain (ordered by containment) | 1 |
//! | deterministic set | 0 |
//! | explicit family | declared, else exact |
//! | union | sum of child bounds |
//! | intersection with a child of cardinality `< k` | `ceil(sum · log2 k)` |
//! | intersection of one random child with deterministic sets | that child's bound |
//!
//! A deterministic set counts as dimension 0 inside the arithmetic, but a
//! reported dimension is never below 1.

use alloc::format;
use alloc::sync::Arc;
use alloc::vec::Vec;

use crate::dimension::{ui_dimension_exact, ExactLimits};
use crate::error::{Error, Result};
use crate::family::{GroundSet, SetFamily, Subset};

/// Designates the intersection child whose every member has fewer than `k`
/// elements.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct CardinalityBound {
    pub child: usize,
    pub k: usize,
}

/// Expression describing the support of a composite random set.
#[derive(Debug, Clone, PartialEq)]
pub enum FamilyExpr {
    /// Strictly nested sets, smallest first.
    Chain(Vec<Subset>),
    Explicit {
        family: SetFamily,
        declared_dim: Option<u32>,
    },
    Deterministic(Subset),
    Union(Vec<FamilyExpr>),
    Intersect {
        children: Vec<FamilyExpr>,
        bounded: Option<CardinalityBound>,
    },
}

/// Which rule produced a node's bound.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Rule {
    ContainmentOrder,
    DeterministicLeaf,
    DeclaredDimension,
    ExactDimension,
    Union,
    /// Intersection with a child whose members have fewer than `k` elements.
    Intersection { k: usize },
    /// One random child intersected with deterministic sets.
    SingleSetIntersection,
    /// Intersection of deterministic sets only.
    DeterministicIntersection,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct RuleTrace {
    pub rule: Rule,
    pub bound: u32,
    pub children: Vec<RuleTrace>,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct BoundDerivation {
    pub bound: u32,
    pub trace: RuleTrace,
}

impl BoundDerivation {
    /// The bound as a UI dimension, which is at least 1.
    pub fn final_dimension(&self) -> u32 {
        self.bound.max(1)
    }
}

/// Cap on the number of sets produced by any single union or intersection step.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct ExpandLimits {
    pub max_sets: usize,
}

impl Default for ExpandLimits {
    fn default() -> Self {
        ExpandLimits { max_sets: 1_000_000 }
    }
}

/// Exact dimension of the expanded support next to the rule bound.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct Verification {
    pub exact: u32,
    pub bound: u32,
    pub sound: bool,
}

/// `ceil(sum · log2 k)`, exact when `k` is a power of two.
pub fn intersection_bound(sum: u32, k: usize) -> u32 {
    if k.is_power_of_two() {
        sum * k.trailing_zeros()
    } else {
        libm::ceil(sum as f64 * libm::log2(k as f64)) as u32
    }
}

impl FamilyExpr {
    pub fn chain(sets: Vec<Subset>) -> Self {
        FamilyExpr::Chain(sets)
    }

    pub fn explicit(family: SetFamily) -> Self {
        FamilyExpr::Explicit {
            family,
            declared_dim: None,
        }
    }

    pub fn intersect_bounded(children: Vec<FamilyExpr>, child: usize, k: usize) -> Self {
        FamilyExpr::Intersect {
            children,
            bounded: Some(CardinalityBound { child, k }),
        }
    }

    /// Checks structural invariants that do not need expansion.
    pub fn validate(&self) -> Result<()> {
        match self {
            FamilyExpr::Chain(sets) => {
                if sets.is_empty() {
                    return Err(Error::InvalidExpression("chain with no sets".into()));
                }
                if let Some(i) = sets.windows(2).position(|w| !w[0].is_strict_subset(&w[1])) {
                    return Err(Error::InvalidExpression(format!(
                        "chain set {} is not strictly contained in set {}",
                        i,
                        i + 1
                    )));
                }
                Ok(())
            }
            FamilyExpr::Explicit { family, declared_dim } => {
                if family.is_empty() {
                    return Err(Error::InvalidExpression("explicit family with no sets".into()));
                }
                if *declared_dim == Some(0) {
                    return Err(Error::InvalidExpression("declared dimension must be positive".into()));
                }
                Ok(())
            }
            FamilyExpr::Deterministic(_) => Ok(()),
            FamilyExpr::Union(children) => {
                if children.is_empty() {
                    return Err(Error::InvalidExpression("union with no children".into()));
                }
                children.iter().try_for_each(FamilyExpr::validate)
            }
            FamilyExpr::Intersect { children, bounded } => {
                if children.is_empty() {
                    return Err(Error::InvalidExpression("intersection with no children".into()));
                }
                if let Some(b) = bounded {
                    if b.child >= children.len() {
                        return Err(Error::InvalidExpression(format!(
                            "bounded child index {} out of range for {} children",
                            b.child,
                            children.len()
                        )));
                    }
                    if b.k == 0 {
                        return Err(Error::InvalidExpression("cardinality bound k must be at least 1".into()));
                    }
                }
                children.iter().try_for_each(FamilyExpr::validate)
            }
        }
    }

    /// Rule-derived upper bound on the UI dimension of the support.
    pub fn eval_bound(&self, limits: &ExactLimits) -> Result<BoundDerivation> {
        self.validate()?;
        let trace = self.trace(limits)?;
        Ok(BoundDerivation {
            bound: trace.bound,
            trace,
        })
    }

    fn trace(&self, limits: &ExactLimits) -> Result<RuleTrace> {
        let leaf = |rule, bound| RuleTrace {
            rule,
            bound,
            children: Vec::new(),
        };
        Ok(match self {
            FamilyExpr::Chain(_) => leaf(Rule::ContainmentOrder, 1),
            FamilyExpr::Deterministic(_) => leaf(Rule::DeterministicLeaf, 0),
            FamilyExpr::Explicit {
                declared_dim: Some(d),
                ..
            } => leaf(Rule::DeclaredDimension, *d),
            FamilyExpr::Explicit { family, .. } if family.len() == 1 => leaf(Rule::DeterministicLeaf, 0),
            FamilyExpr::Explicit { family, .. } => leaf(Rule::ExactDimension, ui_dimension_exact(family, limits)?.dim),
            FamilyExpr::Union(children) => {
                let children = children.iter().map(|c| c.trace(limits)).collect::<Result<Vec<_>>>()?;
                RuleTrace {
                    rule: Rule::Union,
                    bound: children.iter().map(|c| c.bound).sum(),
                    children,
                }
            }
            FamilyExpr::Intersect { children, bounded } => {
                let children = children.iter().map(|c| c.trace(limits)).collect::<Result<Vec<_>>>()?;
                let sum: u32 = children.iter().map(|c| c.bound).sum();
                let (rule, bound) = match bounded {
                    Some(b) => (Rule::Intersection { k: b.k }, intersection_bound(sum, b.k)),
                    None => {
                        // Zero bounds come only from deterministic supports.
                        let random: Vec<u32> = children.iter().map(|c| c.bound).filter(|&b| b > 0).collect();
                        match random.as_slice() {
                            [] => (Rule::DeterministicIntersection, 0),
                            [only] => (Rule::SingleSetIntersection, *only),
                            _ => return Err(Error::IntersectionRuleInapplicable),
                        }
                    }
                };
                RuleTrace { rule, bound, children }
            }
        })
    }

    /// Lists the support of the composite random set.
    pub fn expand(&self, ground: &Arc<GroundSet>, limits: &ExpandLimits) -> Result<SetFamily> {
        self.validate()?;
        let sets = self.expand_sets(ground.len(), limits)?;
        Ok(SetFamily::from_parts(ground.clone(), sets))
    }

    fn expand_sets(&self, m: usize, limits: &ExpandLimits) -> Result<Vec<Subset>> {
        let check = |s: &Subset| {
            if s.universe() == m {
                Ok(())
            } else {
                Err(Error::UniverseMismatch {
                    expected: m,
                    found: s.universe(),
                })
            }
        };
        match self {
            FamilyExpr::Chain(sets) => {
                sets.iter().try_for_each(check)?;
                Ok(sets.clone())
            }
            FamilyExpr::Explicit { family, .. } => {
                if family.ground_size() != m {
                    return Err(Error::UniverseMismatch {
                        expected: m,
                        found: family.ground_size(),
                    });
                }
                Ok(family.sets().to_vec())
            }
            FamilyExpr::Deterministic(s) => {
                check(s)?;
                Ok(alloc::vec![s.clone()])
            }
            FamilyExpr::Union(children) => combine(children, m, limits, Subset::union),
            FamilyExpr::Intersect { children, bounded } => {
                if let Some(b) = bounded {
                    let bounded_sets = children[b.child].expand_sets(m, limits)?;
                    if let Some(s) = bounded_sets.iter().find(|s| s.len() >= b.k) {
                        return Err(Error::CardinalityBoundViolated { size: s.len(), k: b.k });
                    }
                }
                combine(children, m, limits, Subset::intersection)
            }
        }
    }

    /// Expands the support, computes its exact UI dimension and compares it
    /// with the rule bound.
    pub fn verify_bound(
        &self,
        ground: &Arc<GroundSet>,
        expand_limits: &ExpandLimits,
        exact_limits: &ExactLimits,
    ) -> Result<Verification> {
        let bound = self.eval_bound(exact_limits)?;
        let family = self.expand(ground, expand_limits)?;
        let exact = ui_dimension_exact(&family, exact_limits)?.dim;
        Ok(Verification {
            exact,
            bound: bound.bound,
            sound: exact <= bound.final_dimension(),
        })
    }

    /// Depth of the expression tree; leaves have depth 0.
    pub fn depth(&self) -> usize {
        match self {
            FamilyExpr::Union(c) | FamilyExpr::Intersect { children: c, .. } => {
                1 + c.iter().map(FamilyExpr::depth).max().unwrap_or(0)
            }
            _ => 0,
        }
    }
}

/// Folds children pairwise: choose a member of the accumulated support, then
/// a member of the next child, and combine them.
fn combine(
    children: &[FamilyExpr],
    m: usize,
    limits: &ExpandLimits,
    op: fn(&Subset, &Subset) -> Subset,
) -> Result<Vec<Subset>> {
    let mut acc = children[0].expand_sets(m, limits)?;
    for child in &children[1..] {
        let next = child.expand_sets(m, limits)?;
        if acc.len().saturating_mul(next.len()) > limits.max_sets {
            return Err(Error::ExpansionCap {
                limit: limits.max_sets,
                accumulated: acc.len(),
                next: next.len(),
            });
        }
        let mut out = Vec::with_capacity(acc.len() * next.len());
        for a in &acc {
            for b in &next {
                out.push(op(a, b));
            }
        }
        out.sort_unstable();
        out.dedup();
        acc = out;
    }
    Ok(acc)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::scenarios::PointSet;
    use alloc::vec;

    fn lim() -> ExactLimits {
        ExactLimits::default()
    }

    fn s(m: usize, idx: &[usize]) -> Subset {
        Subset::from_indices(m, idx.iter().copied())
    }

    fn chain(m: usize, sets: &[&[usize]]) -> FamilyExpr {
        FamilyExpr::Chain(sets.iter().map(|x| s(m, x)).collect())
    }

    #[test]
    fn union_of_two_chains_is_two() {
        let e = FamilyExpr::Union(vec![chain(2, &[&[0]]), chain(2, &[&[1]])]);
        assert_eq!(e.eval_bound(&lim()).unwrap().bound, 2);
    }

    #[test]
    fn chain_alone_is_one() {
        assert_eq!(chain(3, &[&[0], &[0, 1]]).eval_bound(&lim()).unwrap().bound, 1);
    }

    #[test]
    fn intersection_with_bounded_deterministic_child() {
        let e = FamilyExpr::intersect_bounded(
            vec![FamilyExpr::Deterministic(s(6, &[0, 1, 2, 3])), chain(6, &[&[0], &[0, 4]])],
            0,
            5,
        );
        let d = e.eval_bound(&lim()).unwrap();
        assert_eq!(d.bound, 3);
        assert_eq!(d.trace.rule, Rule::Intersection { k: 5 });
        assert_eq!(d.trace.children.iter().map(|c| c.bound).collect::<Vec<_>>(), vec![0, 1]);
    }

    #[test]
    fn single_set_intersection_keeps_child_bound() {
        let inner = FamilyExpr::Union(vec![chain(3, &[&[0]]), chain(3, &[&[1], &[1, 2]])]);
        let e = FamilyExpr::Intersect {
            children: vec![inner.clone(), FamilyExpr::Deterministic(s(3, &[0, 1]))],
            bounded: None,
        };
        let d = e.eval_bound(&lim()).unwrap();
        assert_eq!(d.bound, inner.eval_bound(&lim()).unwrap().bound);
        assert_eq!(d.trace.rule, Rule::SingleSetIntersection);
    }

    #[test]
    fn unbounded_intersection_is_refused() {
        let pts = PointSet::diagonal_antichain(4);
        let err = pts.intersection_of_axis_chains().eval_bound(&lim()).unwrap_err();
        assert_eq!(err, Error::IntersectionRuleInapplicable);
    }

    #[test]
    fn deterministic_leaf_reports_one() {
        let d = FamilyExpr::Deterministic(s(2, &[0])).eval_bound(&lim()).unwrap();
        assert_eq!((d.bound, d.final_dimension()), (0, 1));
    }

    #[test]
    fn intersection_bound_rounds_up() {
        assert_eq!(intersection_bound(1, 5), 3);
        assert_eq!(intersection_bound(3, 8), 9);
        assert_eq!(intersection_bound(2, 1), 0);
        assert_eq!(intersection_bound(2, 3), 4);
    }

    #[test]
    fn expand_examples() {
        let g = Arc::new(GroundSet::indexed(2));
        let e = FamilyExpr::Union(vec![chain(2, &[&[0]]), chain(2, &[&[1]])]);
        let f = e.expand(&g, &ExpandLimits::default()).unwrap();
        assert_eq!(f.sets(), &[s(2, &[0, 1])]);

        let e = FamilyExpr::Intersect {
            children: vec![chain(2, &[&[0], &[0, 1]]), FamilyExpr::Deterministic(s(2, &[0]))],
            bounded: None,
        };
        assert_eq!(e.expand(&g, &ExpandLimits::default()).unwrap().sets(), &[s(2, &[0])]);
    }

    #[test]
    fn expand_respects_cap() {
        let m = 8;
        let pts = PointSet::diagonal_antichain(m);
        let g = Arc::new(pts.ground());
        let err = pts.union_of_axis_chains().expand(&g, &ExpandLimits { max_sets: 10 }).unwrap_err();
        assert_eq!(err, Error::ExpansionCap { limit: 10, accumulated: 9, next: 9 });
    }

    #[test]
    fn bounded_child_is_validated() {
        let g = Arc::new(GroundSet::indexed(3));
        let e = FamilyExpr::intersect_bounded(vec![chain(3, &[&[0], &[0, 1]]), chain(3, &[&[2]])], 0, 2);
        assert_eq!(
            e.expand(&g, &ExpandLimits::default()).unwrap_err(),
            Error::CardinalityBoundViolated { size: 2, k: 2 }
        );
    }

    #[test]
    fn invalid_chain_rejected() {
        let e = chain(2, &[&[0], &[1]]);
        assert!(matches!(e.validate(), Err(Error::InvalidExpression(_))));
    }

    #[test]
    fn verify_examples() {
        let g = Arc::new(GroundSet::indexed(2));
        let e = FamilyExpr::Union(vec![chain(2, &[&[0]]), chain(2, &[&[1]])]);
        let v = e.verify_bound(&g, &ExpandLimits::default(), &lim()).unwrap();
        assert_eq!(v, Verification { exact: 1, bound: 2, sound: true });

        let pts = PointSet::diagonal_antichain(4);
        let g4 = Arc::new(pts.ground());
        let v = pts.union_of_axis_chains().verify_bound(&g4, &ExpandLimits::default(), &lim()).unwrap();
        assert!(v.sound && v.exact <= 2 && v.bound == 2);

        let g6 = Arc::new(GroundSet::indexed(6));
        let c = FamilyExpr::Chain((1..=6).map(|k| Subset::range(6, 0, k)).collect());
        assert_eq!(c.verify_bound(&g6, &ExpandLimits::default(), &lim()).unwrap(), Verification { exact: 1, bound: 1, sound: true });
    }

    #[test]
    fn union_expansion_matches_threshold_sweep() {
        let pts = PointSet::diagonal_antichain(3);
        let g = Arc::new(pts.ground());
        let expanded = pts.union_of_axis_chains().expand(&g, &ExpandLimits::default()).unwrap();
        // Direct sweep over every pair of cuts.
        let mut direct = Vec::new();
        for tx in 0..=3 {
            for ty in 0..=3 {
                direct.push(pts.select(|x, y| x > tx || y > ty));
            }
        }
        assert_eq!(expanded, SetFamily::from_parts(g, direct));
    }
}

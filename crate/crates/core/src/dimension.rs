//! Brute-force UI and VC dimension over small ground sets.
//!
//! Both searches enumerate restrictions `H ∩ h'`. Only subsets `h'` of the
//! union `U` of all members need to be visited: elements outside `U` belong to
//! no member, so `H ∩ h' = H ∩ (h' ∩ U)`. Since `h' ∩ U` is a submask of `h'`
//! it is also numerically no larger, so the smallest-mask witness found on the
//! pruned space is the smallest-mask witness overall.

use alloc::vec;
use alloc::vec::Vec;

use crate::error::{Error, Result};
use crate::family::{min_d_of, SetFamily, Subset};
use crate::par;

/// Caps for exponential enumeration.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct ExactLimits {
    /// Largest ground set enumerated exactly. Never more than 63.
    pub max_ground: usize,
}

impl Default for ExactLimits {
    fn default() -> Self {
        ExactLimits { max_ground: 20 }
    }
}

impl ExactLimits {
    pub fn new(max_ground: usize) -> Self {
        ExactLimits { max_ground }
    }

    fn check(&self, m: usize) -> Result<()> {
        let limit = self.max_ground.min(63);
        if m > limit {
            return Err(Error::Infeasible { size: m, limit });
        }
        Ok(())
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct UiDimension {
    pub dim: u32,
    /// Smallest-mask `h'` whose restriction needs `dim`.
    pub witness: Subset,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct VcDimension {
    pub dim: u32,
    /// Smallest-mask shattered set of size `dim`.
    pub witness: Subset,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct DimensionReport {
    pub ui_dim: u32,
    pub ui_witness: Subset,
    pub vc_dim: u32,
    pub vc_witness: Subset,
}

/// Exact UI dimension and VC dimension in one report.
pub fn analyze(family: &SetFamily, limits: &ExactLimits) -> Result<DimensionReport> {
    let ui = ui_dimension_exact(family, limits)?;
    let vc = vc_dimension_exact(family, limits)?;
    Ok(DimensionReport {
        ui_dim: ui.dim,
        ui_witness: ui.witness,
        vc_dim: vc.dim,
        vc_witness: vc.witness,
    })
}

/// Universes up to this size count distinct restrictions with a stamp table
/// of `2^m` entries; larger ones sort.
const STAMP_TABLE_MAX: usize = 16;
const CHUNK: u64 = 1024;

/// Counts the distinct members of `H ∩ h'` per cardinality.
struct RestrictionCounter {
    m: usize,
    stamps: Vec<u32>,
    generation: u32,
    scratch: Vec<u64>,
    counts: Vec<usize>,
}

impl RestrictionCounter {
    fn new(m: usize) -> Self {
        let stamps = if m <= STAMP_TABLE_MAX { vec![0; 1 << m] } else { Vec::new() };
        RestrictionCounter {
            m,
            stamps,
            generation: 0,
            scratch: Vec::new(),
            counts: vec![0; m + 1],
        }
    }

    /// Fills `counts` and returns the number of distinct restrictions.
    fn count(&mut self, masks: &[u64], h: u64) -> usize {
        self.counts.iter_mut().for_each(|c| *c = 0);
        let mut distinct = 0;
        if self.m <= STAMP_TABLE_MAX {
            if self.generation == u32::MAX {
                self.stamps.iter_mut().for_each(|s| *s = 0);
                self.generation = 0;
            }
            self.generation += 1;
            for &f in masks {
                let x = (f & h) as usize;
                if self.stamps[x] != self.generation {
                    self.stamps[x] = self.generation;
                    self.counts[x.count_ones() as usize] += 1;
                    distinct += 1;
                }
            }
        } else {
            self.scratch.clear();
            self.scratch.extend(masks.iter().map(|&f| f & h));
            self.scratch.sort_unstable();
            self.scratch.dedup();
            for &x in &self.scratch {
                self.counts[x.count_ones() as usize] += 1;
            }
            distinct = self.scratch.len();
        }
        distinct
    }

    fn min_d(&mut self, masks: &[u64], h: u64) -> u32 {
        self.count(masks, h);
        min_d_of(self.counts.iter().copied().enumerate()).0
    }
}

fn bit_positions(mask: u64) -> Vec<u32> {
    (0..64).filter(|b| mask >> b & 1 == 1).collect()
}

/// Spreads the low bits of `idx` onto `positions` (in increasing order).
/// Monotone in `idx`, so increasing indices give increasing masks.
fn deposit(idx: u64, positions: &[u32]) -> u64 {
    positions
        .iter()
        .enumerate()
        .filter(|(i, _)| idx >> i & 1 == 1)
        .fold(0, |acc, (_, &p)| acc | 1 << p)
}

fn prepared(family: &SetFamily, limits: &ExactLimits) -> Result<Vec<u64>> {
    limits.check(family.ground_size())?;
    Ok(family.masks().expect("ground size checked against 63"))
}

/// Exact UI dimension: the largest `min_d` over all restrictions `H ∩ h'`.
pub fn ui_dimension_exact(family: &SetFamily, limits: &ExactLimits) -> Result<UiDimension> {
    ui_dimension_search(family, limits, true)
}

/// Same as [`ui_dimension_exact`] but enumerating every `h'` of the ground set.
pub fn ui_dimension_unpruned(family: &SetFamily, limits: &ExactLimits) -> Result<UiDimension> {
    ui_dimension_search(family, limits, false)
}

fn ui_dimension_search(family: &SetFamily, limits: &ExactLimits, prune: bool) -> Result<UiDimension> {
    let masks = prepared(family, limits)?;
    let m = family.ground_size();
    let space = if prune {
        masks.iter().fold(0, |a, &f| a | f)
    } else {
        Subset::full(m).as_u64().unwrap_or(0)
    };
    let positions = bit_positions(space);
    let total = 1u64 << positions.len();

    let best = par::map_chunks(total, CHUNK, |range| {
        let mut counter = RestrictionCounter::new(m);
        let mut best: Option<(u32, u64)> = None;
        for idx in range {
            let h = deposit(idx, &positions);
            let d = counter.min_d(&masks, h);
            if best.is_none_or(|(bd, _)| d > bd) {
                best = Some((d, h));
            }
        }
        best
    })
    .into_iter()
    .flatten()
    .fold(None, |acc: Option<(u32, u64)>, (d, h)| match acc {
        Some((bd, _)) if bd >= d => acc,
        _ => Some((d, h)),
    })
    .unwrap_or((1, 0));

    Ok(UiDimension {
        dim: best.0,
        witness: Subset::from_mask(m, best.1),
    })
}

/// Next mask with the same popcount (Gosper's hack).
fn next_combination(x: u64) -> u64 {
    let c = x & x.wrapping_neg();
    let r = x + c;
    (((r ^ x) >> 2) / c) | r
}

/// Exact VC dimension by increasing candidate size, stopping at the first size
/// with no shattered set (shattering is inherited by subsets).
///
/// The empty family shatters nothing; by convention it reports dimension 0
/// with the empty witness.
pub fn vc_dimension_exact(family: &SetFamily, limits: &ExactLimits) -> Result<VcDimension> {
    let masks = prepared(family, limits)?;
    let m = family.ground_size();
    let mut best = VcDimension {
        dim: 0,
        witness: Subset::empty(m),
    };
    if masks.is_empty() {
        return Ok(best);
    }
    let positions = bit_positions(masks.iter().fold(0, |a, &f| a | f));
    let mut counter = RestrictionCounter::new(m);
    for size in 1..=positions.len() {
        if (masks.len() as u128) < 1u128 << size {
            break;
        }
        let end = 1u64 << positions.len();
        let mut idx = (1u64 << size) - 1;
        let mut found = None;
        while idx < end {
            let h = deposit(idx, &positions);
            if counter.count(&masks, h) == 1usize << size {
                found = Some(h);
                break;
            }
            idx = next_combination(idx);
        }
        match found {
            Some(h) => {
                best = VcDimension {
                    dim: size as u32,
                    witness: Subset::from_mask(m, h),
                }
            }
            None => break,
        }
    }
    Ok(best)
}

/// `Σ_{j=0..size} (j+1)^(d-1)`, the most members a restriction to `size`
/// elements can have when every restriction is d-bounded. Saturates.
pub fn bounded_restriction_capacity(d: u32, size: usize) -> u128 {
    (0..=size as u128).fold(0u128, |acc, j| {
        acc.saturating_add((j + 1).saturating_pow(d.saturating_sub(1)))
    })
}

/// Largest VC dimension compatible with UI dimension `d`: one less than the
/// smallest `D` with `Σ_{j=0..D} (j+1)^(d-1) < 2^D`.
pub fn vc_upper_from_ui(d: u32) -> u32 {
    let mut size = 1usize;
    loop {
        if size < 127 && bounded_restriction_capacity(d, size) < 1u128 << size {
            return size as u32 - 1;
        }
        size += 1;
    }
}

/// Checks `|H ∩ h'| <= Σ_{j=0..|h'|} (j+1)^(d-1)` for every `h'` of the
/// ground set, with `d` the exact UI dimension. Always `true` for a correct
/// implementation.
pub fn check_ui_vc_inequality(family: &SetFamily, limits: &ExactLimits) -> Result<bool> {
    let d = ui_dimension_exact(family, limits)?.dim;
    let masks = prepared(family, limits)?;
    let m = family.ground_size();
    let total = 1u64 << m;
    let ok = par::map_chunks(total, CHUNK, |range| {
        let mut counter = RestrictionCounter::new(m);
        range.into_iter().all(|h| {
            let n = counter.count(&masks, h) as u128;
            n <= bounded_restriction_capacity(d, h.count_ones() as usize)
        })
    });
    Ok(ok.into_iter().all(|b| b))
}

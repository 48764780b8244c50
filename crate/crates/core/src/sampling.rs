//! Bernoulli colorings, adversarial selection and Monte Carlo tail-bound checks.
//!
//! Every element of the ground set is colored red independently with
//! probability `p`. For a set `T` with `t` elements of which `reds` are red,
//! the imbalance is `|reds - p·t|`.
//!
//! # Randomness
//!
//! Colorings come from ChaCha8 seeded with `seed_from_u64(master_seed)`; trial
//! `i` of a batch uses stream `i` of that generator. Element `k` draws one
//! `u64` `x`, and is red iff `(x >> 11) · 2^-53 < p`. Trials are therefore
//! independent of scheduling and batches are bit-identical for any number of
//! threads.

use alloc::collections::VecDeque;
use alloc::format;
use alloc::vec::Vec;

use rand_chacha::ChaCha8Rng;
use rand_core::{RngCore, SeedableRng};

use crate::error::{Error, Result};
use crate::family::{ceiling, GroundSet, SetFamily, Subset};
use crate::par;

/// `sqrt(t · ln t)`, the deviation unit of the tail bounds.
pub fn sqln(t: f64) -> Result<f64> {
    if t.is_nan() || t < 1.0 {
        return Err(Error::Domain(format!("sqln needs t >= 1, got {t}")));
    }
    Ok(sqln_unchecked(t))
}

fn sqln_unchecked(t: f64) -> f64 {
    libm::sqrt(t * libm::log(t))
}

/// A probability bound kept both as the raw formula value and clamped to `[0, 1]`.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct ProbabilityBound {
    pub raw: f64,
    pub clamped: f64,
}

impl ProbabilityBound {
    pub fn new(raw: f64) -> Self {
        ProbabilityBound {
            raw,
            clamped: raw.clamp(0.0, 1.0),
        }
    }
}

/// Hoeffding bound `2·exp(-2q²/t)` on `P[|reds - p·t| > q]` for a fixed set of size `t`.
pub fn hoeffding_failure_bound(t: u64, q: f64) -> ProbabilityBound {
    ProbabilityBound::new(2.0 * libm::exp(-2.0 * q * q / t as f64))
}

/// `2 / t^(2r²)`: failure probability for a fixed set of size `t` at
/// threshold `r·sqln(t)`.
pub fn deterministic_set_bound(t: u64, r: f64) -> ProbabilityBound {
    ProbabilityBound::new(2.0 * libm::exp(-2.0 * r * r * libm::log(t as f64)))
}

/// Failure probability for a d-bounded random set restricted to sizes
/// `>= t_min`, in the stated form `4/t_min`.
pub fn random_set_bound(t_min: usize) -> ProbabilityBound {
    ProbabilityBound::new(4.0 / t_min as f64)
}

/// `4/(t_min - 1)`, a rigorous upper bound on `Σ_{j >= t_min} 4/j²`
/// (integral comparison from `t_min - 1`). Needs `t_min >= 2`.
pub fn random_set_bound_rigorous(t_min: usize) -> ProbabilityBound {
    ProbabilityBound::new(4.0 / (t_min as f64 - 1.0))
}

/// The two sides of the per-cardinality union bound,
/// `2(j+1)^(d-1) / j^(2d²)` and `4 / j²`, in natural-log form so that large
/// exponents neither overflow nor underflow.
pub fn union_cascade_log_terms(j: u64, d: u32) -> (f64, f64) {
    let (j, d) = (j as f64, d as f64);
    let lhs = libm::log(2.0) + (d - 1.0) * libm::log(j + 1.0) - 2.0 * d * d * libm::log(j);
    let rhs = libm::log(4.0) - 2.0 * libm::log(j);
    (lhs, rhs)
}

/// Three-sigma one-sided Monte Carlo slack around a probability `q`.
pub fn mc_slack(q: f64, trials: u64) -> f64 {
    let q = q.clamp(0.0, 1.0);
    3.0 * libm::sqrt(q * (1.0 - q) / trials as f64) + 1e-9
}

pub fn imbalance(reds: usize, t: usize, p: f64) -> f64 {
    libm::fabs(reds as f64 - p * t as f64)
}

fn check_p(p: f64) -> Result<()> {
    if p > 0.0 && p <= 1.0 {
        Ok(())
    } else {
        Err(Error::Domain(format!("p must lie in (0, 1], got {p}")))
    }
}

/// The red elements of one random coloring.
#[derive(Debug, Clone, PartialEq)]
pub struct Coloring {
    red: Subset,
    p: f64,
    seed: u64,
    stream: u64,
}

impl Coloring {
    /// Colors `m` elements from stream `stream` of the generator seeded by `seed`.
    pub fn generate(m: usize, p: f64, seed: u64, stream: u64) -> Result<Self> {
        check_p(p)?;
        let mut rng = ChaCha8Rng::seed_from_u64(seed);
        rng.set_stream(stream);
        let mut red = Subset::empty(m);
        for i in 0..m {
            let u = (rng.next_u64() >> 11) as f64 * (1.0 / (1u64 << 53) as f64);
            if u < p {
                red.insert(i);
            }
        }
        Ok(Coloring { red, p, seed, stream })
    }

    pub fn red(&self) -> &Subset {
        &self.red
    }

    pub fn p(&self) -> f64 {
        self.p
    }

    pub fn seed(&self) -> u64 {
        self.seed
    }

    pub fn stream(&self) -> u64 {
        self.stream
    }

    pub fn ground_size(&self) -> usize {
        self.red.universe()
    }

    pub fn reds_in(&self, set: &Subset) -> usize {
        set.intersection_len(&self.red)
    }
}

/// Colors a ground set from stream 0 of `seed`.
pub fn color_population(ground: &GroundSet, p: f64, seed: u64) -> Result<Coloring> {
    Coloring::generate(ground.len(), p, seed, 0)
}

/// What the adversary maximises when picking a member.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Objective {
    /// `|reds - p·t|`.
    Imbalance,
    /// `|reds - p·t| / sqln(t)`; members smaller than 2 are ignored.
    Ratio,
}

/// The adversary's pick together with its red count.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Selection {
    pub set: Subset,
    pub reds: usize,
}

/// A support the adversary can choose from.
pub trait Support: Sync {
    fn ground_size(&self) -> usize;

    /// Largest member size, used to reject impossible `t_min` upfront.
    fn max_member_size(&self) -> usize;

    /// Member with `|h| >= t_min` maximising `objective`; ties go to the
    /// smallest bitmask. `None` when no member is large enough.
    fn select(&self, coloring: &Coloring, t_min: usize, objective: Objective) -> Option<Selection>;
}

struct SqlnTable(Vec<f64>);

impl SqlnTable {
    fn new(max: usize) -> Self {
        SqlnTable((0..=max).map(|t| if t == 0 { 0.0 } else { sqln_unchecked(t as f64) }).collect())
    }
}

fn score(reds: usize, t: usize, p: f64, objective: Objective, table: &SqlnTable) -> f64 {
    let v = imbalance(reds, t, p);
    match objective {
        Objective::Imbalance => v,
        Objective::Ratio => v / table.0[t],
    }
}

fn effective_t_min(t_min: usize, objective: Objective) -> usize {
    match objective {
        Objective::Imbalance => t_min,
        Objective::Ratio => t_min.max(2),
    }
}

impl Support for SetFamily {
    fn ground_size(&self) -> usize {
        SetFamily::ground_size(self)
    }

    fn max_member_size(&self) -> usize {
        self.max_cardinality()
    }

    fn select(&self, coloring: &Coloring, t_min: usize, objective: Objective) -> Option<Selection> {
        let t_min = effective_t_min(t_min, objective);
        let table = SqlnTable::new(self.max_cardinality());
        let p = coloring.p();
        let mut best: Option<(f64, usize, usize)> = None;
        for (i, s) in self.sets().iter().enumerate() {
            let t = s.len();
            if t < t_min {
                continue;
            }
            let reds = coloring.reds_in(s);
            let v = score(reds, t, p, objective, &table);
            if best.is_none_or(|(bv, _, _)| v > bv) {
                best = Some((v, i, reds));
            }
        }
        best.map(|(_, i, reds)| Selection {
            set: self.sets()[i].clone(),
            reds,
        })
    }
}

/// Every nonempty contiguous run `{l, .., r-1}` of `n` elements.
///
/// This is the quarter-plane support on the diagonal antichain (see
/// [`crate::scenarios::quarterplane_family`]) without listing its `n(n+1)/2`
/// members, so the adversary can be evaluated on large populations.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct RunSupport {
    pub n: usize,
}

/// Candidate run `[l, r)` with its score; ordered by score, then by bitmask.
#[derive(Clone, Copy)]
struct Run {
    value: f64,
    l: usize,
    r: usize,
}

impl Run {
    /// `true` when `self` beats `other`: higher score, or equal score and
    /// smaller bitmask (smaller `r`, then larger `l`).
    fn beats(&self, other: &Run) -> bool {
        self.value > other.value || (self.value == other.value && (self.r < other.r || (self.r == other.r && self.l > other.l)))
    }
}

impl RunSupport {
    fn prefix_reds(&self, coloring: &Coloring) -> Vec<usize> {
        let mut prefix = Vec::with_capacity(self.n + 1);
        prefix.push(0);
        let mut acc = 0;
        for i in 0..self.n {
            acc += coloring.red().contains(i) as usize;
            prefix.push(acc);
        }
        prefix
    }

    /// Linear scan: for each right end, the best left end is an extreme of
    /// the centred walk `A[i] = reds(0..i) - p·i`.
    fn max_imbalance(&self, prefix: &[usize], p: f64, t_min: usize) -> Option<Run> {
        let t_min = t_min.max(1);
        if self.n < t_min {
            return None;
        }
        let walk: Vec<f64> = prefix.iter().enumerate().map(|(i, &c)| c as f64 - p * i as f64).collect();
        let (mut lo, mut hi) = (0usize, 0usize);
        let mut best: Option<(f64, usize, usize)> = None;
        for r in t_min..=self.n {
            let l = r - t_min;
            if walk[l] <= walk[lo] {
                lo = l;
            }
            if walk[l] >= walk[hi] {
                hi = l;
            }
            let (v, l) = if walk[r] - walk[lo] >= walk[hi] - walk[r] {
                (walk[r] - walk[lo], lo)
            } else {
                (walk[hi] - walk[r], hi)
            };
            if best.is_none_or(|(bv, _, _)| v > bv) {
                best = Some((v, l, r));
            }
        }
        best.map(|(_, l, r)| Run {
            value: imbalance(prefix[r] - prefix[l], r - l, p),
            l,
            r,
        })
    }

    /// Exact maximum ratio. Lengths are scanned in dyadic bands; a band is
    /// skipped when the largest walk range over windows of its top length,
    /// divided by `sqln` of its bottom length, cannot reach the current best.
    fn max_ratio(&self, prefix: &[usize], p: f64, t_min: usize) -> Option<Run> {
        let n = self.n;
        let t_min = t_min.max(2);
        if n < t_min {
            return None;
        }
        let walk: Vec<f64> = prefix.iter().enumerate().map(|(i, &c)| c as f64 - p * i as f64).collect();
        let step = p.max(1.0 - p);
        let mut best: Option<Run> = None;
        let mut lo_len = t_min;
        while lo_len <= n {
            let hi_len = ((lo_len + 1).next_power_of_two() - 1).clamp(lo_len, n);
            let floor = sqln_unchecked(lo_len as f64);
            if let Some(b) = &best {
                let reach = window_range(&walk, hi_len).min(step * hi_len as f64) / floor;
                if reach * (1.0 + 1e-9) + 1e-12 < b.value {
                    lo_len = hi_len + 1;
                    continue;
                }
            }
            for len in lo_len..=hi_len {
                let denom = sqln_unchecked(len as f64);
                for l in 0..=n - len {
                    let r = l + len;
                    let cand = Run {
                        value: imbalance(prefix[r] - prefix[l], len, p) / denom,
                        l,
                        r,
                    };
                    if best.as_ref().is_none_or(|b| cand.beats(b)) {
                        best = Some(cand);
                    }
                }
            }
            lo_len = hi_len + 1;
        }
        best
    }
}

/// Largest `max - min` of `walk` over any `width + 1` consecutive entries.
fn window_range(walk: &[f64], width: usize) -> f64 {
    let mut maxq: VecDeque<usize> = VecDeque::new();
    let mut minq: VecDeque<usize> = VecDeque::new();
    let mut best = 0.0f64;
    for (i, &v) in walk.iter().enumerate() {
        while maxq.back().is_some_and(|&j| walk[j] <= v) {
            maxq.pop_back();
        }
        maxq.push_back(i);
        while minq.back().is_some_and(|&j| walk[j] >= v) {
            minq.pop_back();
        }
        minq.push_back(i);
        while maxq.front().is_some_and(|&j| j + width < i) {
            maxq.pop_front();
        }
        while minq.front().is_some_and(|&j| j + width < i) {
            minq.pop_front();
        }
        best = best.max(walk[maxq[0]] - walk[minq[0]]);
    }
    best
}

impl Support for RunSupport {
    fn ground_size(&self) -> usize {
        self.n
    }

    fn max_member_size(&self) -> usize {
        self.n
    }

    fn select(&self, coloring: &Coloring, t_min: usize, objective: Objective) -> Option<Selection> {
        let prefix = self.prefix_reds(coloring);
        let run = match objective {
            Objective::Imbalance => self.max_imbalance(&prefix, coloring.p(), t_min),
            Objective::Ratio => self.max_ratio(&prefix, coloring.p(), t_min),
        }?;
        Some(Selection {
            set: Subset::range(self.n, run.l, run.r),
            reds: prefix[run.r] - prefix[run.l],
        })
    }
}

/// One evaluated set under one coloring.
#[derive(Debug, Clone, PartialEq)]
pub struct ImbalanceRecord {
    pub set: Subset,
    pub size: usize,
    pub reds: usize,
    pub imbalance: f64,
    /// Threshold the imbalance is compared with, when one applies.
    pub bound_value: Option<f64>,
    /// `imbalance >= bound_value`; `false` without a threshold.
    pub exceeded: bool,
}

impl ImbalanceRecord {
    pub fn new(set: Subset, reds: usize, p: f64, bound_value: Option<f64>) -> Self {
        let size = set.len();
        let imbalance = imbalance(reds, size, p);
        ImbalanceRecord {
            set,
            size,
            reds,
            imbalance,
            bound_value,
            exceeded: bound_value.is_some_and(|b| imbalance >= b),
        }
    }

    /// `imbalance / sqln(size)`; infinite for nonzero imbalance on a singleton.
    pub fn ratio(&self) -> f64 {
        let s = if self.size == 0 { 0.0 } else { sqln_unchecked(self.size as f64) };
        self.imbalance / s
    }
}

/// Member with the largest imbalance among those with at least `t_min`
/// elements. With `d`, the record carries the threshold `d·sqln(size)`.
pub fn worst_imbalance<S: Support + ?Sized>(
    support: &S,
    coloring: &Coloring,
    t_min: usize,
    d: Option<f64>,
) -> Result<ImbalanceRecord> {
    let sel = support
        .select(coloring, t_min, Objective::Imbalance)
        .ok_or(Error::EmptySelection { t_min })?;
    let bound = d.map(|d| d * sqln_unchecked(sel.set.len().max(1) as f64));
    Ok(ImbalanceRecord::new(sel.set, sel.reds, coloring.p(), bound))
}

/// Outcome of a Monte Carlo batch.
#[derive(Debug, Clone, PartialEq)]
pub struct TrialBatch {
    pub trials: u64,
    pub master_seed: u64,
    pub p: f64,
    pub records: Vec<ImbalanceRecord>,
    pub failures: u64,
    pub empirical_failure_rate: f64,
    /// The bound the batch is checked against, if any.
    pub theoretical_bound: Option<ProbabilityBound>,
    /// A rigorous variant of `theoretical_bound` where the stated one is an
    /// approximation.
    pub rigorous_bound: Option<ProbabilityBound>,
}

impl TrialBatch {
    fn from_records(
        records: Vec<ImbalanceRecord>,
        master_seed: u64,
        p: f64,
        theoretical_bound: Option<ProbabilityBound>,
        rigorous_bound: Option<ProbabilityBound>,
    ) -> Self {
        let trials = records.len() as u64;
        let failures = records.iter().filter(|r| r.exceeded).count() as u64;
        TrialBatch {
            trials,
            master_seed,
            p,
            records,
            failures,
            empirical_failure_rate: if trials == 0 { 0.0 } else { failures as f64 / trials as f64 },
            theoretical_bound,
            rigorous_bound,
        }
    }

    /// `empirical_failure_rate <= bound + mc_slack(bound)` against the clamped
    /// theoretical bound. `true` when the batch has no bound.
    pub fn within_bound(&self) -> bool {
        self.theoretical_bound.is_none_or(|b| {
            self.empirical_failure_rate <= b.clamped + mc_slack(b.clamped, self.trials)
        })
    }
}

/// Fixed set of the first `t` elements; a failure is `imbalance >= r·sqln(t)`.
pub fn simulate_deterministic(t: usize, p: f64, r: f64, trials: u64, master_seed: u64) -> Result<TrialBatch> {
    check_p(p)?;
    if t < 2 {
        return Err(Error::Domain(format!("t must be at least 2, got {t}")));
    }
    if r.is_nan() || r < 1.0 {
        return Err(Error::Domain(format!("r must be at least 1, got {r}")));
    }
    let threshold = r * sqln_unchecked(t as f64);
    let records = par::map_indices(trials, |i| {
        let c = Coloring::generate(t, p, master_seed, i).expect("p checked");
        let set = Subset::full(t);
        let reds = c.red().len();
        ImbalanceRecord::new(set, reds, p, Some(threshold))
    });
    Ok(TrialBatch::from_records(
        records,
        master_seed,
        p,
        Some(deterministic_set_bound(t as u64, r)),
        None,
    ))
}

/// Adversarial batch over any support: each trial records the member with the
/// largest `imbalance / sqln(size)` among members of size `>= t_min`. That
/// member exceeds `d·sqln(size)` iff some member does.
pub fn simulate_support<S: Support + ?Sized>(
    support: &S,
    p: f64,
    d: f64,
    t_min: usize,
    trials: u64,
    master_seed: u64,
) -> Result<Vec<ImbalanceRecord>> {
    check_p(p)?;
    if t_min < 2 {
        return Err(Error::Domain(format!("t_min must be at least 2, got {t_min}")));
    }
    if support.max_member_size() < t_min {
        return Err(Error::EmptySelection { t_min });
    }
    let m = support.ground_size();
    let records = par::map_indices(trials, |i| {
        let c = Coloring::generate(m, p, master_seed, i).expect("p checked");
        let sel = support.select(&c, t_min, Objective::Ratio).expect("a member of size >= t_min exists");
        let threshold = d * sqln_unchecked(sel.set.len() as f64);
        ImbalanceRecord::new(sel.set, sel.reds, p, Some(threshold))
    });
    Ok(records)
}

/// Checks the d-bounded random-set tail bound on `family` with an adversary
/// that may pick any member.
pub fn simulate_random_set(
    family: &SetFamily,
    p: f64,
    d: u32,
    t_min: usize,
    trials: u64,
    master_seed: u64,
) -> Result<TrialBatch> {
    if d == 0 {
        return Err(Error::Domain("d must be at least 1".into()));
    }
    if let Some((&j, &count)) = family
        .profile()
        .iter()
        .find(|(&j, &c)| j >= 1 && c as u64 > ceiling(j, d))
    {
        return Err(Error::NotBounded {
            d,
            j,
            count,
            ceiling: ceiling(j, d),
        });
    }
    let records = simulate_support(family, p, d as f64, t_min, trials, master_seed)?;
    Ok(TrialBatch::from_records(
        records,
        master_seed,
        p,
        Some(random_set_bound(t_min)),
        Some(random_set_bound_rigorous(t_min)),
    ))
}

/// Same adversary on the quarter-plane support of `n` diagonal points, for
/// which no bound exists.
pub fn simulate_quarterplane(n: usize, p: f64, d: f64, t_min: usize, trials: u64, master_seed: u64) -> Result<TrialBatch> {
    let records = simulate_support(&RunSupport { n }, p, d, t_min, trials, master_seed)?;
    Ok(TrialBatch::from_records(records, master_seed, p, None, None))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::scenarios;
    use alloc::sync::Arc;
    use alloc::vec;

    #[test]
    fn sqln_values() {
        assert_eq!(sqln(1.0).unwrap(), 0.0);
        assert!((sqln(core::f64::consts::E).unwrap() - 1.648_721_270_7).abs() < 1e-9);
        assert!((sqln(1000.0).unwrap() - 83.112_906_8).abs() < 1e-6);
        assert!(sqln(0.5).is_err());
    }

    #[test]
    fn hoeffding_values() {
        let b = hoeffding_failure_bound(100, 0.0);
        assert_eq!((b.raw, b.clamped), (2.0, 1.0));
        let q = sqln(100.0).unwrap();
        assert!((hoeffding_failure_bound(100, q).raw - 2e-4).abs() < 1e-15);
        let b = hoeffding_failure_bound(100, 2.0 * q).raw;
        assert!((b / 2e-16 - 1.0).abs() < 1e-9);
        assert!((deterministic_set_bound(100, 2.0).raw / 2e-16 - 1.0).abs() < 1e-9);
    }

    #[test]
    fn coloring_is_reproducible() {
        let a = Coloring::generate(500, 0.3, 7, 3).unwrap();
        let b = Coloring::generate(500, 0.3, 7, 3).unwrap();
        assert_eq!(a, b);
        let c = Coloring::generate(500, 0.3, 7, 4).unwrap();
        assert_ne!(a.red(), c.red());
        let all = Coloring::generate(64, 1.0, 1, 0).unwrap();
        assert_eq!(all.red().len(), 64);
        assert!(Coloring::generate(3, 0.0, 1, 0).is_err());
        assert!(Coloring::generate(3, 1.5, 1, 0).is_err());
    }

    #[test]
    fn color_population_concentrates() {
        let g = GroundSet::indexed(10_000);
        let within = (0..200)
            .filter(|&seed| {
                let c = color_population(&g, 0.5, seed).unwrap();
                (c.red().len() as f64 - 5000.0).abs() <= 3.0 * (10_000.0f64 * 0.25).sqrt()
            })
            .count();
        assert!(within >= 198, "{within}");
    }

    #[test]
    fn worst_imbalance_examples() {
        let f = scenarios::quarterplane_family(6);
        let c = Coloring::generate(6, 1.0, 0, 0).unwrap();
        let rec = worst_imbalance(&f, &c, 0, None).unwrap();
        assert_eq!(rec.imbalance, 0.0);

        let g = Arc::new(GroundSet::new(["a"]).unwrap());
        let f = SetFamily::from_names(g, &[vec!["a"]]).unwrap();
        let c = (0..).map(|s| Coloring::generate(1, 0.5, s, 0).unwrap()).find(|c| c.red().len() == 1).unwrap();
        assert_eq!(worst_imbalance(&f, &c, 0, None).unwrap().imbalance, 0.5);

        assert_eq!(
            worst_imbalance(&f, &c, 2, None).unwrap_err(),
            Error::EmptySelection { t_min: 2 }
        );
    }

    #[test]
    fn threshold_record() {
        let rec = ImbalanceRecord::new(Subset::full(4), 4, 0.5, Some(sqln(4.0).unwrap()));
        assert_eq!(rec.imbalance, 2.0);
        assert!(!rec.exceeded);
        let rec = ImbalanceRecord::new(Subset::full(4), 4, 0.5, Some(2.0));
        assert!(rec.exceeded);
    }

    #[test]
    fn run_support_matches_explicit_scan() {
        for n in [1usize, 2, 5, 13, 40] {
            let fam = scenarios::quarterplane_family(n);
            let runs = RunSupport { n };
            for seed in 0..25 {
                for &p in &[0.5, 0.3, 0.9] {
                    let c = Coloring::generate(n, p, seed, 0).unwrap();
                    for t_min in [0usize, 1, 2, 3, 7] {
                        let a = fam.select(&c, t_min, Objective::Ratio);
                        let b = runs.select(&c, t_min, Objective::Ratio);
                        assert_eq!(a, b, "ratio n={n} seed={seed} p={p} t_min={t_min}");
                        let a = fam.select(&c, t_min, Objective::Imbalance);
                        let b = runs.select(&c, t_min, Objective::Imbalance);
                        match (a, b) {
                            (None, None) => {}
                            (Some(a), Some(b)) => {
                                let va = imbalance(a.reds, a.set.len(), p);
                                let vb = imbalance(b.reds, b.set.len(), p);
                                assert!((va - vb).abs() < 1e-9, "imbalance n={n} seed={seed}");
                            }
                            other => panic!("mismatch {other:?}"),
                        }
                    }
                }
            }
        }
    }

    #[test]
    fn window_range_brute_force() {
        let walk: [f64; 7] = [0.0, 1.5, -0.5, 2.0, 0.0, -3.0, 1.0];
        for w in 0..8 {
            let mut best = 0.0f64;
            for i in 0..walk.len() {
                for j in i..walk.len().min(i + w + 1) {
                    best = best.max((walk[i] - walk[j]).abs());
                }
            }
            assert_eq!(window_range(&walk, w), best, "width {w}");
        }
    }

    #[test]
    fn deterministic_batch_small_t() {
        // t = 4: the imbalance is at most 2 < sqln(4) ≈ 2.355.
        let b = simulate_deterministic(4, 0.5, 1.0, 2000, 11).unwrap();
        assert_eq!(b.failures, 0);
        let b = simulate_deterministic(50, 1.0, 1.0, 100, 11).unwrap();
        assert_eq!(b.failures, 0);
        assert!(b.records.iter().all(|r| r.imbalance == 0.0));
    }

    #[test]
    fn random_set_requires_boundedness() {
        let f = scenarios::quarterplane_family(8);
        let err = simulate_random_set(&f, 0.5, 2, 2, 10, 0).unwrap_err();
        assert!(matches!(err, Error::NotBounded { d: 2, j: 1, count: 8, .. }));
    }

    #[test]
    fn random_set_p_one_never_fails() {
        let f = scenarios::prefix_chain(50);
        let b = simulate_random_set(&f, 1.0, 1, 10, 200, 3).unwrap();
        assert_eq!(b.failures, 0);
    }

    #[test]
    fn cascade_at_one_is_vacuous() {
        for d in 1..=6u32 {
            let (lhs, rhs) = union_cascade_log_terms(1, d);
            assert!(1.0 - libm::exp(lhs) < 0.0 && 1.0 - libm::exp(rhs) < 0.0);
            if d >= 3 {
                assert!(lhs > rhs);
            }
        }
    }
}

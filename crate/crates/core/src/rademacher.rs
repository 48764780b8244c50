//! Rademacher complexity of a family viewed as 0/1 vectors, in the
//! expected-supremum form `m·Rad(H) = E_σ[ max_{h ∈ H} Σ_{i ∈ h} σ_i ]`.
//!
//! Signs are `+1` for red and `-1` for uncolored elements, so at `p = 1/2` the
//! signed sum over a set is `|T^R| - |T^U|`. Logarithms are natural.

use alloc::format;
use alloc::vec;
use alloc::vec::Vec;

use rand_chacha::ChaCha8Rng;
use rand_core::{RngCore, SeedableRng};

use crate::error::{Error, Result};
use crate::family::{SetFamily, Subset};
use crate::par;

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct RadLimits {
    /// Largest ground set for exact enumeration of `2^m` sign vectors.
    pub max_ground: usize,
}

impl Default for RadLimits {
    fn default() -> Self {
        RadLimits { max_ground: 22 }
    }
}

#[derive(Debug, Clone, Copy, PartialEq)]
pub enum Method {
    Exact,
    MonteCarlo { samples: u64, seed: u64, std_error: f64 },
}

/// Complexity of the members of one cardinality.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct SliceReport {
    pub j: usize,
    pub count: usize,
    pub value: f64,
    /// `sqrt(2(d-1)·j·ln(j+1))` with `d` the family's smallest boundedness degree.
    pub bound: f64,
}

#[derive(Debug, Clone, PartialEq)]
pub struct RadReport {
    pub m: usize,
    pub value: f64,
    pub method: Method,
    /// Massart bound for `|H|` vectors of norm `sqrt(max |h|)`.
    pub massart: f64,
    pub slices: Vec<SliceReport>,
}

/// Massart's bound `c·sqrt(2 ln N)` for `N` vectors of norm at most `c`.
pub fn massart_bound(n: u64, c: f64) -> f64 {
    assert!(n >= 1, "Massart bound needs at least one vector");
    c * libm::sqrt(2.0 * libm::log(n as f64))
}

/// `sqrt(2(d-1)·j·ln(j+1))`, Massart's bound for at most `(j+1)^(d-1)` sets of size `j`.
pub fn slice_bound(j: usize, d: u32) -> f64 {
    libm::sqrt(2.0 * (d as f64 - 1.0) * j as f64 * libm::log(j as f64 + 1.0))
}

/// `sqrt(m · 2D · ln(e·m/D))`, the VC-dimension bound on `m·Rad(H)`.
pub fn vc_rad_bound(vc_dim: usize, m: usize) -> Result<f64> {
    if vc_dim == 0 || vc_dim > m {
        return Err(Error::Domain(format!("VC bound needs 1 <= D <= m, got D = {vc_dim}, m = {m}")));
    }
    let (d, m) = (vc_dim as f64, m as f64);
    Ok(libm::sqrt(m * 2.0 * d * libm::log(core::f64::consts::E * m / d)))
}

/// `Σ_{i ∈ h} σ_i` where `σ_i = +1` on `positive` and `-1` elsewhere.
pub fn signed_sum(h: &Subset, positive: &Subset) -> i64 {
    2 * h.intersection_len(positive) as i64 - h.len() as i64
}

/// Members grouped by cardinality, ascending.
struct Slices {
    groups: Vec<(usize, Vec<Subset>)>,
}

impl Slices {
    fn new(family: &SetFamily) -> Self {
        let groups = family
            .profile()
            .keys()
            .map(|&j| (j, family.sets().iter().filter(|s| s.len() == j).cloned().collect()))
            .collect();
        Slices { groups }
    }

    /// Per-slice suprema for one sign vector, written into `out`.
    fn suprema(&self, positive: &Subset, out: &mut [i64]) {
        for (slot, (_, sets)) in out.iter_mut().zip(&self.groups) {
            *slot = sets.iter().map(|h| signed_sum(h, positive)).max().unwrap_or(i64::MIN);
        }
    }

    fn report(&self, family: &SetFamily, values: &[f64]) -> Vec<SliceReport> {
        let d = family.min_boundedness().min_d;
        self.groups
            .iter()
            .zip(values)
            .filter(|((j, _), _)| *j >= 1)
            .map(|((j, sets), &value)| SliceReport {
                j: *j,
                count: sets.len(),
                value,
                bound: slice_bound(*j, d),
            })
            .collect()
    }
}

fn massart_for(family: &SetFamily) -> f64 {
    massart_bound(family.len() as u64, libm::sqrt(family.max_cardinality() as f64))
}

const CHUNK: u64 = 4096;

/// Exact expectation over all `2^m` equally likely sign vectors.
pub fn rademacher_exact(family: &SetFamily, limits: &RadLimits) -> Result<RadReport> {
    if family.is_empty() {
        return Err(Error::EmptyFamily);
    }
    let m = family.ground_size();
    let limit = limits.max_ground.min(40);
    if m > limit {
        return Err(Error::Infeasible { size: m, limit });
    }
    let slices = Slices::new(family);
    let k = slices.groups.len();
    let total = 1u64 << m;
    // Integer sums keep the expectation exact up to the final division.
    let partial = par::map_chunks(total, CHUNK, |range| {
        let mut sums = vec![0i64; k + 1];
        let mut sup = vec![0i64; k];
        for s in range {
            let positive = Subset::from_indices(m, (0..m).filter(|i| s >> i & 1 == 1));
            slices.suprema(&positive, &mut sup);
            for (acc, v) in sums.iter_mut().zip(&sup) {
                *acc += v;
            }
            sums[k] += sup.iter().copied().max().unwrap_or(0);
        }
        sums
    });
    let mut sums = vec![0i64; k + 1];
    for p in partial {
        for (a, b) in sums.iter_mut().zip(p) {
            *a += b;
        }
    }
    let scale = total as f64;
    let values: Vec<f64> = sums.iter().map(|&s| s as f64 / scale).collect();
    Ok(RadReport {
        m,
        value: values[k],
        method: Method::Exact,
        massart: massart_for(family),
        slices: slices.report(family, &values[..k]),
    })
}

fn random_signs(m: usize, seed: u64, stream: u64) -> Subset {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    rng.set_stream(stream);
    let mut s = Subset::empty(m);
    let mut word = 0u64;
    for i in 0..m {
        if i % 64 == 0 {
            word = rng.next_u64();
        }
        if word >> (i % 64) & 1 == 1 {
            s.insert(i);
        }
    }
    s
}

/// Sample mean over `samples` sign vectors; sample `i` uses stream `i` of the
/// ChaCha8 generator seeded with `seed`, one random bit per element.
pub fn rademacher_mc(family: &SetFamily, samples: u64, seed: u64) -> Result<RadReport> {
    if family.is_empty() {
        return Err(Error::EmptyFamily);
    }
    if samples == 0 {
        return Err(Error::Domain("at least one sample is needed".into()));
    }
    let m = family.ground_size();
    let slices = Slices::new(family);
    let k = slices.groups.len();
    let draws = par::map_chunks(samples, CHUNK, |range| {
        let mut sums = vec![0i64; k];
        let mut overall = Vec::with_capacity((range.end - range.start) as usize);
        let mut sup = vec![0i64; k];
        for i in range {
            slices.suprema(&random_signs(m, seed, i), &mut sup);
            for (acc, v) in sums.iter_mut().zip(&sup) {
                *acc += v;
            }
            overall.push(sup.iter().copied().max().unwrap_or(0));
        }
        (sums, overall)
    });
    let mut sums = vec![0i64; k];
    let mut values = Vec::with_capacity(samples as usize);
    for (s, o) in draws {
        for (a, b) in sums.iter_mut().zip(s) {
            *a += b;
        }
        values.extend(o);
    }
    let n = samples as f64;
    let mean = values.iter().map(|&v| v as f64).sum::<f64>() / n;
    let var = if samples > 1 {
        values.iter().map(|&v| (v as f64 - mean) * (v as f64 - mean)).sum::<f64>() / (n - 1.0)
    } else {
        0.0
    };
    let slice_values: Vec<f64> = sums.iter().map(|&s| s as f64 / n).collect();
    Ok(RadReport {
        m,
        value: mean,
        method: Method::MonteCarlo {
            samples,
            seed,
            std_error: libm::sqrt(var / n),
        },
        massart: massart_for(family),
        slices: slices.report(family, &slice_values),
    })
}

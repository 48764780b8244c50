//! Index-ordered map helpers that run on rayon when the `parallel` feature is on.
//!
//! Every helper returns results in index order, so callers reduce them the
//! same way regardless of how work was scheduled.

use alloc::vec::Vec;
use core::ops::Range;

pub(crate) fn map_indices<T, F>(n: u64, f: F) -> Vec<T>
where
    T: Send,
    F: Fn(u64) -> T + Sync + Send,
{
    #[cfg(feature = "parallel")]
    {
        use rayon::prelude::*;
        (0..n).into_par_iter().map(f).collect()
    }
    #[cfg(not(feature = "parallel"))]
    {
        (0..n).map(f).collect()
    }
}

/// Splits `0..n` into consecutive chunks of `chunk` indices and maps each.
pub(crate) fn map_chunks<T, F>(n: u64, chunk: u64, f: F) -> Vec<T>
where
    T: Send,
    F: Fn(Range<u64>) -> T + Sync + Send,
{
    let chunk = chunk.max(1);
    let chunks = n.div_ceil(chunk);
    map_indices(chunks, |c| {
        let lo = c * chunk;
        f(lo..(lo + chunk).min(n))
    })
}

//! Deterministic reductions.
//!
//! Parallel loops collect per-item results in index order and reduce them
//! with a fixed pairwise tree, so results do not depend on thread count.

use std::ops::Add;

use rayon::prelude::*;

use crate::error::{Error, Result};

pub fn pairwise_sum<T: Copy + Add<Output = T> + Default>(xs: &[T]) -> T {
    const LEAF: usize = 16;
    if xs.len() <= LEAF {
        return xs.iter().fold(T::default(), |a, &b| a + b);
    }
    let mid = xs.len() / 2;
    pairwise_sum(&xs[..mid]) + pairwise_sum(&xs[mid..])
}

/// Parallel map over `0..n` followed by a pairwise sum in index order.
pub fn par_sum<T, F>(n: usize, f: F) -> T
where
    T: Copy + Add<Output = T> + Default + Send,
    F: Fn(usize) -> T + Sync + Send,
{
    let parts: Vec<T> = (0..n).into_par_iter().map(f).collect();
    pairwise_sum(&parts)
}

/// Runs `f` on a dedicated pool with `threads` workers (0 = rayon default).
pub fn with_threads<R: Send>(threads: usize, f: impl FnOnce() -> R + Send) -> Result<R> {
    let pool = rayon::ThreadPoolBuilder::new()
        .num_threads(threads)
        .build()
        .map_err(|e| Error::param("threads", e.to_string()))?;
    Ok(pool.install(f))
}

pub(crate) fn check_budget(what: &str, needed: u128, limit: u128) -> Result<()> {
    if needed > limit {
        return Err(Error::BudgetExceeded { what: what.to_string(), needed, limit });
    }
    Ok(())
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn pairwise_matches_naive_on_integers() {
        let xs: Vec<i64> = (0..1000).collect();
        assert_eq!(pairwise_sum(&xs), 999 * 1000 / 2);
    }

    #[test]
    fn par_sum_is_thread_independent() {
        let f = |i: usize| (i as f64).sin() * 1e-3 + 1.0 / (i as f64 + 1.0);
        let a = with_threads(1, || par_sum(5000, f)).unwrap();
        let b = with_threads(3, || par_sum(5000, f)).unwrap();
        assert_eq!(a.to_bits(), b.to_bits());
    }
}

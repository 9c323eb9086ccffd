//! Parallel/sequential execution seam.
//!
//! Data-parallel inner loops (boosted estimators, sketch construction,
//! test batteries) go through [`map_indexed`], which uses rayon when the
//! `parallel` feature is enabled and a plain loop otherwise.
//! [`map_indexed_seq`] is always sequential; the benchmark suite compares
//! the two on identical workloads.

#[cfg(feature = "parallel")]
use rayon::prelude::*;

/// Applies `f` to `0..n` and collects results in index order.
#[cfg(feature = "parallel")]
pub fn map_indexed<T, F>(n: usize, f: F) -> Vec<T>
where
    T: Send,
    F: Fn(usize) -> T + Sync + Send,
{
    (0..n).into_par_iter().map(f).collect()
}

/// Applies `f` to `0..n` and collects results in index order.
#[cfg(not(feature = "parallel"))]
pub fn map_indexed<T, F>(n: usize, f: F) -> Vec<T>
where
    T: Send,
    F: Fn(usize) -> T + Sync + Send,
{
    (0..n).map(f).collect()
}

/// Sequential reference path for the same shape of work.
pub fn map_indexed_seq<T, F>(n: usize, f: F) -> Vec<T>
where
    F: Fn(usize) -> T,
{
    (0..n).map(f).collect()
}

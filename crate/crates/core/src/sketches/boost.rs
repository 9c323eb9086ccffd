//! Mean and median boosting for randomized estimators.
//!
//! Averaging s independent copies brings the failure probability of a
//! bounded-variance estimator down to a constant; taking the median of t
//! such averages drives it to any target delta with `t = ceil(72 ln(1/delta))`.

use crate::error::{Error, Result};
use crate::exec;

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct BoostConfig {
    pub epsilon: f64,
    pub delta: f64,
    /// Copies averaged per group (the mean trick).
    pub s: usize,
    /// Groups whose means feed the median (the median trick).
    pub t: usize,
}

impl BoostConfig {
    /// `s` chosen by the caller from the estimator's variance bound;
    /// `t = ceil(72 ln(1/delta))`.
    pub fn new(epsilon: f64, delta: f64, s: usize) -> Result<Self> {
        // NaN-rejecting comparisons: only strictly positive values pass.
        if epsilon.partial_cmp(&0.0) != Some(std::cmp::Ordering::Greater)
            || !(delta > 0.0 && delta < 1.0)
            || s == 0
        {
            return Err(Error::invalid("bad boost parameters"));
        }
        let t = (72.0 * (1.0 / delta).ln()).ceil() as usize;
        Ok(BoostConfig { epsilon, delta, s, t: t.max(1) })
    }

    /// For estimators with `Var <= E^2 / 2` (for example the Morris
    /// counter): `s = ceil(3 / (2 eps^2))`.
    pub fn for_half_quadratic_variance(epsilon: f64, delta: f64) -> Result<Self> {
        let s = (3.0 / (2.0 * epsilon * epsilon)).ceil() as usize;
        Self::new(epsilon, delta, s.max(1))
    }

    pub fn instances(&self) -> usize {
        self.s * self.t
    }
}

/// Runs `s * t` independent estimator instances (`factory(i)` must give
/// i.i.d. draws), averages within groups of `s`, and returns the median
/// of the `t` group means (lower middle element for even `t`).
pub fn boost_mean_median<F>(cfg: &BoostConfig, factory: F) -> f64
where
    F: Fn(usize) -> f64 + Sync + Send,
{
    let values = exec::map_indexed(cfg.instances(), factory);
    median_of_group_means(&values, cfg.s)
}

/// Sequential twin of [`boost_mean_median`] for benchmarking.
pub fn boost_mean_median_seq<F>(cfg: &BoostConfig, factory: F) -> f64
where
    F: Fn(usize) -> f64,
{
    let values = exec::map_indexed_seq(cfg.instances(), factory);
    median_of_group_means(&values, cfg.s)
}

fn median_of_group_means(values: &[f64], s: usize) -> f64 {
    let mut means: Vec<f64> =
        values.chunks(s).map(|g| g.iter().sum::<f64>() / g.len() as f64).collect();
    means.sort_by(|a, b| a.partial_cmp(b).unwrap());
    means[(means.len() - 1) / 2]
}

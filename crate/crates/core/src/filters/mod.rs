//! Approximate-membership filters.
//!
//! [`BloomFilter`] answers membership with a tunable false-positive rate
//! and no false negatives; [`CountingBloomFilter`] replaces its bits with
//! small saturating counters to support deletion; [`QuotientFilter`]
//! stores p-bit fingerprints split into a slot address and a remainder,
//! packed with three metadata bits per slot, and supports deletion with
//! no false negatives and cache-friendly cluster scans.

pub mod bloom;
pub mod counting;
pub mod quotient;

pub use bloom::{bloom_params, BloomFilter};
pub use counting::{cbf_params, CountingBloomFilter};
pub use quotient::{qf_params, QuotientFilter};

use crate::rng::splitmix64;

/// One seeded 64-bit mixer; the filters use k of these with independent
/// seeds in place of idealized fully-uniform hash functions.
#[inline]
pub(crate) fn mix_key(key: u64, seed: u64) -> u64 {
    splitmix64(key ^ seed)
}

/// Independent per-function seeds derived from a master seed.
pub(crate) fn derive_seeds(seed: u64, k: usize) -> Vec<u64> {
    (0..k as u64).map(|i| splitmix64(seed ^ splitmix64(i.wrapping_add(0xF1173)))).collect()
}

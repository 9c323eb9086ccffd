//! Sub-linear summaries: similarity sketches, approximate counters,
//! distinct-element estimators, sliding-window counting, and the
//! mean/median boosting combinators that drive their accuracy knobs.

pub mod boost;
pub mod dgim;
pub mod distinct;
pub mod hamming;
pub mod lsh;
pub mod minhash;
pub mod morris;

pub use boost::{boost_mean_median, boost_mean_median_seq, BoostConfig};
pub use dgim::DgimWindow;
pub use distinct::{fm_single_estimate, DistinctCounter};
pub use hamming::hamming_estimate;
pub use lsh::{lsh_fit_r, lsh_scurve, LshIndex};
pub use minhash::{jaccard_estimate, minhash_k, MinHashSketch};
pub use morris::MorrisCounter;

/// Prime modulus used by the unit-interval hash families: 2^61 - 1.
pub(crate) const UNIT_MODULUS: u64 = (1 << 61) - 1;

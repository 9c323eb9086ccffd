//! Streaming pattern matching.
//!
//! [`KrMatcher`] keeps the last n characters and slides a Rabin
//! fingerprint (O(n) words, O(1) delay). [`PpMatcher`] keeps only
//! O(log n) words: one window per pattern-prefix length 2^i, occurrences
//! compressed into arithmetic progressions, with window fingerprints
//! reconstructed from three bookkeeping fingerprints per level.
//! [`KMismatchMatcher`] layers prime-shift decomposition on top to report
//! occurrences within Hamming distance k.
//!
//! All matchers report an occurrence at the push that completes it (the
//! Porat-Porat matcher one push later, or at [`PpMatcher::finish`], which
//! takes the place of a trailing end-of-stream sentinel).

pub mod kr;
pub mod mismatch;
pub mod pp;

pub use kr::KrMatcher;
pub use mismatch::{prime_shift_set, KMismatchMatcher};
pub use pp::PpMatcher;

//! Compressed data structures and probabilistic stream summaries.
//!
//! The crate is organized in two halves. The first covers succinct and
//! compressed indexing: entropy measures and Huffman coding ([`entropy`]),
//! bit-level building blocks ([`succinct`]: packed bit arrays, a
//! zero-order-compressed rank/select bitvector, Elias-Fano sequences and
//! wavelet trees), and the full-text self-indexes built on top of them
//! ([`textindex`]: suffix arrays, the Burrows-Wheeler transform, a
//! psi-based compressed suffix array and an FM-index). The second half
//! covers randomized summaries: seeded hash families ([`hashing`]),
//! approximate-membership filters ([`filters`]), similarity sketches and
//! streaming estimators ([`sketches`]), and streaming pattern matchers
//! ([`streammatch`]).
//!
//! Every randomized component takes an explicit 64-bit seed; identical
//! seeds give identical behaviour, which the command-line tool relies on
//! for reproducible runs.
//!
//! With the `parallel` feature (on by default) embarrassingly parallel
//! work — boosted estimators, sketch construction over many hash
//! functions — runs on a rayon pool; without it the same entry points
//! fall back to sequential loops.

pub mod entropy;
pub mod error;
pub mod exec;
pub mod filters;
pub mod hashing;
pub mod rng;
pub mod sketches;
pub mod streammatch;
pub mod succinct;
pub mod textindex;
pub mod wire;

pub use error::{Error, Result};

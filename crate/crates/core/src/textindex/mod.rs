//! Full-text indexing: suffix arrays, the Burrows-Wheeler transform, and
//! two compressed self-indexes.
//!
//! [`CsaIndex`] stores the psi permutation split per symbol in Elias-Fano
//! sequences plus a first-occurrence bitvector simulating the F column;
//! [`FmIndex`] is a wavelet tree over the BWT driven by backward search.
//! Both resolve locate/extract through sampled (inverse) suffix-array
//! entries, every `ceil(log2 n)` text positions.
//!
//! Rows and text positions are 1-based at the API, matching the succinct
//! layer's convention.

pub mod bwt;
pub mod csa;
pub mod fm;
pub mod suffix;
pub mod text;

pub use bwt::{bwt_from_text, bwt_invert};
pub use csa::CsaIndex;
pub use fm::FmIndex;
pub use suffix::SuffixArray;
pub use text::{Text, SENTINEL};

/// Sample rate `ceil(log2 n)`, at least 1.
pub(crate) fn sample_rate(n: usize) -> usize {
    if n <= 2 {
        1
    } else {
        (usize::BITS - (n - 1).leading_zeros()) as usize
    }
}

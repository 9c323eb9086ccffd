//! Suffix array construction by prefix doubling.

use crate::error::{Error, Result};

use super::text::Text;

/// Sorted suffix order of a sentinel-terminated text.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct SuffixArray {
    /// `sa[i]` is the 0-based start of the i-th smallest suffix.
    sa: Vec<u32>,
    /// `isa[p] = i` iff `sa[i] = p`.
    isa: Vec<u32>,
}

impl SuffixArray {
    /// O(n log^2 n) prefix doubling: ranks are doubled in length each
    /// round and suffixes re-sorted by (rank, rank at offset k).
    pub fn build(text: &Text) -> Result<Self> {
        let bytes = text.bytes();
        let n = bytes.len();
        if n > u32::MAX as usize / 2 {
            return Err(Error::invalid("text too long"));
        }
        let mut sa: Vec<u32> = (0..n as u32).collect();
        let mut rank: Vec<i64> = bytes.iter().map(|&b| b as i64).collect();
        let mut next_rank = vec![0i64; n];
        let mut k = 1usize;
        loop {
            let key = |i: u32| -> (i64, i64) {
                let i = i as usize;
                let second = if i + k < n { rank[i + k] } else { -1 };
                (rank[i], second)
            };
            sa.sort_unstable_by_key(|&i| key(i));
            next_rank[sa[0] as usize] = 0;
            for t in 1..n {
                let bump = (key(sa[t]) != key(sa[t - 1])) as i64;
                next_rank[sa[t] as usize] = next_rank[sa[t - 1] as usize] + bump;
            }
            rank.copy_from_slice(&next_rank);
            if rank[sa[n - 1] as usize] as usize == n - 1 {
                break;
            }
            k *= 2;
        }
        let mut isa = vec![0u32; n];
        for (i, &p) in sa.iter().enumerate() {
            isa[p as usize] = i as u32;
        }
        Ok(SuffixArray { sa, isa })
    }

    pub fn len(&self) -> usize {
        self.sa.len()
    }

    pub fn is_empty(&self) -> bool {
        self.sa.is_empty()
    }

    /// 1-based text position of the suffix at 1-based row `i`.
    pub fn position(&self, i: usize) -> usize {
        self.sa[i - 1] as usize + 1
    }

    /// 1-based row of the suffix starting at 1-based text position `p`.
    pub fn row_of(&self, p: usize) -> usize {
        self.isa[p - 1] as usize + 1
    }

    /// The whole array in 1-based form, mostly for fixtures.
    pub fn positions(&self) -> Vec<usize> {
        self.sa.iter().map(|&p| p as usize + 1).collect()
    }

    pub(crate) fn sa0(&self) -> &[u32] {
        &self.sa
    }

    pub(crate) fn isa0(&self) -> &[u32] {
        &self.isa
    }
}

//! Burrows-Wheeler transform and its inversion.

use crate::error::{Error, Result};

use super::suffix::SuffixArray;
use super::text::{Text, SENTINEL};

/// Last column of the sorted-rotations matrix, in internal bytes.
///
/// `bwt[i] = text[sa[i] - 1]`, cyclically: the row whose suffix starts at
/// position 1 contributes the sentinel.
pub fn bwt_from_text(text: &Text) -> Result<Vec<u8>> {
    let sa = SuffixArray::build(text)?;
    Ok(bwt_from_sa(text, &sa))
}

pub(crate) fn bwt_from_sa(text: &Text, sa: &SuffixArray) -> Vec<u8> {
    let bytes = text.bytes();
    let n = bytes.len();
    sa.sa0().iter().map(|&p| bytes[(p as usize + n - 1) % n]).collect()
}

/// Inverts a BWT (internal bytes, exactly one sentinel) back to the text.
///
/// Walks the LF mapping starting from the first row, which always holds
/// the character preceding the sentinel, rebuilding the text backwards.
pub fn bwt_invert(bwt: &[u8]) -> Result<Text> {
    let n = bwt.len();
    if bwt.iter().filter(|&&b| b == SENTINEL).count() != 1 {
        return Err(Error::invalid("BWT must contain exactly one sentinel"));
    }
    // C[c]: number of characters smaller than c.
    let mut counts = [0usize; 256];
    for &b in bwt {
        counts[b as usize] += 1;
    }
    let mut c_array = [0usize; 256];
    let mut acc = 0;
    for b in 0..256 {
        c_array[b] = acc;
        acc += counts[b];
    }
    // occ[i]: rank of bwt[i] among equal characters before row i.
    let mut seen = [0usize; 256];
    let mut lf = vec![0usize; n];
    for (i, &b) in bwt.iter().enumerate() {
        lf[i] = c_array[b as usize] + seen[b as usize];
        seen[b as usize] += 1;
    }
    let mut out = vec![0u8; n];
    out[n - 1] = SENTINEL;
    let mut row = 0usize;
    for t in (0..n - 1).rev() {
        out[t] = bwt[row];
        if out[t] == SENTINEL {
            return Err(Error::invalid("sentinel appears before end of reconstruction"));
        }
        row = lf[row];
    }
    Text::new(&out[..n - 1])
}

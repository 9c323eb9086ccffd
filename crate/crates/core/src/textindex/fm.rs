//! FM-index: a wavelet tree over the BWT, queried by backward search.

use crate::error::{Error, Result};
use crate::succinct::{PackedIntArray, RsBitvector, WaveletTree};
use crate::wire::{Reader, Writer, MAGIC_INDEX};

use super::bwt::bwt_from_sa;
use super::suffix::SuffixArray;
use super::text::{Text, SENTINEL};

pub(crate) const KIND_FM: u8 = 2;

/// Full-text self-index over `WT(BWT(S))`.
///
/// Count is backward search: two wavelet-tree rank queries per pattern
/// character. Locate follows the LF mapping to the nearest sampled row;
/// extract walks LF backwards from a sampled inverse-SA entry, emitting
/// BWT characters in reverse.
#[derive(Debug, Clone)]
pub struct FmIndex {
    n: usize,
    /// Sorted distinct internal symbols.
    sigma: Vec<u8>,
    /// c_array[k]: number of text characters smaller than sigma[k].
    c_array: Vec<usize>,
    bwt_wt: WaveletTree,
    /// Sampled suffix-array values, in row order.
    ssa: PackedIntArray,
    /// Marks rows whose SA value is sampled (multiples of rho, plus 1).
    mark: RsBitvector,
    /// isa_samples[j] = row of text position 1 + j*rho; the row of
    /// position n is always row 1 and needs no storage.
    isa_samples: PackedIntArray,
    rho: usize,
}

impl FmIndex {
    pub fn build(text: &Text) -> Result<Self> {
        let sa = SuffixArray::build(text)?;
        Self::build_from_sa(text, &sa)
    }

    pub fn build_from_sa(text: &Text, sa: &SuffixArray) -> Result<Self> {
        let bytes = text.bytes();
        let n = bytes.len();
        let rho = super::sample_rate(n);

        let mut sigma: Vec<u8> = bytes.to_vec();
        sigma.sort_unstable();
        sigma.dedup();
        let mut counts = vec![0usize; sigma.len()];
        for &b in bytes {
            counts[sigma.binary_search(&b).unwrap()] += 1;
        }
        let mut c_array = vec![0usize; sigma.len()];
        for k in 1..sigma.len() {
            c_array[k] = c_array[k - 1] + counts[k - 1];
        }

        let bwt = bwt_from_sa(text, sa);
        let bwt_wt = WaveletTree::build(&bwt)?;

        // Sample SA values divisible by rho, plus the value 1 (LF walks
        // move backwards, so position 1 is the backstop).
        let mut mark_bits = vec![false; n];
        let mut ssa_values = Vec::new();
        for i in 1..=n {
            let v = sa.position(i);
            if v.is_multiple_of(rho) || v == 1 {
                mark_bits[i - 1] = true;
                ssa_values.push(v as u64);
            }
        }
        let mark = RsBitvector::from_bools(&mark_bits)?;
        let ssa = PackedIntArray::from_values(&ssa_values, PackedIntArray::width_for(n as u64));

        let isa_values: Vec<u64> =
            (0..).map(|j| 1 + j * rho).take_while(|&p| p <= n).map(|p| sa.row_of(p) as u64).collect();
        let isa_samples =
            PackedIntArray::from_values(&isa_values, PackedIntArray::width_for(n as u64));

        Ok(FmIndex { n, sigma, c_array, bwt_wt, ssa, mark, isa_samples, rho })
    }

    pub fn len(&self) -> usize {
        self.n
    }

    pub fn is_empty(&self) -> bool {
        false
    }

    pub fn sample_rate(&self) -> usize {
        self.rho
    }

    fn symbol_index(&self, c: u8) -> Option<usize> {
        self.sigma.binary_search(&c).ok()
    }

    /// One LF step: `C[c] + rank_c(i)` for `c = BWT[i]`.
    pub fn lf_step(&self, i: usize) -> Result<usize> {
        if i == 0 || i > self.n {
            return Err(Error::OutOfBounds { index: i, len: self.n });
        }
        let c = self.bwt_wt.access(i)?;
        let k = self.symbol_index(c).expect("BWT symbol in alphabet");
        Ok(self.c_array[k] + self.bwt_wt.rank(c, i)?)
    }

    /// Backward search: suffix-array range of suffixes prefixed by
    /// `pattern`, or `None` when absent.
    pub fn count_range(&self, pattern: &[u8]) -> Result<Option<(usize, usize)>> {
        if pattern.is_empty() {
            return Err(Error::invalid("empty pattern"));
        }
        let mut lo = 1usize;
        let mut hi = self.n;
        for &c in pattern.iter().rev() {
            let k = match self.symbol_index(c) {
                Some(k) if c != SENTINEL => k,
                _ => return Ok(None),
            };
            lo = self.c_array[k] + self.bwt_wt.rank(c, lo - 1)? + 1;
            hi = self.c_array[k] + self.bwt_wt.rank(c, hi)?;
            if hi < lo {
                return Ok(None);
            }
        }
        Ok(Some((lo, hi)))
    }

    pub fn count(&self, pattern: &[u8]) -> Result<usize> {
        Ok(self.count_range(pattern)?.map(|(l, r)| r - l + 1).unwrap_or(0))
    }

    /// SA value of `row`, resolved through at most `rho` LF steps.
    pub fn sa_value(&self, row: usize) -> Result<usize> {
        let mut r = row;
        let mut steps = 0usize;
        while !self.mark.access(r)? {
            r = self.lf_step(r)?;
            steps += 1;
            debug_assert!(steps <= self.rho, "sampling walk exceeded rho");
        }
        Ok(self.ssa.get(self.mark.rank1(r)?) as usize + steps)
    }

    /// Sorted 1-based starting positions of all occurrences.
    pub fn locate(&self, pattern: &[u8]) -> Result<Vec<usize>> {
        let mut out = Vec::new();
        if let Some((l, r)) = self.count_range(pattern)? {
            for row in l..=r {
                out.push(self.sa_value(row)?);
            }
            out.sort_unstable();
        }
        Ok(out)
    }

    /// Row of the suffix starting at text position `p` (1-based), found
    /// from the nearest inverse sample at or after `p`.
    fn row_of_position(&self, p: usize) -> Result<usize> {
        debug_assert!(p >= 1 && p <= self.n);
        if p == self.n {
            // The sentinel suffix is always the first row.
            return Ok(1);
        }
        let j = (p - 1).div_ceil(self.rho);
        let (sample_pos, mut row) = if j * self.rho < self.n {
            (1 + j * self.rho, self.isa_samples.get(j + 1) as usize)
        } else {
            (self.n, 1)
        };
        for _ in 0..sample_pos - p {
            row = self.lf_step(row)?;
        }
        Ok(row)
    }

    /// Extracts `len` characters starting at 1-based position `i`, in
    /// internal bytes.
    pub fn extract(&self, i: usize, len: usize) -> Result<Vec<u8>> {
        if i == 0 || len == 0 || i + len - 1 > self.n {
            return Err(Error::OutOfBounds { index: i + len.max(1) - 1, len: self.n });
        }
        let mut out = Vec::with_capacity(len);
        let mut end = i + len - 1;
        let mut remaining = len;
        if end == self.n {
            out.push(SENTINEL);
            remaining -= 1;
            end -= 1;
        }
        if remaining > 0 {
            // BWT[row of q] is T[q-1], so start one past the window end.
            let mut row = self.row_of_position(end + 1)?;
            for _ in 0..remaining {
                out.push(self.bwt_wt.access(row)?);
                row = self.lf_step(row)?;
            }
        }
        out.reverse();
        Ok(out)
    }

    /// Compressed payload bits of the wavelet tree plus sample overhead.
    pub fn measured_bits(&self) -> usize {
        self.bwt_wt.size_bits()
            + self.mark.size_bits()
            + self.ssa.size_bits()
            + self.isa_samples.size_bits()
            + self.sigma.len() * (8 + 64)
    }

    /// Payload-only view: compressed wavelet-tree offset bits.
    pub fn payload_bits(&self) -> usize {
        self.bwt_wt.compressed_offset_bits()
    }

    /// Offsets plus classes: the compressed content without samples.
    pub fn content_bits(&self) -> usize {
        self.bwt_wt.content_bits()
    }

    /// Total length in bits of the wavelet-tree node bitvectors.
    pub fn wt_node_bits(&self) -> usize {
        self.bwt_wt.node_bits_total()
    }

    pub fn to_bytes(&self) -> Vec<u8> {
        let mut w = Writer::new(MAGIC_INDEX, KIND_FM);
        w.put_usize(self.n);
        w.put_usize(self.sigma.len());
        w.put_usize(self.rho);
        w.put_bytes(&self.sigma);
        for &c in &self.c_array {
            w.put_usize(c);
        }
        self.bwt_wt.write_into(&mut w);
        self.ssa.write_into(&mut w);
        self.mark.write_into(&mut w);
        self.isa_samples.write_into(&mut w);
        w.into_bytes()
    }

    pub fn from_bytes(bytes: &[u8]) -> Result<Self> {
        let (mut r, kind) = Reader::open(bytes, MAGIC_INDEX)?;
        if kind != KIND_FM {
            return Err(Error::corrupt(format!("not an FM index (kind {kind})")));
        }
        let n = r.get_usize()?;
        let sigma_len = r.get_usize()?;
        let rho = r.get_usize()?;
        let sigma = r.get_bytes()?;
        if sigma.len() != sigma_len || sigma_len == 0 || rho != super::sample_rate(n) {
            return Err(Error::corrupt("bad FM header"));
        }
        let mut c_array = Vec::with_capacity(sigma_len);
        for _ in 0..sigma_len {
            c_array.push(r.get_usize()?);
        }
        let bwt_wt = WaveletTree::read_from(&mut r)?;
        let ssa = PackedIntArray::read_from(&mut r)?;
        let mark = RsBitvector::read_from(&mut r)?;
        let isa_samples = PackedIntArray::read_from(&mut r)?;
        r.finish()?;
        if bwt_wt.len() != n || mark.len() != n || mark.count_ones() != ssa.len() {
            return Err(Error::corrupt("inconsistent FM components"));
        }
        Ok(FmIndex { n, sigma, c_array, bwt_wt, ssa, mark, isa_samples, rho })
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn paper_text() -> FmIndex {
        FmIndex::build(&Text::parse(b"aabbbababbbaababa$").unwrap()).unwrap()
    }

    #[test]
    fn paper_backward_search_ranges() {
        let idx = paper_text();
        assert_eq!(idx.count_range(b"ab").unwrap(), Some((5, 9)));
        assert_eq!(idx.count_range(b"bab").unwrap(), Some((12, 14)));
        assert_eq!(idx.count(b"zq").unwrap(), 0);
    }

    #[test]
    fn paper_lf_fixtures() {
        let idx = FmIndex::build(&Text::parse(b"mississippi$").unwrap()).unwrap();
        assert_eq!(idx.lf_step(12).unwrap(), 5);
        assert_eq!(idx.lf_step(8).unwrap(), 3);
    }

    #[test]
    fn lf_is_a_permutation_cycle() {
        let idx = FmIndex::build(&Text::parse(b"mississippi$").unwrap()).unwrap();
        let n = idx.len();
        let mut seen = vec![false; n + 1];
        let mut row = 1usize;
        for _ in 0..n {
            assert!(!seen[row], "row {row} visited twice");
            seen[row] = true;
            row = idx.lf_step(row).unwrap();
        }
        assert_eq!(row, 1);
        assert!(seen[1..].iter().all(|&s| s));
    }

    #[test]
    fn locate_matches_naive() {
        let idx = paper_text();
        let text = b"aabbbababbbaababa";
        let naive: Vec<usize> = (0..text.len() - 2)
            .filter(|&i| &text[i..i + 3] == b"bab")
            .map(|i| i + 1)
            .collect();
        assert_eq!(idx.locate(b"bab").unwrap(), naive);
        assert_eq!(naive.len(), 3);
        // Pattern equal to the whole text occurs exactly at position 1.
        assert_eq!(idx.locate(text).unwrap(), vec![1]);
    }

    #[test]
    fn extract_fixtures() {
        let idx = FmIndex::build(&Text::parse(b"mississippi$").unwrap()).unwrap();
        assert_eq!(idx.extract(2, 4).unwrap(), b"issi");
        assert_eq!(idx.extract(1, 11).unwrap(), b"mississippi");
        let full = idx.extract(1, 12).unwrap();
        assert_eq!(crate::textindex::text::render(&full), b"mississippi$");
        assert!(idx.extract(3, 11).is_err());
    }

    #[test]
    fn psi_and_lf_are_inverse() {
        let t = Text::parse(b"aabbbababbbaababa$").unwrap();
        let sa = SuffixArray::build(&t).unwrap();
        let fm = FmIndex::build_from_sa(&t, &sa).unwrap();
        let csa = crate::textindex::CsaIndex::build_from_sa(&t, &sa).unwrap();
        for i in 1..=t.len() {
            assert_eq!(fm.lf_step(csa.psi(i).unwrap()).unwrap(), i);
            assert_eq!(csa.psi(fm.lf_step(i).unwrap()).unwrap(), i);
        }
    }

    #[test]
    fn balanced_wt_bits_accounting() {
        let t = Text::parse(b"mississippi$").unwrap();
        let idx = FmIndex::build(&t).unwrap();
        // sigma = 5 ($, i, m, p, s): ceil(log2 5) = 3 bits per character.
        assert_eq!(idx.wt_node_bits(), 12 * 3);
    }

    #[test]
    fn serialization_roundtrip() {
        let idx = paper_text();
        let bytes = idx.to_bytes();
        let idx2 = FmIndex::from_bytes(&bytes).unwrap();
        assert_eq!(idx2.count_range(b"bab").unwrap(), Some((12, 14)));
        assert_eq!(idx2.locate(b"ab").unwrap(), idx.locate(b"ab").unwrap());
        let mut bad = bytes.clone();
        bad[4] = 9; // kind byte
        assert!(FmIndex::from_bytes(&bad).is_err());
    }
}

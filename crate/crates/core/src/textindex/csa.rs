//! Compressed suffix array: psi split per symbol into Elias-Fano plus a
//! first-occurrence bitvector simulating the F column.

use crate::error::{Error, Result};
use crate::succinct::{EliasFano, PackedIntArray, RsBitvector};
use crate::wire::{Reader, Writer, MAGIC_INDEX};

use super::suffix::SuffixArray;
use super::text::{Text, SENTINEL};

pub(crate) const KIND_CSA: u8 = 1;

/// The psi-based compressed self-index.
///
/// Count runs by binary search over suffixes extracted via `F[psi^k[j]]`
/// in O(m log n) time; locate follows psi to the next sampled row; extract
/// starts from a sampled inverse-SA entry and walks forward reading F.
#[derive(Debug, Clone)]
pub struct CsaIndex {
    n: usize,
    /// Sorted distinct internal symbols (the sentinel first).
    sigma: Vec<u8>,
    /// Start row (1-based) of each symbol's run in F, plus a final n+1.
    starts: Vec<usize>,
    /// Marks the first occurrence of each symbol in F.
    fo: RsBitvector,
    /// Strictly increasing psi values per symbol.
    psi_per_symbol: Vec<EliasFano>,
    /// Sampled suffix-array values, in row order.
    ssa: PackedIntArray,
    /// Marks rows whose SA value is sampled.
    mark: RsBitvector,
    /// isa_samples[j] = row of text position 1 + j*rho.
    isa_samples: PackedIntArray,
    rho: usize,
}

impl CsaIndex {
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

        // F[i] is the first character of the i-th suffix; first occurrences
        // of each symbol mark the run starts.
        let mut fo_bits = vec![false; n];
        let mut starts = Vec::with_capacity(sigma.len() + 1);
        let mut prev: Option<u8> = None;
        for i in 1..=n {
            let c = bytes[sa.position(i) - 1];
            if prev != Some(c) {
                fo_bits[i - 1] = true;
                starts.push(i);
                prev = Some(c);
            }
        }
        starts.push(n + 1);
        let fo = RsBitvector::from_bools(&fo_bits)?;

        // psi[i] = row of SA[i] + 1; the sentinel row wraps to the row of
        // text position 1 so walks stay total.
        let sa0 = sa.sa0();
        let isa0 = sa.isa0();
        let psi_of = |i: usize| -> usize {
            let p = sa0[i - 1] as usize;
            if p + 1 < n {
                isa0[p + 1] as usize + 1
            } else {
                isa0[0] as usize + 1
            }
        };
        let mut psi_per_symbol = Vec::with_capacity(sigma.len());
        for s in 0..sigma.len() {
            let (lo, hi) = (starts[s], starts[s + 1] - 1);
            let values: Vec<u64> = (lo..=hi).map(|i| psi_of(i) as u64).collect();
            debug_assert!(values.windows(2).all(|w| w[0] < w[1]), "psi_c not increasing");
            psi_per_symbol.push(EliasFano::build(&values, n as u64 + 1)?);
        }

        // Sample SA values divisible by rho, and the value n.
        let mut mark_bits = vec![false; n];
        let mut ssa_values = Vec::new();
        for i in 1..=n {
            let v = sa.position(i);
            if v.is_multiple_of(rho) || v == n {
                mark_bits[i - 1] = true;
                ssa_values.push(v as u64);
            }
        }
        let mark = RsBitvector::from_bools(&mark_bits)?;
        let ssa = PackedIntArray::from_values(&ssa_values, PackedIntArray::width_for(n as u64));

        // Inverse samples every rho text positions for extract.
        let isa_values: Vec<u64> =
            (0..).map(|j| 1 + j * rho).take_while(|&p| p <= n).map(|p| sa.row_of(p) as u64).collect();
        let isa_samples =
            PackedIntArray::from_values(&isa_values, PackedIntArray::width_for(n as u64));

        Ok(CsaIndex { n, sigma, starts, fo, psi_per_symbol, ssa, mark, isa_samples, rho })
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

    /// First character of the row's suffix: `F[i] = sigma[FO.rank1(i)]`.
    pub fn f_char(&self, i: usize) -> Result<u8> {
        let k = self.fo.rank1(i)?;
        Ok(self.sigma[k - 1])
    }

    /// `psi[i]`: row of the suffix one text position forward.
    pub fn psi(&self, i: usize) -> Result<usize> {
        let k = self.fo.rank1(i)?;
        let start = self.starts[k - 1];
        Ok(self.psi_per_symbol[k - 1].get(i - start + 1)? as usize)
    }

    /// Lexicographic comparison of the suffix at `row` against `pattern`,
    /// reading at most `pattern.len()` characters via psi walks. Returns
    /// `Equal` when the pattern is a prefix of the suffix.
    fn cmp_suffix(&self, row: usize, pattern: &[u8]) -> Result<std::cmp::Ordering> {
        use std::cmp::Ordering;
        let mut r = row;
        for &pc in pattern {
            let c = self.f_char(r)?;
            if c == SENTINEL {
                // Suffix exhausted: it is a proper prefix, hence smaller.
                return Ok(Ordering::Less);
            }
            match c.cmp(&pc) {
                Ordering::Equal => r = self.psi(r)?,
                other => return Ok(other),
            }
        }
        Ok(Ordering::Equal)
    }

    /// Suffix-array range of suffixes prefixed by `pattern` (1-based,
    /// inclusive), or `None` when the pattern does not occur.
    pub fn count_range(&self, pattern: &[u8]) -> Result<Option<(usize, usize)>> {
        use std::cmp::Ordering;
        if pattern.is_empty() {
            return Err(Error::invalid("empty pattern"));
        }
        if pattern.contains(&SENTINEL) || pattern.contains(&b'$') {
            return Ok(None);
        }
        // First row whose suffix is >= pattern.
        let mut lo = 1usize;
        let mut hi = self.n + 1;
        while lo < hi {
            let mid = lo + (hi - lo) / 2;
            if self.cmp_suffix(mid, pattern)? == Ordering::Less {
                lo = mid + 1;
            } else {
                hi = mid;
            }
        }
        let begin = lo;
        // First row whose suffix is > pattern.
        let mut hi = self.n + 1;
        while lo < hi {
            let mid = lo + (hi - lo) / 2;
            if self.cmp_suffix(mid, pattern)? == Ordering::Greater {
                hi = mid;
            } else {
                lo = mid + 1;
            }
        }
        if begin < lo {
            Ok(Some((begin, lo - 1)))
        } else {
            Ok(None)
        }
    }

    /// Number of occurrences of `pattern`.
    pub fn count(&self, pattern: &[u8]) -> Result<usize> {
        Ok(self.count_range(pattern)?.map(|(l, r)| r - l + 1).unwrap_or(0))
    }

    /// SA value of `row`, resolved through at most `rho` psi steps.
    pub fn sa_value(&self, row: usize) -> Result<usize> {
        let mut r = row;
        let mut steps = 0usize;
        while !self.mark.access(r)? {
            r = self.psi(r)?;
            steps += 1;
            debug_assert!(steps <= self.rho, "sampling walk exceeded rho");
        }
        Ok(self.ssa.get(self.mark.rank1(r)?) as usize - steps)
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

    /// Extracts `len` characters starting at 1-based text position `i`,
    /// in internal bytes (the sentinel can appear only at position n).
    pub fn extract(&self, i: usize, len: usize) -> Result<Vec<u8>> {
        if i == 0 || len == 0 || i + len - 1 > self.n {
            return Err(Error::OutOfBounds { index: i + len.max(1) - 1, len: self.n });
        }
        let j = (i - 1) / self.rho;
        let mut row = self.isa_samples.get(j + 1) as usize;
        for _ in 0..(i - 1) - j * self.rho {
            row = self.psi(row)?;
        }
        let mut out = Vec::with_capacity(len);
        for _ in 0..len {
            out.push(self.f_char(row)?);
            row = self.psi(row)?;
        }
        Ok(out)
    }

    /// Total bits of the compressed components plus samples.
    pub fn measured_bits(&self) -> usize {
        let psi: usize = self.psi_per_symbol.iter().map(|ef| ef.size_bits()).sum();
        psi + self.fo.size_bits()
            + self.mark.size_bits()
            + self.ssa.size_bits()
            + self.isa_samples.size_bits()
            + self.sigma.len() * 8
    }

    pub fn to_bytes(&self) -> Vec<u8> {
        let mut w = Writer::new(MAGIC_INDEX, KIND_CSA);
        w.put_usize(self.n);
        w.put_usize(self.sigma.len());
        w.put_usize(self.rho);
        w.put_bytes(&self.sigma);
        for &s in &self.starts {
            w.put_usize(s);
        }
        self.fo.write_into(&mut w);
        for ef in &self.psi_per_symbol {
            ef.write_into(&mut w);
        }
        self.ssa.write_into(&mut w);
        self.mark.write_into(&mut w);
        self.isa_samples.write_into(&mut w);
        w.into_bytes()
    }

    pub fn from_bytes(bytes: &[u8]) -> Result<Self> {
        let (mut r, kind) = Reader::open(bytes, MAGIC_INDEX)?;
        if kind != KIND_CSA {
            return Err(Error::corrupt(format!("not a CSA index (kind {kind})")));
        }
        let n = r.get_usize()?;
        let sigma_len = r.get_usize()?;
        let rho = r.get_usize()?;
        let sigma = r.get_bytes()?;
        if sigma.len() != sigma_len || sigma_len == 0 || rho != super::sample_rate(n) {
            return Err(Error::corrupt("bad CSA header"));
        }
        let mut starts = Vec::with_capacity(sigma_len + 1);
        for _ in 0..=sigma_len {
            starts.push(r.get_usize()?);
        }
        let fo = RsBitvector::read_from(&mut r)?;
        let mut psi_per_symbol = Vec::with_capacity(sigma_len);
        for _ in 0..sigma_len {
            psi_per_symbol.push(EliasFano::read_from(&mut r)?);
        }
        let ssa = PackedIntArray::read_from(&mut r)?;
        let mark = RsBitvector::read_from(&mut r)?;
        let isa_samples = PackedIntArray::read_from(&mut r)?;
        r.finish()?;
        // Cheap structural checks: run lengths and sampled counts.
        if fo.len() != n || mark.len() != n || starts[0] != 1 || starts[sigma_len] != n + 1 {
            return Err(Error::corrupt("inconsistent CSA components"));
        }
        let psi_total: usize = psi_per_symbol.iter().map(|ef| ef.len()).sum();
        if psi_total != n || mark.count_ones() != ssa.len() {
            return Err(Error::corrupt("inconsistent CSA component lengths"));
        }
        Ok(CsaIndex { n, sigma, starts, fo, psi_per_symbol, ssa, mark, isa_samples, rho })
    }
}

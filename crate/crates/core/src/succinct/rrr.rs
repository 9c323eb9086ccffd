//! Zero-order compressed bitvector with rank and select.
//!
//! The bitvector is split into blocks of `b = ceil(log2(n)/2)` bits. Each
//! block is stored as a class (its popcount, fixed width) plus an offset
//! (its index among the sorted b-bit patterns of that class, variable
//! width `ceil(log2 C(b, class))`). Two sample levels — absolute per
//! macroblock of `b` blocks, relative per block — locate offsets and
//! prefix ranks in constant time. Blocks are decoded by combinatorial
//! unranking over a precomputed binomial table instead of a materialized
//! pattern table; the asymptotics are the same and no `O(sqrt(n) log^2 n)`
//! table is kept around.
//!
//! Rank is O(1); select is a binary search over rank, O(log n).

use crate::error::{Error, Result};
use crate::wire::{Reader, Writer};

use super::packed::{PackedBits, PackedIntArray};

#[cfg(debug_assertions)]
thread_local! {
    static SAMPLE_TOUCHES: std::cell::Cell<u64> = const { std::cell::Cell::new(0) };
    static BLOCK_DECODES: std::cell::Cell<u64> = const { std::cell::Cell::new(0) };
}

/// Resets the per-thread rank instrumentation counters (debug builds).
pub fn instrumentation_reset() {
    #[cfg(debug_assertions)]
    {
        SAMPLE_TOUCHES.with(|c| c.set(0));
        BLOCK_DECODES.with(|c| c.set(0));
    }
}

/// `(sampled-array touches, block decodes)` since the last reset, or
/// `None` in release builds where counting is compiled out.
pub fn instrumentation_counts() -> Option<(u64, u64)> {
    #[cfg(debug_assertions)]
    {
        return Some((SAMPLE_TOUCHES.with(|c| c.get()), BLOCK_DECODES.with(|c| c.get())));
    }
    #[allow(unreachable_code)]
    None
}

#[inline]
fn touch_samples(_n: u64) {
    #[cfg(debug_assertions)]
    SAMPLE_TOUCHES.with(|c| c.set(c.get() + _n));
}

#[inline]
fn touch_decode() {
    #[cfg(debug_assertions)]
    BLOCK_DECODES.with(|c| c.set(c.get() + 1));
}

/// Rank/select bitvector in `n*H0 + o(n)` bits.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct RsBitvector {
    n: usize,
    block: usize,
    ones: usize,
    classes: PackedIntArray,
    offsets: PackedBits,
    /// Interleaved (offset start bit, rank before) per macroblock.
    macro_samples: PackedIntArray,
    macro_pos_bits: usize,
    /// Interleaved (relative offset start, relative rank) per block.
    rel_samples: PackedIntArray,
    rel_pos_bits: usize,
    /// C(i, j) for i, j <= block size.
    binomials: Vec<Vec<u64>>,
    /// Offset width per class.
    widths: Vec<u8>,
}

fn binomial_table(b: usize) -> Vec<Vec<u64>> {
    let mut t = vec![vec![0u64; b + 1]; b + 1];
    for i in 0..=b {
        t[i][0] = 1;
        for j in 1..=i {
            t[i][j] = t[i - 1][j - 1] + if j < i { t[i - 1][j] } else { 0 };
        }
    }
    t
}

fn class_widths(binomials: &[Vec<u64>], b: usize) -> Vec<u8> {
    (0..=b)
        .map(|c| {
            let count = binomials[b][c];
            let w = PackedIntArray::width_for(count.saturating_sub(1));
            w.max(1) as u8
        })
        .collect()
}

impl RsBitvector {
    /// Block size used for a bitvector of length `n`.
    pub fn block_size_for(n: usize) -> usize {
        if n < 4 {
            return 1;
        }
        let log2n = (usize::BITS - (n - 1).leading_zeros()) as usize; // ceil(log2 n)
        (log2n.div_ceil(2)).clamp(1, 63)
    }

    /// Builds the structure from a packed bitvector. The final partial
    /// block, if any, is padded with zeros; the padding is excluded from
    /// all queries.
    pub fn build(bits: &PackedBits) -> Result<Self> {
        let n = bits.len();
        if n == 0 {
            return Err(Error::invalid("empty bitvector"));
        }
        if n >= 1 << 31 {
            return Err(Error::invalid("bitvector longer than 2^31 bits"));
        }
        let b = Self::block_size_for(n);
        let binomials = binomial_table(b);
        let widths = class_widths(&binomials, b);
        let blocks = n.div_ceil(b);

        let class_bits = PackedIntArray::width_for(b as u64);
        let mut classes = PackedIntArray::zeros(blocks, class_bits);
        let mut offsets = PackedBits::zeros(0);

        let macroblocks = blocks.div_ceil(b);
        // Offsets take at most `b` bits per block.
        let rel_pos_bits = PackedIntArray::width_for((b * b) as u64);
        let rel_rank_bits = PackedIntArray::width_for((b * b) as u64);
        let mut rel_samples = PackedIntArray::zeros(blocks, rel_pos_bits + rel_rank_bits);

        let mut patterns = Vec::with_capacity(blocks);
        let mut ones = 0usize;
        for j in 0..blocks {
            let start = j * b + 1;
            let len = b.min(n - j * b);
            let mut pat = bits.get_bits(start, len);
            pat <<= b - len; // zero-pad the final block on the right
            patterns.push(pat);
            ones += pat.count_ones() as usize;
        }

        let macro_pos_bits = {
            // Upper bound on total offset bits: b per block.
            PackedIntArray::width_for((blocks * b) as u64)
        };
        let macro_rank_bits = PackedIntArray::width_for(n as u64);
        let mut macro_samples = PackedIntArray::zeros(macroblocks, macro_pos_bits + macro_rank_bits);

        let mut rank_before = 0u64;
        #[allow(clippy::needless_range_loop)] // j drives three indexings
        for j in 0..blocks {
            if j % b == 0 {
                let mb = j / b;
                macro_samples
                    .set(mb + 1, (offsets.len() as u64) << macro_rank_bits | rank_before);
            }
            let mb_sample = macro_samples.get(j / b + 1);
            let mb_pos = mb_sample >> macro_rank_bits;
            let mb_rank = mb_sample & ((1u64 << macro_rank_bits) - 1);
            rel_samples.set(
                j + 1,
                (offsets.len() as u64 - mb_pos) << rel_rank_bits | (rank_before - mb_rank),
            );

            let pat = patterns[j];
            let class = pat.count_ones() as usize;
            classes.set(j + 1, class as u64);
            let off = rank_pattern(&binomials, b, pat, class);
            let w = widths[class] as usize;
            for t in (0..w).rev() {
                offsets.push(off >> t & 1 == 1);
            }
            rank_before += class as u64;
        }

        Ok(RsBitvector {
            n,
            block: b,
            ones,
            classes,
            offsets,
            macro_samples,
            macro_pos_bits,
            rel_samples,
            rel_pos_bits,
            binomials,
            widths,
        })
    }

    pub fn from_bools(bits: &[bool]) -> Result<Self> {
        Self::build(&PackedBits::from_bools(bits))
    }

    pub fn len(&self) -> usize {
        self.n
    }

    pub fn is_empty(&self) -> bool {
        self.n == 0
    }

    pub fn block_size(&self) -> usize {
        self.block
    }

    pub fn count_ones(&self) -> usize {
        self.ones
    }

    pub fn count_zeros(&self) -> usize {
        self.n - self.ones
    }

    /// Total variable-width offset bits; the compressed payload.
    pub fn offset_bits(&self) -> usize {
        self.offsets.len()
    }

    /// Information-carrying bits: offsets plus classes, without the
    /// rank/position samples.
    pub fn content_bits(&self) -> usize {
        self.offsets.len() + self.classes.size_bits()
    }

    /// All stored bits: payload plus classes plus both sample levels.
    pub fn size_bits(&self) -> usize {
        self.offsets.len()
            + self.classes.size_bits()
            + self.macro_samples.size_bits()
            + self.rel_samples.size_bits()
    }

    /// Classes of all blocks, in order (mostly useful for inspection).
    pub fn classes(&self) -> Vec<u64> {
        (1..=self.classes.len()).map(|i| self.classes.get(i)).collect()
    }

    /// (offset value, stored width) per block, in order.
    pub fn offsets_with_widths(&self) -> Vec<(u64, usize)> {
        let mut out = Vec::new();
        let mut pos = 1usize;
        for j in 1..=self.classes.len() {
            let class = self.classes.get(j) as usize;
            let w = self.widths[class] as usize;
            out.push((self.offsets.get_bits(pos, w), w));
            pos += w;
        }
        out
    }

    /// Reads the three sampled arrays once each and returns
    /// `(class, absolute offset position, rank before block)` for block `j`.
    #[inline]
    fn block_info(&self, j: usize) -> (usize, u64, u64) {
        touch_samples(3);
        let class = self.classes.get(j + 1) as usize;
        let macro_rank_bits = self.macro_samples.width() - self.macro_pos_bits;
        let mb = self.macro_samples.get(j / self.block + 1);
        let mb_pos = mb >> macro_rank_bits;
        let mb_rank = mb & ((1u64 << macro_rank_bits) - 1);
        let rel_rank_bits = self.rel_samples.width() - self.rel_pos_bits;
        let rel = self.rel_samples.get(j + 1);
        let rel_pos = rel >> rel_rank_bits;
        let rel_rank = rel & ((1u64 << rel_rank_bits) - 1);
        (class, mb_pos + rel_pos, mb_rank + rel_rank)
    }

    /// Combinatorially unranks the block whose offset starts at `pos`.
    #[inline]
    fn decode_with(&self, class: usize, pos: u64) -> u64 {
        touch_decode();
        let w = self.widths[class] as usize;
        let off = self.offsets.get_bits(pos as usize + 1, w);
        unrank_pattern(&self.binomials, self.block, off, class)
    }

    /// Bit at 1-based position `i`.
    pub fn access(&self, i: usize) -> Result<bool> {
        if i == 0 || i > self.n {
            return Err(Error::OutOfBounds { index: i, len: self.n });
        }
        let j = (i - 1) / self.block;
        let (class, pos, _) = self.block_info(j);
        let pat = self.decode_with(class, pos);
        let t = (i - 1) % self.block;
        Ok(pat >> (self.block - 1 - t) & 1 == 1)
    }

    /// Number of ones in positions `1..=i`; `rank1(0) = 0`.
    pub fn rank1(&self, i: usize) -> Result<usize> {
        if i > self.n {
            return Err(Error::OutOfBounds { index: i, len: self.n });
        }
        if i == 0 {
            return Ok(0);
        }
        let j = (i - 1) / self.block;
        let (class, pos, before) = self.block_info(j);
        let pat = self.decode_with(class, pos);
        let t = (i - 1) % self.block + 1;
        let within = (pat >> (self.block - t)).count_ones() as u64;
        Ok((before + within) as usize)
    }

    pub fn rank0(&self, i: usize) -> Result<usize> {
        Ok(i - self.rank1(i)?)
    }

    pub fn rank(&self, bit: bool, i: usize) -> Result<usize> {
        if bit {
            self.rank1(i)
        } else {
            self.rank0(i)
        }
    }

    /// Position of the `j`-th one (1-based); `j` in `1..=count_ones()`.
    pub fn select1(&self, j: usize) -> Result<usize> {
        self.select(true, j)
    }

    pub fn select0(&self, j: usize) -> Result<usize> {
        self.select(false, j)
    }

    /// Binary search over rank; O(log n).
    pub fn select(&self, bit: bool, j: usize) -> Result<usize> {
        let total = if bit { self.ones } else { self.n - self.ones };
        if j == 0 || j > total {
            return Err(Error::NotFound(format!(
                "select_{}({j}) beyond population {total}",
                bit as u8
            )));
        }
        let mut lo = 1usize;
        let mut hi = self.n;
        while lo < hi {
            let mid = lo + (hi - lo) / 2;
            let r = if bit { self.rank1(mid)? } else { self.rank0(mid)? };
            if r >= j {
                hi = mid;
            } else {
                lo = mid + 1;
            }
        }
        Ok(lo)
    }

    pub fn write_into(&self, w: &mut Writer) {
        w.put_usize(self.n);
        w.put_usize(self.block);
        w.put_usize(self.ones);
        w.put_usize(self.macro_pos_bits);
        w.put_usize(self.rel_pos_bits);
        self.classes.write_into(w);
        self.offsets.write_into(w);
        self.macro_samples.write_into(w);
        self.rel_samples.write_into(w);
    }

    pub fn read_from(r: &mut Reader) -> Result<Self> {
        let n = r.get_usize()?;
        let block = r.get_usize()?;
        let ones = r.get_usize()?;
        let macro_pos_bits = r.get_usize()?;
        let rel_pos_bits = r.get_usize()?;
        if n == 0 || block != Self::block_size_for(n) || ones > n {
            return Err(Error::corrupt("inconsistent bitvector header"));
        }
        let classes = PackedIntArray::read_from(r)?;
        let offsets = PackedBits::read_from(r)?;
        let macro_samples = PackedIntArray::read_from(r)?;
        let rel_samples = PackedIntArray::read_from(r)?;
        let blocks = n.div_ceil(block);
        if classes.len() != blocks
            || rel_samples.len() != blocks
            || macro_samples.len() != blocks.div_ceil(block)
        {
            return Err(Error::corrupt("inconsistent sample lengths"));
        }
        let binomials = binomial_table(block);
        let widths = class_widths(&binomials, block);
        let v = RsBitvector {
            n,
            block,
            ones,
            classes,
            offsets,
            macro_samples,
            macro_pos_bits,
            rel_samples,
            rel_pos_bits,
            binomials,
            widths,
        };
        // Cheap structural re-check: class popcounts must sum to the stored
        // ones count and offsets must cover exactly the stored bits.
        let mut sum = 0u64;
        let mut offset_bits = 0usize;
        for j in 1..=blocks {
            let c = v.classes.get(j);
            if c > block as u64 {
                return Err(Error::corrupt("class exceeds block size"));
            }
            sum += c;
            offset_bits += v.widths[c as usize] as usize;
        }
        if sum != ones as u64 || offset_bits != v.offsets.len() {
            return Err(Error::corrupt("class/offset accounting mismatch"));
        }
        Ok(v)
    }
}

/// Index of `pat` (popcount `class`) among sorted `b`-bit patterns of its class.
fn rank_pattern(binomials: &[Vec<u64>], b: usize, pat: u64, class: usize) -> u64 {
    let mut rank = 0u64;
    let mut remaining = class;
    for t in 0..b {
        if remaining == 0 {
            break;
        }
        if pat >> (b - 1 - t) & 1 == 1 {
            // Skip all patterns with a 0 here.
            rank += binomials[b - 1 - t][remaining];
            remaining -= 1;
        }
    }
    rank
}

/// Inverse of [`rank_pattern`].
fn unrank_pattern(binomials: &[Vec<u64>], b: usize, mut off: u64, class: usize) -> u64 {
    let mut pat = 0u64;
    let mut remaining = class;
    for t in 0..b {
        if remaining == 0 {
            break;
        }
        let zeros_here = binomials[b - 1 - t][remaining];
        if off < zeros_here {
            continue;
        }
        off -= zeros_here;
        pat |= 1 << (b - 1 - t);
        remaining -= 1;
    }
    pat
}

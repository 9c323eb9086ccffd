//! Packed bit storage: `n` bits in `ceil(n/64)` machine words.

use crate::error::{Error, Result};
use crate::wire::{Reader, Writer};

/// A fixed-length bit sequence packed into 64-bit words.
///
/// Bit 1 is the most significant bit of the first word, so a block of
/// bits read left to right is the big-endian binary representation of the
/// extracted integer. Padding bits beyond `len` are always zero.
#[derive(Debug, Clone, Default, PartialEq, Eq)]
pub struct PackedBits {
    words: Vec<u64>,
    len: usize,
}

impl PackedBits {
    pub fn zeros(len: usize) -> Self {
        PackedBits { words: vec![0; len.div_ceil(64)], len }
    }

    pub fn from_bools(bits: &[bool]) -> Self {
        let mut pb = PackedBits::zeros(bits.len());
        for (i, &b) in bits.iter().enumerate() {
            if b {
                pb.set(i + 1, true);
            }
        }
        pb
    }

    /// Parses a string of '0'/'1' characters.
    pub fn from_bit_str(s: &str) -> Self {
        let bits: Vec<bool> = s.chars().filter(|c| *c == '0' || *c == '1').map(|c| c == '1').collect();
        PackedBits::from_bools(&bits)
    }

    pub fn len(&self) -> usize {
        self.len
    }

    pub fn is_empty(&self) -> bool {
        self.len == 0
    }

    /// Appends a bit.
    pub fn push(&mut self, bit: bool) {
        self.len += 1;
        if self.words.len() * 64 < self.len {
            self.words.push(0);
        }
        if bit {
            self.set(self.len, true);
        }
    }

    /// Sets bit `i` (1-based).
    pub fn set(&mut self, i: usize, bit: bool) {
        assert!(i >= 1 && i <= self.len, "bit index {i} out of range 1..={}", self.len);
        let w = (i - 1) / 64;
        let mask = 1u64 << (63 - ((i - 1) % 64));
        if bit {
            self.words[w] |= mask;
        } else {
            self.words[w] &= !mask;
        }
    }

    /// Bit `i` (1-based).
    #[inline]
    pub fn get(&self, i: usize) -> bool {
        debug_assert!(i >= 1 && i <= self.len);
        let w = (i - 1) / 64;
        self.words[w] >> (63 - ((i - 1) % 64)) & 1 == 1
    }

    /// Extracts bits `i..i+len-1` (1-based) right-aligned in a word.
    ///
    /// The first extracted bit becomes the most significant of the result.
    #[inline]
    pub fn get_bits(&self, i: usize, len: usize) -> u64 {
        debug_assert!((1..=64).contains(&len));
        debug_assert!(i >= 1 && i + len - 1 <= self.len, "range {i}+{len} out of {}", self.len);
        let start = i - 1;
        let w = start / 64;
        let off = start % 64;
        if off + len <= 64 {
            (self.words[w] << off) >> (64 - len)
        } else {
            let hi_bits = 64 - off;
            let lo_bits = len - hi_bits;
            let hi = self.words[w] & (u64::MAX >> off);
            (hi << lo_bits) | (self.words[w + 1] >> (64 - lo_bits))
        }
    }

    /// Checked variant of [`get_bits`](Self::get_bits) for the public API.
    pub fn extract(&self, i: usize, len: usize) -> Result<u64> {
        if len == 0 || len > 64 {
            return Err(Error::invalid(format!("extract length {len} not in 1..=64")));
        }
        if i == 0 || i + len - 1 > self.len {
            return Err(Error::OutOfBounds { index: i + len - 1, len: self.len });
        }
        Ok(self.get_bits(i, len))
    }

    /// Writes `len` bits of `value` (MSB of the group first) at position `i`.
    pub fn set_bits(&mut self, i: usize, value: u64, len: usize) {
        assert!((1..=64).contains(&len));
        assert!(i >= 1 && i + len - 1 <= self.len);
        for t in 0..len {
            self.set(i + t, value >> (len - 1 - t) & 1 == 1);
        }
    }

    pub fn count_ones(&self) -> usize {
        self.words.iter().map(|w| w.count_ones() as usize).sum()
    }

    pub fn words(&self) -> &[u64] {
        &self.words
    }

    pub(crate) fn write_into(&self, w: &mut Writer) {
        w.put_usize(self.len);
        w.put_u64_slice(&self.words);
    }

    pub(crate) fn read_from(r: &mut Reader) -> Result<Self> {
        let len = r.get_usize()?;
        let words = r.get_u64_vec()?;
        if words.len() != len.div_ceil(64) {
            return Err(Error::corrupt("bit/word length mismatch"));
        }
        if len % 64 != 0 {
            if let Some(&last) = words.last() {
                if last & (u64::MAX >> (len % 64)) != 0 {
                    return Err(Error::corrupt("nonzero padding bits"));
                }
            }
        }
        Ok(PackedBits { words, len })
    }
}

/// Fixed-width integers packed back to back in a [`PackedBits`].
#[derive(Debug, Clone, Default, PartialEq, Eq)]
pub struct PackedIntArray {
    bits: PackedBits,
    width: usize,
    count: usize,
}

impl PackedIntArray {
    /// `count` zeroed elements of `width` bits each (`1 <= width <= 64`).
    pub fn zeros(count: usize, width: usize) -> Self {
        assert!((1..=64).contains(&width), "width {width} not in 1..=64");
        PackedIntArray { bits: PackedBits::zeros(count * width), width, count }
    }

    pub fn from_values(values: &[u64], width: usize) -> Self {
        let mut a = PackedIntArray::zeros(values.len(), width);
        for (i, &v) in values.iter().enumerate() {
            a.set(i + 1, v);
        }
        a
    }

    /// Smallest width able to hold `max_value`.
    pub fn width_for(max_value: u64) -> usize {
        (64 - max_value.leading_zeros() as usize).max(1)
    }

    pub fn len(&self) -> usize {
        self.count
    }

    pub fn is_empty(&self) -> bool {
        self.count == 0
    }

    pub fn width(&self) -> usize {
        self.width
    }

    pub fn size_bits(&self) -> usize {
        self.count * self.width
    }

    /// Element `i` (1-based).
    #[inline]
    pub fn get(&self, i: usize) -> u64 {
        debug_assert!(i >= 1 && i <= self.count);
        self.bits.get_bits((i - 1) * self.width + 1, self.width)
    }

    /// Sets element `i` (1-based). `value` must fit in `width` bits.
    pub fn set(&mut self, i: usize, value: u64) {
        assert!(i >= 1 && i <= self.count);
        assert!(self.width == 64 || value < 1u64 << self.width, "value {value} too wide");
        self.bits.set_bits((i - 1) * self.width + 1, value, self.width);
    }

    pub(crate) fn write_into(&self, w: &mut Writer) {
        w.put_usize(self.width);
        w.put_usize(self.count);
        self.bits.write_into(w);
    }

    pub(crate) fn read_from(r: &mut Reader) -> Result<Self> {
        let width = r.get_usize()?;
        let count = r.get_usize()?;
        if !(1..=64).contains(&width) {
            return Err(Error::corrupt("bad element width"));
        }
        let bits = PackedBits::read_from(r)?;
        if bits.len() != width * count {
            return Err(Error::corrupt("element/bit count mismatch"));
        }
        Ok(PackedIntArray { bits, width, count })
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::rng::DetRng;

    #[test]
    fn paper_extract_example() {
        // B = 011100 010100 110011; B[10] = 1.
        let pb = PackedBits::from_bit_str("011100010100110011");
        assert_eq!(pb.extract(10, 1).unwrap(), 1);
        assert!(!pb.get(5));
        assert_eq!(pb.extract(1, 6).unwrap(), 0b011100);
        assert_eq!(pb.extract(7, 6).unwrap(), 0b010100);
        assert_eq!(pb.extract(13, 6).unwrap(), 0b110011);
    }

    #[test]
    fn extract_all_zero() {
        let pb = PackedBits::zeros(64);
        assert_eq!(pb.extract(1, 64).unwrap(), 0);
    }

    #[test]
    fn extract_out_of_range() {
        let pb = PackedBits::zeros(10);
        assert!(pb.extract(8, 4).is_err());
        assert!(pb.extract(0, 1).is_err());
    }

    #[test]
    fn extract_matches_naive_read() {
        let mut rng = DetRng::new(1);
        for _ in 0..50 {
            let n = 1 + rng.next_below(300) as usize;
            let bits: Vec<bool> = (0..n).map(|_| rng.next_bool(0.5)).collect();
            let pb = PackedBits::from_bools(&bits);
            for _ in 0..100 {
                let len = 1 + rng.next_below(64.min(n as u64)) as usize;
                let i = 1 + rng.next_below((n - len + 1) as u64) as usize;
                let mut expect = 0u64;
                for t in 0..len {
                    expect = expect << 1 | bits[i - 1 + t] as u64;
                }
                assert_eq!(pb.get_bits(i, len), expect);
            }
        }
    }

    #[test]
    fn push_and_count() {
        let mut pb = PackedBits::zeros(0);
        for i in 0..130 {
            pb.push(i % 3 == 0);
        }
        assert_eq!(pb.len(), 130);
        assert_eq!(pb.count_ones(), (0..130).filter(|i| i % 3 == 0).count());
    }

    #[test]
    fn int_array_roundtrip() {
        let mut rng = DetRng::new(2);
        for width in [1usize, 3, 7, 13, 29, 64] {
            let n = 1 + rng.next_below(100) as usize;
            let max = if width == 64 { u64::MAX } else { (1u64 << width) - 1 };
            let values: Vec<u64> = (0..n)
                .map(|_| if max == u64::MAX { rng.next_u64() } else { rng.next_below(max + 1) })
                .collect();
            let arr = PackedIntArray::from_values(&values, width);
            for (i, &v) in values.iter().enumerate() {
                assert_eq!(arr.get(i + 1), v);
            }
            assert_eq!(arr.size_bits(), n * width);
        }
    }
}

//! Elias-Fano encoding of non-decreasing integer sequences.
//!
//! Each value splits into a fixed-width low part, stored packed, and a
//! high part whose successive differences are written in unary into a
//! rank/select bitvector. Random access is O(1) via one select; membership
//! and predecessor/successor queries are answered by binary search over
//! random access in O(log m).

use crate::error::{Error, Result};
use crate::wire::{Reader, Writer};

use super::packed::PackedIntArray;
use super::rrr::RsBitvector;

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct EliasFano {
    /// Number of stored values.
    count: usize,
    /// Universe size: values are in `[0, universe)`.
    universe: u64,
    low_bits: usize,
    low: PackedIntArray,
    high: RsBitvector,
}

impl EliasFano {
    /// Encodes a non-decreasing sequence of values below `universe`.
    ///
    /// The low-part width is `ceil(log2(universe/count))`, forced to at
    /// least one bit so that dense sequences keep nonzero-width elements.
    pub fn build(values: &[u64], universe: u64) -> Result<Self> {
        let m = values.len();
        if m == 0 {
            return Err(Error::invalid("empty sequence"));
        }
        for pair in values.windows(2) {
            if pair[1] < pair[0] {
                return Err(Error::invalid("sequence not non-decreasing"));
            }
        }
        let max = *values.last().unwrap();
        if max >= universe {
            return Err(Error::invalid(format!("value {max} outside universe {universe}")));
        }
        // Smallest width with m * 2^width >= universe, forced >= 1.
        let mut low_bits = 0usize;
        while (m as u128) << low_bits < universe as u128 {
            low_bits += 1;
        }
        let low_bits = low_bits.max(1);

        let mut low = PackedIntArray::zeros(m, low_bits);
        let mask = if low_bits == 64 { u64::MAX } else { (1u64 << low_bits) - 1 };
        let mut high_bits = Vec::new();
        let mut prev_prefix = 0u64;
        for (i, &v) in values.iter().enumerate() {
            low.set(i + 1, v & mask);
            let prefix = v >> low_bits;
            // Unary gap: (prefix - prev) zeros, then the element's one.
            high_bits.resize(high_bits.len() + (prefix - prev_prefix) as usize, false);
            high_bits.push(true);
            prev_prefix = prefix;
        }
        let high = RsBitvector::from_bools(&high_bits)?;
        Ok(EliasFano { count: m, universe, low_bits, low, high })
    }

    pub fn len(&self) -> usize {
        self.count
    }

    pub fn is_empty(&self) -> bool {
        self.count == 0
    }

    pub fn universe(&self) -> u64 {
        self.universe
    }

    pub fn low_bits_per_value(&self) -> usize {
        self.low_bits
    }

    /// Bits in the packed low parts: exactly `m * low_bits`.
    pub fn low_size_bits(&self) -> usize {
        self.low.size_bits()
    }

    /// Length in bits of the unary high bitvector (at most `2m + 1`).
    pub fn high_len_bits(&self) -> usize {
        self.high.len()
    }

    /// Raw high bitvector, exposed for inspection.
    pub fn high(&self) -> &RsBitvector {
        &self.high
    }

    pub fn size_bits(&self) -> usize {
        self.low.size_bits() + self.high.size_bits()
    }

    /// The `i`-th value, 1-based.
    pub fn get(&self, i: usize) -> Result<u64> {
        if i == 0 || i > self.count {
            return Err(Error::OutOfBounds { index: i, len: self.count });
        }
        let pos = self.high.select1(i)?;
        let prefix = (pos - i) as u64; // rank0 before the i-th one
        Ok(prefix << self.low_bits | self.low.get(i))
    }

    /// Membership plus neighbors: `(member, predecessor < y, successor >= y)`.
    pub fn search(&self, y: u64) -> Result<(bool, Option<u64>, Option<u64>)> {
        if y >= self.universe {
            return Err(Error::invalid(format!("query {y} outside universe {}", self.universe)));
        }
        // Smallest index with value >= y.
        let mut lo = 1usize;
        let mut hi = self.count + 1;
        while lo < hi {
            let mid = lo + (hi - lo) / 2;
            if self.get(mid)? >= y {
                hi = mid;
            } else {
                lo = mid + 1;
            }
        }
        let successor = if lo <= self.count { Some(self.get(lo)?) } else { None };
        let predecessor = if lo > 1 { Some(self.get(lo - 1)?) } else { None };
        let member = successor == Some(y);
        Ok((member, predecessor, successor))
    }

    pub fn iter(&self) -> impl Iterator<Item = u64> + '_ {
        (1..=self.count).map(|i| self.get(i).unwrap())
    }

    pub fn write_into(&self, w: &mut Writer) {
        w.put_usize(self.count);
        w.put_u64(self.universe);
        w.put_usize(self.low_bits);
        self.low.write_into(w);
        self.high.write_into(w);
    }

    pub fn read_from(r: &mut Reader) -> Result<Self> {
        let count = r.get_usize()?;
        let universe = r.get_u64()?;
        let low_bits = r.get_usize()?;
        let low = PackedIntArray::read_from(r)?;
        let high = RsBitvector::read_from(r)?;
        if low.len() != count || high.count_ones() != count {
            return Err(Error::corrupt("element count mismatch"));
        }
        Ok(EliasFano { count, universe, low_bits, low, high })
    }
}

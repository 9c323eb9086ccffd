//! Bloom filter.

use crate::error::{Error, Result};
use crate::succinct::PackedBits;
use crate::wire::{Reader, Writer, MAGIC_FILTER};

use super::{derive_seeds, mix_key};

pub(crate) const KIND_BLOOM: u8 = 1;

/// Parameters for capacity `m` and false-positive rate `delta`:
/// `k` is the closest integer to `log2(1/delta)` (at least 1) and `M` the
/// smallest bit count with `(1 - e^(-mk/M))^k <= delta`, rounded up to
/// three significant digits (table sizes are conventionally quoted that
/// way, and a larger table only lowers the false-positive rate).
pub fn bloom_params(m: u64, delta: f64) -> Result<(u32, u64)> {
    let (k, m_bits) = bloom_params_raw(m, delta)?;
    Ok((k, round_up_3_sig(m_bits)))
}

/// As [`bloom_params`] but returning the exact smallest `M`.
pub fn bloom_params_raw(m: u64, delta: f64) -> Result<(u32, u64)> {
    if m == 0 {
        return Err(Error::invalid("capacity must be positive"));
    }
    if !(delta > 0.0 && delta < 1.0) {
        return Err(Error::invalid("delta must be in (0, 1)"));
    }
    let k = ((1.0 / delta).log2().round() as i64).max(1) as u32;
    let fpr = |m_bits: u64| -> f64 {
        (1.0 - (-((m * k as u64) as f64) / m_bits as f64).exp()).powi(k as i32)
    };
    // Closed-form start, then settle on the exact threshold.
    let mk = (m * k as u64) as f64;
    let denom = -(1.0 - delta.powf(1.0 / k as f64)).ln();
    let mut m_bits = (mk / denom).floor().max(1.0) as u64;
    while m_bits > 1 && fpr(m_bits - 1) <= delta {
        m_bits -= 1;
    }
    while fpr(m_bits) > delta {
        m_bits += 1;
    }
    Ok((k, m_bits))
}

fn round_up_3_sig(v: u64) -> u64 {
    if v < 1000 {
        return v;
    }
    let digits = v.ilog10() + 1;
    let scale = 10u64.pow(digits - 3);
    v.div_ceil(scale) * scale
}

#[derive(Debug, Clone)]
pub struct BloomFilter {
    bits: PackedBits,
    seeds: Vec<u64>,
    m_bits: u64,
    capacity: u64,
    inserted: u64,
}

impl BloomFilter {
    /// Filter sized by [`bloom_params`] for `capacity` keys at rate `delta`.
    pub fn new(capacity: u64, delta: f64, seed: u64) -> Result<Self> {
        let (k, m_bits) = bloom_params(capacity, delta)?;
        Self::with_params(capacity, m_bits, k, seed)
    }

    pub fn with_params(capacity: u64, m_bits: u64, k: u32, seed: u64) -> Result<Self> {
        if m_bits == 0 || k == 0 {
            return Err(Error::invalid("bad Bloom parameters"));
        }
        Ok(BloomFilter {
            bits: PackedBits::zeros(m_bits as usize),
            seeds: derive_seeds(seed, k as usize),
            m_bits,
            capacity,
            inserted: 0,
        })
    }

    pub fn insert(&mut self, key: u64) {
        for &s in &self.seeds {
            let idx = mix_key(key, s) % self.m_bits;
            self.bits.set(idx as usize + 1, true);
        }
        self.inserted += 1;
    }

    pub fn contains(&self, key: u64) -> bool {
        self.seeds.iter().all(|&s| self.bits.get((mix_key(key, s) % self.m_bits) as usize + 1))
    }

    pub fn inserted(&self) -> u64 {
        self.inserted
    }

    pub fn capacity(&self) -> u64 {
        self.capacity
    }

    /// True once more keys were inserted than the filter was sized for;
    /// the false-positive guarantee no longer holds.
    pub fn over_capacity(&self) -> bool {
        self.inserted > self.capacity
    }

    pub fn hash_count(&self) -> u32 {
        self.seeds.len() as u32
    }

    pub fn fill_ratio(&self) -> f64 {
        self.bits.count_ones() as f64 / self.m_bits as f64
    }

    pub fn measured_space_bits(&self) -> u64 {
        self.m_bits
    }

    pub fn to_bytes(&self) -> Vec<u8> {
        let mut w = Writer::new(MAGIC_FILTER, KIND_BLOOM);
        w.put_u64(self.capacity);
        w.put_u64(self.m_bits);
        w.put_u64(self.inserted);
        w.put_u64_slice(&self.seeds);
        self.bits.write_into(&mut w);
        w.into_bytes()
    }

    pub fn from_bytes(bytes: &[u8]) -> Result<Self> {
        let (mut r, kind) = Reader::open(bytes, MAGIC_FILTER)?;
        if kind != KIND_BLOOM {
            return Err(Error::corrupt(format!("not a Bloom filter (kind {kind})")));
        }
        let capacity = r.get_u64()?;
        let m_bits = r.get_u64()?;
        let inserted = r.get_u64()?;
        let seeds = r.get_u64_vec()?;
        let bits = PackedBits::read_from(&mut r)?;
        r.finish()?;
        if seeds.is_empty() || bits.len() as u64 != m_bits {
            return Err(Error::corrupt("inconsistent Bloom components"));
        }
        Ok(BloomFilter { bits, seeds, m_bits, capacity, inserted })
    }
}

//! Counting Bloom filter: deletions via small saturating counters.

use crate::error::{Error, Result};
use crate::succinct::PackedIntArray;
use crate::wire::{Reader, Writer, MAGIC_FILTER};

use super::bloom::bloom_params;
use super::{derive_seeds, mix_key};

pub(crate) const KIND_CBF: u8 = 2;

/// `(k, M, t)` for capacity `m`, false-positive rate `delta`, and false-
/// negative rate `gamma`: `k` and `M` as for the Bloom filter, and
/// `t = ceil(loglog2(log2(1/delta)/gamma))` bits per counter, at least 2.
pub fn cbf_params(m: u64, delta: f64, gamma: f64) -> Result<(u32, u64, u32)> {
    if !(gamma > 0.0 && gamma < 1.0) {
        return Err(Error::invalid("gamma must be in (0, 1)"));
    }
    let (k, m_bits) = bloom_params(m, delta)?;
    let inner = (1.0 / delta).log2() / gamma;
    let t = if inner > 1.0 { inner.log2().log2().ceil() as i64 } else { 0 };
    Ok((k, m_bits, t.max(2) as u32))
}

/// Bloom filter over `t`-bit counters. Counters saturate at `2^t - 1` and
/// then stick (neither increments nor decrements touch them), trading the
/// rare overflow for extra false positives instead of false negatives.
#[derive(Debug, Clone)]
pub struct CountingBloomFilter {
    counters: PackedIntArray,
    seeds: Vec<u64>,
    m_counters: u64,
    counter_max: u64,
    capacity: u64,
    inserted: u64,
}

impl CountingBloomFilter {
    pub fn new(capacity: u64, delta: f64, gamma: f64, seed: u64) -> Result<Self> {
        let (k, m_counters, t) = cbf_params(capacity, delta, gamma)?;
        Self::with_params(capacity, m_counters, k, t, seed)
    }

    pub fn with_params(capacity: u64, m_counters: u64, k: u32, t: u32, seed: u64) -> Result<Self> {
        if m_counters == 0 || k == 0 || !(2..=32).contains(&t) {
            return Err(Error::invalid("bad counting Bloom parameters"));
        }
        Ok(CountingBloomFilter {
            counters: PackedIntArray::zeros(m_counters as usize, t as usize),
            seeds: derive_seeds(seed, k as usize),
            m_counters,
            counter_max: (1u64 << t) - 1,
            capacity,
            inserted: 0,
        })
    }

    fn slots(&self, key: u64) -> impl Iterator<Item = usize> + '_ {
        self.seeds.iter().map(move |&s| (mix_key(key, s) % self.m_counters) as usize + 1)
    }

    pub fn insert(&mut self, key: u64) {
        for i in self.slots(key).collect::<Vec<_>>() {
            let v = self.counters.get(i);
            if v < self.counter_max {
                self.counters.set(i, v + 1);
            }
        }
        self.inserted += 1;
    }

    /// Removes a key previously inserted. Decrementing a zero counter
    /// means the pre-condition was violated and is reported as such.
    pub fn remove(&mut self, key: u64) -> Result<()> {
        let idxs: Vec<usize> = self.slots(key).collect();
        if idxs.iter().any(|&i| self.counters.get(i) == 0) {
            return Err(Error::ContractViolation("removing an element that is not present".into()));
        }
        for i in idxs {
            let v = self.counters.get(i);
            if v < self.counter_max {
                self.counters.set(i, v - 1);
            }
        }
        self.inserted = self.inserted.saturating_sub(1);
        Ok(())
    }

    pub fn contains(&self, key: u64) -> bool {
        self.slots(key).all(|i| self.counters.get(i) >= 1)
    }

    pub fn counter_bits(&self) -> u32 {
        self.counters.width() as u32
    }

    pub fn capacity(&self) -> u64 {
        self.capacity
    }

    pub fn over_capacity(&self) -> bool {
        self.inserted > self.capacity
    }

    pub fn measured_space_bits(&self) -> u64 {
        self.counters.size_bits() as u64
    }

    pub fn to_bytes(&self) -> Vec<u8> {
        let mut w = Writer::new(MAGIC_FILTER, KIND_CBF);
        w.put_u64(self.capacity);
        w.put_u64(self.m_counters);
        w.put_u64(self.inserted);
        w.put_u64_slice(&self.seeds);
        self.counters.write_into(&mut w);
        w.into_bytes()
    }

    pub fn from_bytes(bytes: &[u8]) -> Result<Self> {
        let (mut r, kind) = Reader::open(bytes, MAGIC_FILTER)?;
        if kind != KIND_CBF {
            return Err(Error::corrupt(format!("not a counting Bloom filter (kind {kind})")));
        }
        let capacity = r.get_u64()?;
        let m_counters = r.get_u64()?;
        let inserted = r.get_u64()?;
        let seeds = r.get_u64_vec()?;
        let counters = PackedIntArray::read_from(&mut r)?;
        r.finish()?;
        if seeds.is_empty() || counters.len() as u64 != m_counters || counters.width() > 32 {
            return Err(Error::corrupt("inconsistent counting Bloom components"));
        }
        let counter_max = (1u64 << counters.width()) - 1;
        Ok(CountingBloomFilter { counters, seeds, m_counters, counter_max, capacity, inserted })
    }
}

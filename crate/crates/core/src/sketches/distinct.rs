//! Distinct-element counting: bottom-k and the idealized single-register
//! estimator.

use std::collections::BTreeSet;

use crate::error::{Error, Result};
use crate::hashing::PolyHash;
use crate::wire::{Reader, Writer, MAGIC_SKETCH};

use super::UNIT_MODULUS;

pub(crate) const KIND_DISTINCT: u8 = 2;

/// Bottom-k estimator: keeps the k smallest distinct unit-hash values and
/// returns `k / y_k`. Fewer than k distinct values seen means the count
/// is exact and returned as such.
#[derive(Debug, Clone)]
pub struct DistinctCounter {
    k: usize,
    /// Smallest k distinct hash values, as integers below the modulus.
    smallest: BTreeSet<u64>,
    hash: PolyHash,
    seed: u64,
}

impl DistinctCounter {
    /// Bottom-k with explicit k.
    pub fn new(k: usize, seed: u64) -> Result<Self> {
        if k == 0 {
            return Err(Error::invalid("k must be positive"));
        }
        let hash = PolyHash::pairwise(UNIT_MODULUS, crate::rng::splitmix64(seed ^ 0xd157))?;
        Ok(DistinctCounter { k, smallest: BTreeSet::new(), hash, seed })
    }

    /// `k = ceil(24 / eps^2)`, the standard accuracy sizing.
    pub fn with_epsilon(epsilon: f64, seed: u64) -> Result<Self> {
        if !(epsilon > 0.0 && epsilon <= 0.5) {
            return Err(Error::invalid("epsilon must be in (0, 0.5]"));
        }
        Self::new((24.0 / (epsilon * epsilon)).ceil() as usize, seed)
    }

    pub fn k(&self) -> usize {
        self.k
    }

    pub fn offer(&mut self, key: u64) {
        let h = self.hash.eval(key);
        if self.smallest.len() < self.k {
            self.smallest.insert(h);
        } else {
            let max = *self.smallest.iter().next_back().unwrap();
            if h < max && self.smallest.insert(h) {
                self.smallest.remove(&max);
            }
        }
    }

    /// `k / y_k` once k distinct values were seen, exact count before.
    pub fn estimate(&self) -> f64 {
        if self.smallest.len() < self.k {
            return self.smallest.len() as f64;
        }
        let yk = *self.smallest.iter().next_back().unwrap() as f64 / UNIT_MODULUS as f64;
        self.k as f64 / yk
    }

    pub fn to_bytes(&self) -> Vec<u8> {
        let mut w = Writer::new(MAGIC_SKETCH, KIND_DISTINCT);
        w.put_u64(self.seed);
        w.put_usize(self.k);
        let values: Vec<u64> = self.smallest.iter().copied().collect();
        w.put_u64_slice(&values);
        w.into_bytes()
    }

    pub fn from_bytes(bytes: &[u8]) -> Result<Self> {
        let (mut r, kind) = Reader::open(bytes, MAGIC_SKETCH)?;
        if kind != KIND_DISTINCT {
            return Err(Error::corrupt(format!("not a distinct counter (kind {kind})")));
        }
        let seed = r.get_u64()?;
        let k = r.get_usize()?;
        let values = r.get_u64_vec()?;
        r.finish()?;
        let mut c = Self::new(k, seed).map_err(|_| Error::corrupt("bad k"))?;
        if values.len() > k {
            return Err(Error::corrupt("more stored values than k"));
        }
        c.smallest = values.into_iter().collect();
        Ok(c)
    }
}

/// Idealized single-register estimate: `1/y - 1` for the smallest
/// unit-interval hash over the stream.
///
/// The analysis assumes a truly uniform real hash; a degree-8 polynomial
/// stands in for it, so the `E[y] = 1/(d+1)` behaviour is approximate
/// (pairwise independence alone visibly biases the minimum on
/// structured key sets).
pub fn fm_single_estimate(keys: &[u64], seed: u64) -> Result<f64> {
    if keys.is_empty() {
        return Err(Error::invalid("empty stream"));
    }
    let hash = PolyHash::new(UNIT_MODULUS, 8, crate::rng::splitmix64(seed ^ 0xf1a))?;
    let y = keys.iter().map(|&x| hash.eval_unit(x)).fold(1.0f64, f64::min);
    Ok(1.0 / y - 1.0)
}

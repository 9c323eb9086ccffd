//! MinHash sketches and Jaccard estimation.
//!
//! Each of k seeded pairwise-independent unit hashes contributes the
//! minimum over the set; two sketches estimate Jaccard similarity as the
//! fraction of agreeing coordinates, and the pointwise minimum of two
//! sketches is exactly the sketch of the union. True min-wise independent
//! permutations would be needed for the textbook guarantee; the
//! pairwise family is the standard practical approximation and its error
//! is covered by the Monte Carlo accuracy tests.

use crate::error::{Error, Result};
use crate::exec;
use crate::hashing::PolyHash;
use crate::wire::{Reader, Writer, MAGIC_SKETCH};

use super::UNIT_MODULUS;

pub(crate) const KIND_MINHASH: u8 = 1;

/// Coordinates for absolute error `epsilon` and failure probability
/// `delta`: `k = ceil(2 ln(2/delta) / epsilon^2)`.
pub fn minhash_k(epsilon: f64, delta: f64) -> usize {
    (2.0 * (2.0 / delta).ln() / (epsilon * epsilon)).ceil() as usize
}

/// MinHash sketch: per function, the minimal hash and its pre-image.
///
/// The pre-image disambiguates coordinate agreement: two coordinates
/// count as equal only when the minimizing key is hashed identically,
/// which under a collision-free-w.h.p. family means the same minimum.
#[derive(Debug, Clone, PartialEq)]
pub struct MinHashSketch {
    seed: u64,
    /// (hash value, pre-image) per function; `u64::MAX` pairs mean empty.
    minima: Vec<(u64, u64)>,
}

impl MinHashSketch {
    /// Sketch of a set of 64-bit keys under `k` functions seeded from `seed`.
    pub fn build(keys: &[u64], k: usize, seed: u64) -> Result<Self> {
        if keys.is_empty() {
            return Err(Error::invalid("empty set"));
        }
        if k == 0 {
            return Err(Error::invalid("need at least one hash function"));
        }
        let minima = exec::map_indexed(k, |i| {
            let h = function(seed, i as u64);
            keys.iter()
                .map(|&x| (h.eval(x), x))
                .min()
                .unwrap()
        });
        Ok(MinHashSketch { seed, minima })
    }

    /// Sequential twin of [`build`](Self::build) for benchmarking.
    pub fn build_seq(keys: &[u64], k: usize, seed: u64) -> Result<Self> {
        if keys.is_empty() || k == 0 {
            return Err(Error::invalid("empty set or zero functions"));
        }
        let minima = exec::map_indexed_seq(k, |i| {
            let h = function(seed, i as u64);
            keys.iter().map(|&x| (h.eval(x), x)).min().unwrap()
        });
        Ok(MinHashSketch { seed, minima })
    }

    pub fn k(&self) -> usize {
        self.minima.len()
    }

    pub fn seed(&self) -> u64 {
        self.seed
    }

    /// `(minimal hash, its pre-image)` for function `idx`.
    pub fn coordinate(&self, idx: usize) -> (u64, u64) {
        self.minima[idx]
    }

    /// Sketch of the union: pointwise minima. Both sketches must come
    /// from the same seed and k.
    pub fn merge(&self, other: &Self) -> Result<Self> {
        if self.seed != other.seed || self.k() != other.k() {
            return Err(Error::invalid("sketches built with different seed or k"));
        }
        let minima = self
            .minima
            .iter()
            .zip(other.minima.iter())
            .map(|(&a, &b)| a.min(b))
            .collect();
        Ok(MinHashSketch { seed: self.seed, minima })
    }

    pub fn to_bytes(&self) -> Vec<u8> {
        let mut w = Writer::new(MAGIC_SKETCH, KIND_MINHASH);
        w.put_u64(self.seed);
        w.put_usize(self.minima.len());
        for &(v, x) in &self.minima {
            w.put_u64(v);
            w.put_u64(x);
        }
        w.into_bytes()
    }

    pub fn from_bytes(bytes: &[u8]) -> Result<Self> {
        let (mut r, kind) = Reader::open(bytes, MAGIC_SKETCH)?;
        if kind != KIND_MINHASH {
            return Err(Error::corrupt(format!("not a MinHash sketch (kind {kind})")));
        }
        let seed = r.get_u64()?;
        let k = r.get_usize()?;
        if k == 0 {
            return Err(Error::corrupt("empty sketch"));
        }
        let mut minima = Vec::with_capacity(k);
        for _ in 0..k {
            let v = r.get_u64()?;
            let x = r.get_u64()?;
            minima.push((v, x));
        }
        r.finish()?;
        Ok(MinHashSketch { seed, minima })
    }
}

fn function(seed: u64, index: u64) -> PolyHash {
    PolyHash::pairwise(UNIT_MODULUS, crate::rng::splitmix64(seed ^ crate::rng::splitmix64(index)))
        .expect("fixed prime modulus is valid")
}

/// Fraction of coordinates on which the two sketches agree.
pub fn jaccard_estimate(a: &MinHashSketch, b: &MinHashSketch) -> Result<f64> {
    if a.seed != b.seed || a.k() != b.k() {
        return Err(Error::invalid("sketches built with different seed or k"));
    }
    let agree = a.minima.iter().zip(b.minima.iter()).filter(|(x, y)| x == y).count();
    Ok(agree as f64 / a.k() as f64)
}

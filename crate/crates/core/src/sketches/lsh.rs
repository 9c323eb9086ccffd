//! Locality-sensitive hashing: AND/OR amplification and nearest-neighbor
//! search over MinHash sketches.

use std::collections::HashMap;

use crate::error::{Error, Result};
use crate::rng::splitmix64;

use super::minhash::MinHashSketch;

/// Collision probability of the AND(r)+OR(b) construction at Jaccard
/// distance `d`: `1 - (1 - (1-d)^r)^b`.
pub fn lsh_scurve(d: f64, r: u32, b: u32) -> Result<f64> {
    if !(0.0..=1.0).contains(&d) {
        return Err(Error::invalid("distance must be in [0, 1]"));
    }
    if r == 0 || b == 0 {
        return Err(Error::invalid("r and b must be positive"));
    }
    let p = 1.0 - d;
    Ok(1.0 - (1.0 - p.powi(r as i32)).powi(b as i32))
}

/// AND-arity centering the s-curve slope near distance `d_center`:
/// `floor(ln(1 - 2^(-1/b)) / ln(1 - d_center))`, clamped to at least 1.
pub fn lsh_fit_r(b: u32, d_center: f64) -> Result<u32> {
    if b == 0 {
        return Err(Error::invalid("b must be positive"));
    }
    if !(d_center > 0.0 && d_center < 1.0) {
        return Err(Error::invalid("slope center must be strictly inside (0, 1)"));
    }
    let numer = (1.0 - 2f64.powf(-1.0 / b as f64)).ln();
    let denom = (1.0 - d_center).ln();
    Ok(((numer / denom).floor() as i64).max(1) as u32)
}

/// Banded index over MinHash sketches: `b` tables keyed by `r` combined
/// coordinates each. Sketches must carry at least `r * b` coordinates.
#[derive(Debug)]
pub struct LshIndex {
    bands: u32,
    arity: u32,
    tables: Vec<HashMap<u64, Vec<u64>>>,
    store: HashMap<u64, MinHashSketch>,
    /// Bucket-scan cap per query; hits set the truncation flag.
    candidate_budget: usize,
    truncated: std::sync::atomic::AtomicBool,
}

impl LshIndex {
    pub fn new(bands: u32, arity: u32) -> Result<Self> {
        if bands == 0 || arity == 0 {
            return Err(Error::invalid("bands and arity must be positive"));
        }
        Ok(LshIndex {
            bands,
            arity,
            tables: vec![HashMap::new(); bands as usize],
            store: HashMap::new(),
            candidate_budget: usize::MAX,
            truncated: std::sync::atomic::AtomicBool::new(false),
        })
    }

    pub fn with_candidate_budget(mut self, budget: usize) -> Self {
        self.candidate_budget = budget.max(1);
        self
    }

    /// True if any query since construction hit the candidate budget.
    pub fn truncated(&self) -> bool {
        self.truncated.load(std::sync::atomic::Ordering::Relaxed)
    }

    fn check_compatible(&self, sketch: &MinHashSketch) -> Result<()> {
        if sketch.k() < (self.bands * self.arity) as usize {
            return Err(Error::invalid(format!(
                "sketch has {} coordinates, index needs {}",
                sketch.k(),
                self.bands * self.arity
            )));
        }
        Ok(())
    }

    /// Collapses one band of `r` coordinates to a single table key with a
    /// seeded mixer standing in for the collision-free combiner.
    fn band_key(&self, sketch: &MinHashSketch, band: u32) -> u64 {
        let mut acc = splitmix64(0x1b5 ^ band as u64);
        for j in 0..self.arity {
            let idx = (band * self.arity + j) as usize;
            let (v, x) = sketch.coordinate(idx);
            acc = splitmix64(acc ^ v ^ splitmix64(x));
        }
        acc
    }

    pub fn insert(&mut self, id: u64, sketch: MinHashSketch) -> Result<()> {
        self.check_compatible(&sketch)?;
        for band in 0..self.bands {
            let key = self.band_key(&sketch, band);
            self.tables[band as usize].entry(key).or_default().push(id);
        }
        self.store.insert(id, sketch);
        Ok(())
    }

    /// Scans the query's `b` buckets and returns the first stored id whose
    /// distance (per `verifier`, given the stored sketch) is at most
    /// `threshold`.
    pub fn query<F>(&self, sketch: &MinHashSketch, threshold: f64, verifier: F) -> Result<Option<u64>>
    where
        F: Fn(&MinHashSketch, &MinHashSketch) -> f64,
    {
        self.check_compatible(sketch)?;
        let mut checked = 0usize;
        for band in 0..self.bands {
            let key = self.band_key(sketch, band);
            let Some(bucket) = self.tables[band as usize].get(&key) else { continue };
            for &id in bucket {
                if checked >= self.candidate_budget {
                    self.truncated.store(true, std::sync::atomic::Ordering::Relaxed);
                    return Ok(None);
                }
                checked += 1;
                let stored = &self.store[&id];
                if verifier(sketch, stored) <= threshold {
                    return Ok(Some(id));
                }
            }
        }
        Ok(None)
    }

    /// Number of candidate verifications the query would perform.
    pub fn candidate_count(&self, sketch: &MinHashSketch) -> Result<usize> {
        self.check_compatible(sketch)?;
        let mut n = 0;
        for band in 0..self.bands {
            let key = self.band_key(sketch, band);
            n += self.tables[band as usize].get(&key).map(|b| b.len()).unwrap_or(0);
        }
        Ok(n)
    }

    pub fn len(&self) -> usize {
        self.store.len()
    }

    pub fn is_empty(&self) -> bool {
        self.store.is_empty()
    }
}

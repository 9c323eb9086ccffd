//! Sliding-window counting over bit streams (exponential-histogram
//! buckets) and its generalization to sums of small integers.
//!
//! Groups of 2^k recent 1-bits are kept so that every size class except
//! the largest holds between B and B+1 groups (`B = ceil(1/eps)`). A
//! query sums the groups intersecting the queried window; only the oldest
//! group can overshoot, which bounds the estimate by `(1 + eps)` times
//! the true count, deterministically.

use std::collections::VecDeque;

use crate::error::{Error, Result};
use crate::wire::{Reader, Writer, MAGIC_SKETCH};

pub(crate) const KIND_DGIM: u8 = 4;

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
struct Bucket {
    /// Timestamp of the group's most recent 1-bit, modulo 2W.
    right_ts: u64,
    /// Number of 1-bits in the group; always a power of two.
    size: u64,
}

/// DGIM window: deterministic `(1+eps)` overcount of recent 1-bits.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct DgimWindow {
    window: u64,
    b_param: u64,
    clock: u64,
    /// Oldest first.
    buckets: VecDeque<Bucket>,
}

impl DgimWindow {
    pub fn new(window: u64, epsilon: f64) -> Result<Self> {
        if window == 0 {
            return Err(Error::invalid("window must be positive"));
        }
        if !(epsilon > 0.0 && epsilon <= 1.0) {
            return Err(Error::invalid("epsilon must be in (0, 1]"));
        }
        Ok(DgimWindow {
            window,
            b_param: (1.0 / epsilon).ceil() as u64,
            clock: 0,
            buckets: VecDeque::new(),
        })
    }

    pub fn window(&self) -> u64 {
        self.window
    }

    /// B, the per-size group budget.
    pub fn group_budget(&self) -> u64 {
        self.b_param
    }

    fn age(&self, ts: u64) -> u64 {
        (self.clock + 2 * self.window - ts) % (2 * self.window)
    }

    pub fn push(&mut self, bit: bool) {
        self.clock = (self.clock + 1) % (2 * self.window);
        // Timestamps are kept modulo 2W, so ages stay unambiguous as long
        // as expired groups leave promptly.
        while let Some(front) = self.buckets.front() {
            if self.age(front.right_ts) >= self.window {
                self.buckets.pop_front();
            } else {
                break;
            }
        }
        if !bit {
            return;
        }
        self.buckets.push_back(Bucket { right_ts: self.clock, size: 1 });
        let mut size = 1u64;
        loop {
            let idxs: Vec<usize> = self
                .buckets
                .iter()
                .enumerate()
                .filter(|(_, b)| b.size == size)
                .map(|(i, _)| i)
                .collect();
            if (idxs.len() as u64) < self.b_param + 2 {
                break;
            }
            // Merge the two oldest groups of this size; the merged group
            // keeps the newer right timestamp.
            let (first, second) = (idxs[0], idxs[1]);
            debug_assert_eq!(second, first + 1);
            let newer = self.buckets[second];
            self.buckets[second] = Bucket { right_ts: newer.right_ts, size: size * 2 };
            self.buckets.remove(first);
            size *= 2;
        }
    }

    /// Number of 1-bits among the last `recent` stream elements,
    /// deterministically overcounted by at most a factor `1 + eps`.
    pub fn count(&self, recent: u64) -> Result<u64> {
        if recent == 0 || recent > self.window {
            return Err(Error::invalid(format!(
                "query width {recent} outside 1..={}",
                self.window
            )));
        }
        Ok(self
            .buckets
            .iter()
            .filter(|b| self.age(b.right_ts) < recent)
            .map(|b| b.size)
            .sum())
    }

    /// Checks the five structural rules; the merge cascade maintains them
    /// after every push.
    pub fn check_invariants(&self) -> Result<()> {
        let mut per_size: std::collections::BTreeMap<u64, u64> = Default::default();
        let mut prev_age: Option<u64> = None;
        for (i, b) in self.buckets.iter().enumerate() {
            if !b.size.is_power_of_two() {
                return Err(Error::corrupt(format!("group size {} not a power of two", b.size)));
            }
            let age = self.age(b.right_ts);
            if age >= self.window {
                return Err(Error::corrupt("expired group retained"));
            }
            if let Some(p) = prev_age {
                if age >= p {
                    return Err(Error::corrupt("group timestamps not increasing"));
                }
            }
            prev_age = Some(age);
            if i + 1 < self.buckets.len() {
                let newer = self.buckets[i + 1].size;
                if b.size != newer && b.size != newer * 2 {
                    return Err(Error::corrupt(format!(
                        "adjacent group sizes {} and {newer} break the halving rule",
                        b.size
                    )));
                }
            }
            *per_size.entry(b.size).or_insert(0) += 1;
        }
        if let Some((&largest, _)) = per_size.iter().next_back() {
            for (&size, &count) in &per_size {
                if count > self.b_param + 1 {
                    return Err(Error::corrupt(format!("{count} groups of size {size}")));
                }
                if size != largest && count < self.b_param {
                    return Err(Error::corrupt(format!(
                        "only {count} groups of non-largest size {size}"
                    )));
                }
            }
        }
        Ok(())
    }

    pub fn to_bytes(&self) -> Vec<u8> {
        let mut w = Writer::new(MAGIC_SKETCH, KIND_DGIM);
        w.put_u64(self.window);
        w.put_u64(self.b_param);
        w.put_u64(self.clock);
        w.put_usize(self.buckets.len());
        for b in &self.buckets {
            w.put_u64(b.right_ts);
            w.put_u64(b.size);
        }
        w.into_bytes()
    }

    pub fn from_bytes(bytes: &[u8]) -> Result<Self> {
        let (mut r, kind) = Reader::open(bytes, MAGIC_SKETCH)?;
        if kind != KIND_DGIM {
            return Err(Error::corrupt(format!("not a DGIM window (kind {kind})")));
        }
        let window = r.get_u64()?;
        let b_param = r.get_u64()?;
        let clock = r.get_u64()?;
        let len = r.get_usize()?;
        let mut buckets = VecDeque::with_capacity(len);
        for _ in 0..len {
            let right_ts = r.get_u64()?;
            let size = r.get_u64()?;
            buckets.push_back(Bucket { right_ts, size });
        }
        r.finish()?;
        if window == 0 || b_param == 0 {
            return Err(Error::corrupt("bad DGIM header"));
        }
        let w = DgimWindow { window, b_param, clock, buckets };
        w.check_invariants()?;
        Ok(w)
    }
}

/// Sum of the last `recent` q-bit integers: one DGIM instance per bit lane.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct DgimSumWindow {
    lanes: Vec<DgimWindow>,
}

impl DgimSumWindow {
    pub fn new(window: u64, epsilon: f64, value_bits: u32) -> Result<Self> {
        if value_bits == 0 || value_bits > 32 {
            return Err(Error::invalid("value width must be in 1..=32"));
        }
        let lanes = (0..value_bits)
            .map(|_| DgimWindow::new(window, epsilon))
            .collect::<Result<Vec<_>>>()?;
        Ok(DgimSumWindow { lanes })
    }

    pub fn value_bits(&self) -> u32 {
        self.lanes.len() as u32
    }

    pub fn push(&mut self, value: u64) -> Result<()> {
        if value >= 1u64 << self.lanes.len() {
            return Err(Error::invalid(format!(
                "value {value} wider than {} bits",
                self.lanes.len()
            )));
        }
        for (i, lane) in self.lanes.iter_mut().enumerate() {
            lane.push(value >> i & 1 == 1);
        }
        Ok(())
    }

    pub fn sum(&self, recent: u64) -> Result<u64> {
        let mut total = 0u64;
        for (i, lane) in self.lanes.iter().enumerate() {
            total += lane.count(recent)? << i;
        }
        Ok(total)
    }
}

//! Quotient filter: quotienting plus three metadata bits per slot.
//!
//! A p-bit fingerprint splits into a q-bit quotient (the canonical slot)
//! and an r-bit remainder (the stored payload). Remainders of the same
//! quotient sit in contiguous runs, runs are sorted by quotient and
//! packed into clusters; `is_occupied`, `is_shifted` and `is_continuation`
//! bits make the layout decodable. Inserts and deletes decode the
//! affected cluster to its (quotient, remainders) multiset, edit it, and
//! re-lay it out canonically; cluster lengths are O(1) expected, so this
//! matches the usual shifting algorithms in cost while keeping one code
//! path for every edit.

use std::collections::BTreeMap;

use crate::error::{Error, Result};
use crate::rng::splitmix64;
use crate::succinct::PackedIntArray;
use crate::wire::{Reader, Writer, MAGIC_FILTER};

pub(crate) const KIND_QF: u8 = 3;

/// `(q, r)` for capacity `m`, false-positive rate `delta`, and load
/// factor `alpha`: `r = ceil(log2(1/delta))`, `q = ceil(log2(m/alpha))`.
pub fn qf_params(m: u64, delta: f64, alpha: f64) -> Result<(u32, u32)> {
    if m == 0 {
        return Err(Error::invalid("capacity must be positive"));
    }
    if !(delta > 0.0 && delta < 1.0) {
        return Err(Error::invalid("delta must be in (0, 1)"));
    }
    if !(alpha > 0.5 && alpha < 1.0) {
        return Err(Error::invalid("alpha must be in (0.5, 1)"));
    }
    let r = (1.0 / delta).log2().ceil().max(1.0) as u32;
    let q = (m as f64 / alpha).log2().ceil().max(1.0) as u32;
    Ok((q, r))
}

const OCCUPIED: u64 = 0b001;
const SHIFTED: u64 = 0b010;
const CONTINUATION: u64 = 0b100;

#[derive(Debug, Clone)]
pub struct QuotientFilter {
    /// Each slot: remainder in the high `r` bits, metadata in the low 3.
    slots: PackedIntArray,
    q: u32,
    r: u32,
    seed: u64,
    count: u64,
    capacity: u64,
}

impl QuotientFilter {
    /// Filter with `2^q` slots, `r`-bit remainders, and a load-factor cap
    /// (default 0.9 via [`Self::new`]).
    pub fn with_params(q: u32, r: u32, max_load: f64, seed: u64) -> Result<Self> {
        if q == 0 || q > 28 || r == 0 || r > 56 {
            return Err(Error::invalid("bad quotient filter geometry"));
        }
        if !(0.0 < max_load && max_load < 1.0) {
            return Err(Error::invalid("load factor cap must be in (0, 1)"));
        }
        let slots_n = 1u64 << q;
        let capacity = (((slots_n as f64) * max_load) as u64).min(slots_n - 1).max(1);
        Ok(QuotientFilter {
            slots: PackedIntArray::zeros(slots_n as usize, r as usize + 3),
            q,
            r,
            seed,
            count: 0,
            capacity,
        })
    }

    /// Geometry from [`qf_params`], capped at load factor `alpha`.
    pub fn new(m: u64, delta: f64, alpha: f64, seed: u64) -> Result<Self> {
        let (q, r) = qf_params(m, delta, alpha)?;
        Self::with_params(q, r, alpha, seed)
    }

    pub fn num_slots(&self) -> u64 {
        1u64 << self.q
    }

    pub fn len(&self) -> u64 {
        self.count
    }

    pub fn is_empty(&self) -> bool {
        self.count == 0
    }

    pub fn load_factor(&self) -> f64 {
        self.count as f64 / self.num_slots() as f64
    }

    pub fn remainder_bits(&self) -> u32 {
        self.r
    }

    pub fn quotient_bits(&self) -> u32 {
        self.q
    }

    /// `2^q * (r + 3)` exactly.
    pub fn measured_space_bits(&self) -> u64 {
        self.slots.size_bits() as u64
    }

    fn fingerprint(&self, key: u64) -> (u64, u64) {
        let p = self.q + self.r;
        let fp = splitmix64(key ^ self.seed) & ((1u64 << p) - 1);
        (fp >> self.r, fp & ((1u64 << self.r) - 1))
    }

    #[inline]
    fn slot(&self, i: u64) -> u64 {
        self.slots.get(i as usize + 1)
    }

    #[inline]
    fn set_slot(&mut self, i: u64, v: u64) {
        self.slots.set(i as usize + 1, v);
    }

    #[inline]
    fn is_empty_slot(&self, i: u64) -> bool {
        self.slot(i) & (OCCUPIED | SHIFTED) == 0
    }

    #[inline]
    fn prev(&self, i: u64) -> u64 {
        (i + self.num_slots() - 1) & (self.num_slots() - 1)
    }

    #[inline]
    fn next(&self, i: u64) -> u64 {
        (i + 1) & (self.num_slots() - 1)
    }

    /// Start of the cluster containing the non-empty slot `i`.
    fn cluster_start(&self, mut i: u64) -> u64 {
        debug_assert!(!self.is_empty_slot(i));
        while !self.is_empty_slot(self.prev(i)) {
            i = self.prev(i);
        }
        i
    }

    /// Decodes the cluster starting at `start` into quotient -> sorted
    /// remainders, returning the multiset and the cluster length.
    fn decode_cluster(&self, start: u64) -> (BTreeMap<u64, Vec<u64>>, u64) {
        let mut runs: Vec<Vec<u64>> = Vec::new();
        let mut occupied: Vec<u64> = Vec::new();
        let mut i = start;
        let mut len = 0u64;
        while !self.is_empty_slot(i) {
            let v = self.slot(i);
            if v & CONTINUATION == 0 {
                runs.push(Vec::new());
            }
            runs.last_mut().unwrap().push(v >> 3);
            if v & OCCUPIED != 0 {
                occupied.push(i);
            }
            i = self.next(i);
            len += 1;
            debug_assert!(len <= self.num_slots());
        }
        debug_assert_eq!(runs.len(), occupied.len(), "run/quotient count mismatch");
        (occupied.into_iter().zip(runs).collect(), len)
    }

    /// Lays a cluster multiset back out canonically: runs in quotient
    /// order, each starting at its canonical slot or right after the
    /// previous run, everything else zeroed.
    fn write_cluster(&mut self, start: u64, old_len: u64, entries: &BTreeMap<u64, Vec<u64>>) {
        // Wrapped quotient order relative to the cluster start.
        let n = self.num_slots();
        let rel = move |quot: u64| (quot + n - start) & (n - 1);
        let mut quots: Vec<u64> = entries.keys().copied().collect();
        quots.sort_unstable_by_key(|&qt| rel(qt));

        let mut i = start;
        for _ in 0..old_len {
            self.set_slot(i, 0);
            i = self.next(i);
        }
        let mut cursor = start;
        for &quot in &quots {
            if rel(quot) > rel(cursor) {
                cursor = quot;
            }
            for (t, &rem) in entries[&quot].iter().enumerate() {
                let mut v = rem << 3;
                if t > 0 {
                    v |= CONTINUATION;
                }
                if cursor != quot {
                    v |= SHIFTED;
                }
                // Preserve the occupied bit, which belongs to the slot
                // index rather than the remainder stored there.
                let occ = self.slot(cursor) & OCCUPIED;
                self.set_slot(cursor, v | occ);
                cursor = self.next(cursor);
            }
            let v = self.slot(quot);
            self.set_slot(quot, v | OCCUPIED);
        }
    }

    /// Locates the entries of the cluster around canonical slot `quot`.
    fn cluster_for_edit(&self, quot: u64) -> (u64, u64, BTreeMap<u64, Vec<u64>>) {
        if self.is_empty_slot(quot) {
            (quot, 0, BTreeMap::new())
        } else {
            let start = self.cluster_start(quot);
            let (entries, len) = self.decode_cluster(start);
            (start, len, entries)
        }
    }

    pub fn insert(&mut self, key: u64) -> Result<()> {
        if self.count >= self.capacity {
            return Err(Error::Capacity(format!(
                "quotient filter at configured load cap ({} of {} slots)",
                self.count,
                self.num_slots()
            )));
        }
        let (quot, rem) = self.fingerprint(key);
        let (start, old_len, mut entries) = self.cluster_for_edit(quot);
        let run = entries.entry(quot).or_default();
        let pos = run.partition_point(|&x| x <= rem);
        run.insert(pos, rem);
        self.write_cluster(start, old_len, &entries);
        self.count += 1;
        Ok(())
    }

    /// Removes one stored occurrence of the key's fingerprint.
    pub fn remove(&mut self, key: u64) -> Result<()> {
        let (quot, rem) = self.fingerprint(key);
        let (start, old_len, mut entries) = self.cluster_for_edit(quot);
        let run = match entries.get_mut(&quot) {
            Some(r) => r,
            None => {
                return Err(Error::ContractViolation(
                    "removing a fingerprint that is not present".into(),
                ))
            }
        };
        match run.iter().position(|&x| x == rem) {
            Some(p) => {
                run.remove(p);
            }
            None => {
                return Err(Error::ContractViolation(
                    "removing a fingerprint that is not present".into(),
                ))
            }
        }
        if run.is_empty() {
            entries.remove(&quot);
        }
        self.write_cluster(start, old_len, &entries);
        self.count -= 1;
        Ok(())
    }

    pub fn contains(&self, key: u64) -> bool {
        let (quot, rem) = self.fingerprint(key);
        self.contains_fingerprint(quot, rem)
    }

    /// Membership of an explicit (quotient, remainder) fingerprint.
    pub fn contains_fingerprint(&self, quot: u64, rem: u64) -> bool {
        if self.slot(quot) & OCCUPIED == 0 {
            return false;
        }
        let start = self.cluster_start(quot);
        let (entries, _) = self.decode_cluster(start);
        entries.get(&quot).map(|run| run.contains(&rem)).unwrap_or(false)
    }

    /// Full decode of every cluster: quotient -> sorted remainders.
    pub fn decode_all(&self) -> BTreeMap<u64, Vec<u64>> {
        let mut out = BTreeMap::new();
        let n = self.num_slots();
        // Start scanning right after an empty slot so no cluster is split.
        let anchor = match (0..n).find(|&i| self.is_empty_slot(i)) {
            Some(a) => a,
            None => return out, // cannot happen under the capacity cap
        };
        let mut i = self.next(anchor);
        let mut scanned = 0u64;
        while scanned < n {
            if self.is_empty_slot(i) {
                i = self.next(i);
                scanned += 1;
                continue;
            }
            let (entries, len) = self.decode_cluster(i);
            for (qt, rems) in entries {
                out.entry(qt).or_insert_with(Vec::new).extend(rems);
            }
            scanned += len;
            for _ in 0..len {
                i = self.next(i);
            }
        }
        out
    }

    /// Lengths of all clusters, for occupancy statistics.
    pub fn cluster_lengths(&self) -> Vec<u64> {
        let mut out = Vec::new();
        let n = self.num_slots();
        let anchor = match (0..n).find(|&i| self.is_empty_slot(i)) {
            Some(a) => a,
            None => return out,
        };
        let mut i = self.next(anchor);
        let mut scanned = 0u64;
        let mut current = 0u64;
        while scanned < n {
            if self.is_empty_slot(i) {
                if current > 0 {
                    out.push(current);
                    current = 0;
                }
            } else {
                current += 1;
            }
            i = self.next(i);
            scanned += 1;
        }
        if current > 0 {
            out.push(current);
        }
        out
    }

    pub fn to_bytes(&self) -> Vec<u8> {
        let mut w = Writer::new(MAGIC_FILTER, KIND_QF);
        w.put_u64(self.q as u64);
        w.put_u64(self.r as u64);
        w.put_u64(self.seed);
        w.put_u64(self.count);
        w.put_u64(self.capacity);
        self.slots.write_into(&mut w);
        w.into_bytes()
    }

    pub fn from_bytes(bytes: &[u8]) -> Result<Self> {
        let (mut rd, kind) = Reader::open(bytes, MAGIC_FILTER)?;
        if kind != KIND_QF {
            return Err(Error::corrupt(format!("not a quotient filter (kind {kind})")));
        }
        let q = rd.get_u64()? as u32;
        let r = rd.get_u64()? as u32;
        let seed = rd.get_u64()?;
        let count = rd.get_u64()?;
        let capacity = rd.get_u64()?;
        let slots = PackedIntArray::read_from(&mut rd)?;
        rd.finish()?;
        if q == 0 || q > 28 || r == 0 || r > 56 {
            return Err(Error::corrupt("bad quotient filter geometry"));
        }
        if slots.len() != 1usize << q || slots.width() != r as usize + 3 || capacity >= 1u64 << q {
            return Err(Error::corrupt("inconsistent quotient filter components"));
        }
        let qf = QuotientFilter { slots, q, r, seed, count, capacity };
        let decoded: u64 = qf.decode_all().values().map(|v| v.len() as u64).sum();
        if decoded != count {
            return Err(Error::corrupt("stored count does not match slot contents"));
        }
        Ok(qf)
    }
}

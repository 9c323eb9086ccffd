//! Porat-Porat streaming matcher: O(log n) words of state.
//!
//! Level i tracks occurrences of the pattern prefix of length 2^i inside
//! the last 2^(i+1) stream positions. At least three such occurrences
//! force the prefix to be periodic, so a window's occurrence set is
//! always an arithmetic progression and stores as (first, count, gap).
//! When the oldest candidate reaches the window boundary its doubled
//! prefix is checked by comparing the fingerprint of the whole window —
//! reconstructed as `A - C * z^window` from the running stream
//! fingerprint A and the level's prefix fingerprint C — and promoted a
//! level on success.
//!
//! Patterns whose length is not a power of two get one extra top level
//! holding occurrences of the longest power-of-two prefix; its candidates
//! are verified against the full-pattern fingerprint at age exactly n.
//! The matcher therefore always holds `floor(log2 n) + 1` levels.
//!
//! Occurrences are reported one push after their last character arrives
//! (`finish` flushes the final positions, standing in for an explicit
//! end-of-stream sentinel character).

use crate::error::{Error, Result};
use crate::hashing::{RabinContext, RabinFingerprint};

/// One window: an arithmetic progression of occurrences plus the
/// fingerprint bookkeeping needed to reconstruct window fingerprints.
#[derive(Debug, Clone, Copy, Default)]
struct PpLevel {
    /// Oldest stored occurrence position (1-based), when `count >= 1`.
    first: u64,
    count: u64,
    /// Common difference of the progression, when `count >= 2`.
    gap: u64,
    /// Fingerprint of stream[first .. first+gap-1], when `count >= 2`.
    fp_b: u64,
    /// Fingerprint of stream[1 .. first-1], when `count >= 1`.
    fp_c: u64,
    /// z^gap and z^-gap, frozen when the second occurrence arrives.
    z_gap: u64,
    z_gap_inv: u64,
    /// Running z^(L - first + 1) and its inverse (L = stream length);
    /// maintained while the level is non-empty.
    acc: u64,
    acc_inv: u64,
}

/// Snapshot of one level's compressed state, for tests and inspection.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct LevelState {
    pub first: u64,
    pub count: u64,
    pub gap: u64,
    pub fp_b: u64,
    pub fp_c: u64,
}

#[derive(Debug, Clone)]
pub struct PpMatcher {
    ctx: RabinContext,
    n: usize,
    /// Index of the top level: floor(log2 n).
    top: usize,
    /// Fingerprint values of y[1..2^i] for i = 0..=top.
    prefix_fps: Vec<u64>,
    /// Fingerprint value of the whole pattern.
    full_fp: u64,
    /// z^n mod q.
    z_pow_full: u64,
    first_char: u8,
    levels: Vec<PpLevel>,
    /// Fingerprint value of the whole stream so far (A).
    stream_fp: RabinFingerprint,
    /// Characters pushed so far (L).
    pushed: u64,
    occurrences: u64,
    /// Arithmetic-progression violations, i.e. detected collisions.
    collisions: u64,
    /// Level visits across all pushes; each push makes O(1) per level.
    level_ops: u64,
    /// n = 1 only: a match is waiting to be reported on the next push.
    pending_single: bool,
    finished: bool,
}

impl PpMatcher {
    pub fn new(pattern: &[u8], ctx: RabinContext) -> Result<Self> {
        if pattern.is_empty() {
            return Err(Error::invalid("empty pattern"));
        }
        let n = pattern.len();
        let top = (usize::BITS - 1 - n.leading_zeros()) as usize;
        let mut prefix_fps = Vec::with_capacity(top + 1);
        for i in 0..=top {
            prefix_fps.push(ctx.of(&pattern[..1 << i]).value);
        }
        let full_fp = ctx.of(pattern).value;
        let z_pow_full = ctx.pow(n as u64);
        Ok(PpMatcher {
            ctx,
            n,
            top,
            prefix_fps,
            full_fp,
            z_pow_full,
            first_char: pattern[0],
            levels: vec![PpLevel::default(); top + 1],
            stream_fp: RabinFingerprint::empty(),
            pushed: 0,
            occurrences: 0,
            collisions: 0,
            level_ops: 0,
            pending_single: false,
            finished: false,
        })
    }

    /// Matcher with a modulus sized for streams up to `m_max` characters.
    pub fn with_stream_bound(pattern: &[u8], m_max: u64, seed: u64) -> Result<Self> {
        Self::new(pattern, RabinContext::for_stream(m_max, seed)?)
    }

    pub fn pattern_len(&self) -> usize {
        self.n
    }

    /// Number of levels held: always `floor(log2 n) + 1`.
    pub fn level_count(&self) -> usize {
        self.levels.len()
    }

    pub fn occurrences(&self) -> u64 {
        self.occurrences
    }

    /// Arithmetic-progression violations seen; nonzero means a
    /// fingerprint collision corrupted a window (vanishing probability
    /// with a properly sized modulus).
    pub fn collision_events(&self) -> u64 {
        self.collisions
    }

    pub fn position(&self) -> u64 {
        self.pushed
    }

    /// Total level visits so far; bounded by a small constant times
    /// `level_count()` per push.
    pub fn level_ops(&self) -> u64 {
        self.level_ops
    }

    #[doc(hidden)]
    pub fn level_states(&self) -> Vec<LevelState> {
        self.levels
            .iter()
            .map(|l| LevelState {
                first: l.first,
                count: l.count,
                gap: l.gap,
                fp_b: l.fp_b,
                fp_c: l.fp_c,
            })
            .collect()
    }

    /// Window width of level `l`: doubled prefix below the top, the full
    /// pattern length at the top.
    fn check_age(&self, l: usize) -> u64 {
        if l == self.top {
            self.n as u64
        } else {
            1 << (l + 1)
        }
    }

    /// Feeds one character; returns the number of full-pattern
    /// occurrences confirmed by this push (each ended at the previous
    /// position).
    pub fn push(&mut self, c: u8) -> u64 {
        let completed = self.expire_and_promote();
        // The new character arrives: advance A and the accumulators.
        self.pushed += 1;
        self.stream_fp = self.ctx.append(self.stream_fp, c);
        for l in 0..self.levels.len() {
            self.level_ops += 1;
            if self.levels[l].count >= 1 {
                self.levels[l].acc = self.ctx.mul(self.levels[l].acc, self.ctx.point());
                self.levels[l].acc_inv = self.ctx.mul(self.levels[l].acc_inv, self.ctx.z_inv());
            }
        }
        if self.n == 1 {
            // Degenerate pattern: direct comparison, no level machinery.
            // Reporting still lags one push so all paths agree.
            if c == self.first_char {
                self.pending_single = true;
            }
            return completed;
        }
        if c == self.first_char {
            let fp_before = {
                // A now includes c: strip it to get the prefix fingerprint.
                let minus = self.ctx.sub(self.stream_fp.value, c as u64);
                self.ctx.mul(minus, self.ctx.z_inv())
            };
            self.insert_occurrence(0, self.pushed, fp_before, self.ctx.point(), self.ctx.z_inv());
        }
        completed
    }

    /// Runs one final expiry round, confirming occurrences that end at
    /// the last stream position (what a trailing sentinel push would do).
    pub fn finish(&mut self) -> u64 {
        if self.finished {
            return 0;
        }
        self.finished = true;
        self.expire_and_promote()
    }

    /// The pre-arrival phase: for every level whose oldest candidate has
    /// reached the window boundary, verify the doubled prefix (or the
    /// full pattern at the top) and promote or count it.
    fn expire_and_promote(&mut self) -> u64 {
        let arriving = self.pushed + 1;
        let mut completed = 0;
        if self.n == 1 {
            if self.pending_single {
                self.pending_single = false;
                self.occurrences += 1;
                completed = 1;
            }
            return completed;
        }
        for l in 0..=self.top {
            self.level_ops += 1;
            if self.levels[l].count == 0 {
                continue;
            }
            let age = self.check_age(l);
            if arriving < age + self.levels[l].first {
                continue;
            }
            debug_assert_eq!(self.levels[l].first, arriving - age);
            // Window fingerprint: w = A - C * z^width.
            let width_pow =
                if l == self.top { self.z_pow_full } else { self.ctx.pow2(l + 1) };
            let w =
                self.ctx.sub(self.stream_fp.value, self.ctx.mul(self.levels[l].fp_c, width_pow));
            let target = if l == self.top { self.full_fp } else { self.prefix_fps[l + 1] };
            let (pos, fp_c) = (self.levels[l].first, self.levels[l].fp_c);
            if w == target {
                if l == self.top || (l + 1 == self.top && self.n == 1 << self.top) {
                    // Full pattern confirmed (directly at the top, or at
                    // top-1 when n is an exact power of two).
                    self.occurrences += 1;
                    completed += 1;
                } else {
                    self.insert_occurrence(
                        l + 1,
                        pos,
                        fp_c,
                        self.ctx.pow2(l + 1),
                        self.ctx.inv_pow2(l + 1),
                    );
                }
            }
            self.remove_first(l);
        }
        completed
    }

    /// Appends occurrence `pos` to level `l`. `fp_before` is the
    /// fingerprint of the stream strictly before `pos`; the accumulator
    /// seeds depend on the call site (z for fresh level-0 inserts,
    /// z^(2^l) for promotions, which happen one position earlier).
    fn insert_occurrence(&mut self, l: usize, pos: u64, fp_before: u64, acc0: u64, acc0_inv: u64) {
        let prefix_fp = self.prefix_fps[l];
        let lvl = &mut self.levels[l];
        match lvl.count {
            0 => {
                lvl.first = pos;
                lvl.count = 1;
                lvl.fp_c = fp_before;
                lvl.acc = acc0;
                lvl.acc_inv = acc0_inv;
            }
            1 => {
                // B spans [first, pos): B = (A - D - C*z^(|D|+|B|)) * z^-|D|
                // with D the level's prefix fingerprint and
                // z^(|D|+|B|) = acc by the accumulator invariant.
                let gap = pos - lvl.first;
                let with_c = self.ctx.mul(lvl.fp_c, lvl.acc);
                let num = self.ctx.sub(self.ctx.sub(self.stream_fp.value, prefix_fp), with_c);
                lvl.fp_b = self.ctx.mul(num, self.ctx.inv_pow2(l));
                lvl.z_gap = self.ctx.mul(lvl.acc, self.ctx.inv_pow2(l));
                lvl.z_gap_inv = self.ctx.mul(lvl.acc_inv, self.ctx.pow2(l));
                lvl.gap = gap;
                lvl.count = 2;
                debug_assert_eq!(lvl.z_gap, self.ctx.pow(gap));
            }
            _ => {
                // The progression admits only equally spaced appends; a
                // violation means a fingerprint collision let a bogus
                // occurrence through. Drop it and record the event.
                if pos != lvl.first + lvl.count * lvl.gap {
                    self.collisions += 1;
                    return;
                }
                lvl.count += 1;
            }
        }
    }

    /// Drops the oldest occurrence of level `l`, advancing C past it
    /// (`C' = C * z^gap + B`; B survives unchanged because the window is
    /// periodic with period `gap`).
    fn remove_first(&mut self, l: usize) {
        let lvl = &mut self.levels[l];
        debug_assert!(lvl.count >= 1);
        if lvl.count == 1 {
            *lvl = PpLevel::default();
            return;
        }
        lvl.fp_c = self.ctx.add(self.ctx.mul(lvl.fp_c, lvl.z_gap), lvl.fp_b);
        lvl.first += lvl.gap;
        lvl.count -= 1;
        lvl.acc = self.ctx.mul(lvl.acc, lvl.z_gap_inv);
        lvl.acc_inv = self.ctx.mul(lvl.acc_inv, lvl.z_gap);
    }
}

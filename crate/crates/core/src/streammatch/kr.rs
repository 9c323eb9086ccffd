//! Karp-Rabin sliding-window matcher: O(n) words, O(1) delay.

use std::collections::VecDeque;

use crate::error::{Error, Result};
use crate::hashing::{RabinContext, RabinFingerprint};

#[derive(Debug, Clone)]
pub struct KrMatcher {
    ctx: RabinContext,
    pattern_fp: RabinFingerprint,
    pattern_len: usize,
    window: VecDeque<u8>,
    window_fp: RabinFingerprint,
    z_pow_nm1: u64,
    pushed: u64,
    occurrences: u64,
}

impl KrMatcher {
    pub fn new(pattern: &[u8], ctx: RabinContext) -> Result<Self> {
        if pattern.is_empty() {
            return Err(Error::invalid("empty pattern"));
        }
        let pattern_fp = ctx.of(pattern);
        let z_pow_nm1 = ctx.pow(pattern.len() as u64 - 1);
        Ok(KrMatcher {
            ctx,
            pattern_fp,
            pattern_len: pattern.len(),
            window: VecDeque::with_capacity(pattern.len()),
            window_fp: RabinFingerprint::empty(),
            z_pow_nm1,
            pushed: 0,
            occurrences: 0,
        })
    }

    /// Matcher with a modulus sized for streams up to `m_max` characters.
    pub fn with_stream_bound(pattern: &[u8], m_max: u64, seed: u64) -> Result<Self> {
        Self::new(pattern, RabinContext::for_stream(m_max, seed)?)
    }

    /// Feeds one character; true when an occurrence ends at this position.
    pub fn push(&mut self, c: u8) -> bool {
        self.pushed += 1;
        if self.window.len() < self.pattern_len {
            self.window.push_back(c);
            self.window_fp = self.ctx.append(self.window_fp, c);
        } else {
            let out = self.window.pop_front().unwrap();
            self.window.push_back(c);
            self.window_fp = self.ctx.slide(self.window_fp, out, c, self.z_pow_nm1);
        }
        let hit =
            self.window.len() == self.pattern_len && self.window_fp.value == self.pattern_fp.value;
        if hit {
            self.occurrences += 1;
        }
        hit
    }

    /// Characters consumed so far.
    pub fn position(&self) -> u64 {
        self.pushed
    }

    pub fn occurrences(&self) -> u64 {
        self.occurrences
    }
}

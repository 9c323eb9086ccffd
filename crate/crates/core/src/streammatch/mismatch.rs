//! Approximate (k-mismatch) streaming matching via prime-shift
//! decomposition.
//!
//! For a prime d, splitting both pattern and stream into the d
//! sub-sequences of every d-th character turns one mismatch into exactly
//! one mismatching sub-sequence. Any k+1 mismatch positions have some
//! pairwise distance not divisible by at least one prime in a set P of
//! the smallest primes >= k+1 whose log-sum exceeds (k+1)^2 * log2(n), so
//! an alignment within Hamming distance k is exactly one with at most k
//! mismatching shifts under every prime in P. Shift matching runs on
//! per-residue sliding fingerprints; equal strings always compare equal,
//! so no occurrence is missed and false positives require a fingerprint
//! collision.

use std::collections::VecDeque;

use crate::error::{Error, Result};
use crate::hashing::{is_prime, RabinContext, RabinFingerprint};

/// Smallest primes `>= k+1` whose `log2` sum exceeds `(k+1)^2 * log2(n)`.
pub fn prime_shift_set(k: u32, n: u64) -> Vec<u64> {
    let n = n.max(2);
    let target = ((k + 1) as f64).powi(2) * (n as f64).log2();
    let mut primes = Vec::new();
    let mut sum = 0.0;
    let mut candidate = (k as u64 + 1).max(2);
    while sum <= target {
        if is_prime(candidate) {
            primes.push(candidate);
            sum += (candidate as f64).log2();
        }
        candidate += 1;
    }
    primes
}

/// Sliding fingerprints of one residue-class sub-stream, at the two
/// window lengths its sub-patterns can take.
#[derive(Debug, Clone)]
struct SubLane {
    ring: VecDeque<u8>,
    /// (window length, fingerprint, z^(len-1)); length-0 lanes hold none.
    windows: Vec<(usize, RabinFingerprint, u64)>,
    seen: usize,
}

impl SubLane {
    fn new(ctx: &RabinContext, lengths: &[usize]) -> Self {
        let windows = lengths
            .iter()
            .filter(|&&l| l > 0)
            .map(|&l| (l, RabinFingerprint::empty(), ctx.pow(l as u64 - 1)))
            .collect();
        SubLane { ring: VecDeque::new(), windows, seen: 0 }
    }

    fn push(&mut self, ctx: &RabinContext, c: u8) {
        self.seen += 1;
        self.ring.push_back(c);
        let cap = self.windows.iter().map(|&(l, _, _)| l).max().unwrap_or(0) + 1;
        while self.ring.len() > cap {
            self.ring.pop_front();
        }
        for (len, fp, znm1) in &mut self.windows {
            if self.seen <= *len {
                *fp = ctx.append(*fp, c);
            } else {
                let out = self.ring[self.ring.len() - 1 - *len];
                *fp = ctx.slide(*fp, out, c, *znm1);
            }
        }
    }

    fn fp_of_len(&self, len: usize) -> Option<u64> {
        if self.seen < len {
            return None;
        }
        self.windows.iter().find(|&&(l, _, _)| l == len).map(|&(_, fp, _)| fp.value)
    }
}

/// Per-prime machinery: sub-pattern fingerprints per shift and one
/// sliding lane per residue class.
#[derive(Debug, Clone)]
struct PrimeLane {
    d: u64,
    /// (fingerprint, length) of the shift `y_{i:d}` for i = 1..=d.
    sub_fps: Vec<(u64, usize)>,
    lanes: Vec<SubLane>,
}

#[derive(Debug, Clone)]
pub struct KMismatchMatcher {
    ctx: RabinContext,
    n: usize,
    k: u32,
    primes: Vec<PrimeLane>,
    pushed: u64,
}

impl KMismatchMatcher {
    pub fn new(pattern: &[u8], k: u32, ctx: RabinContext) -> Result<Self> {
        let n = pattern.len();
        if n == 0 {
            return Err(Error::invalid("empty pattern"));
        }
        let primes = prime_shift_set(k, n as u64)
            .into_iter()
            .map(|d| {
                // Shift i takes pattern characters i, i+d, i+2d, ...
                let sub_fps: Vec<(u64, usize)> = (1..=d as usize)
                    .map(|i| {
                        let sub: Vec<u8> =
                            pattern.iter().skip(i - 1).step_by(d as usize).copied().collect();
                        (ctx.of(&sub).value, sub.len())
                    })
                    .collect();
                // Residue r gets stream positions p with (p-1) mod d = r;
                // sub-patterns come in at most two lengths.
                let lanes: Vec<SubLane> = (0..d as usize)
                    .map(|_| {
                        let mut lens: Vec<usize> = sub_fps.iter().map(|&(_, l)| l).collect();
                        lens.sort_unstable();
                        lens.dedup();
                        SubLane::new(&ctx, &lens)
                    })
                    .collect();
                PrimeLane { d, sub_fps, lanes }
            })
            .collect();
        Ok(KMismatchMatcher { ctx, n, k, primes, pushed: 0 })
    }

    pub fn with_stream_bound(pattern: &[u8], k: u32, m_max: u64, seed: u64) -> Result<Self> {
        Self::new(pattern, k, RabinContext::for_stream(m_max, seed)?)
    }

    pub fn primes(&self) -> Vec<u64> {
        self.primes.iter().map(|p| p.d).collect()
    }

    pub fn mismatch_budget(&self) -> u32 {
        self.k
    }

    /// Feeds one character. Reports `(end position, mismatch estimate)`
    /// when the window ending here is within Hamming distance k under
    /// every prime's shift test; the estimate is the largest number of
    /// mismatching shifts observed, a lower bound on the true distance.
    pub fn push(&mut self, c: u8) -> Option<(u64, u32)> {
        self.pushed += 1;
        let ctx = self.ctx.clone();
        for lane in &mut self.primes {
            let r = ((self.pushed - 1) % lane.d) as usize;
            lane.lanes[r].push(&ctx, c);
        }
        if self.pushed < self.n as u64 {
            return None;
        }
        let start = self.pushed - self.n as u64 + 1;
        let mut worst = 0u32;
        for lane in &self.primes {
            let mut mismatching = 0u32;
            for i in 1..=lane.d {
                let (want, len) = lane.sub_fps[(i - 1) as usize];
                if len == 0 {
                    continue;
                }
                let r = ((start + i - 2) % lane.d) as usize;
                match lane.lanes[r].fp_of_len(len) {
                    Some(got) if got == want => {}
                    _ => mismatching += 1,
                }
                if mismatching > self.k {
                    break;
                }
            }
            if mismatching > self.k {
                return None;
            }
            worst = worst.max(mismatching);
        }
        Some((self.pushed, worst))
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::rng::DetRng;
    use crate::streammatch::pp::PpMatcher;

    fn hamming(a: &[u8], b: &[u8]) -> u32 {
        a.iter().zip(b).filter(|(x, y)| x != y).count() as u32
    }

    /// End positions within Hamming distance k, by direct scan.
    fn naive_k_ends(pattern: &[u8], stream: &[u8], k: u32) -> Vec<u64> {
        let n = pattern.len();
        (n..=stream.len())
            .filter(|&e| hamming(&stream[e - n..e], pattern) <= k)
            .map(|e| e as u64)
            .collect()
    }

    #[test]
    fn prime_set_properties() {
        let primes = prime_shift_set(1, 16);
        assert!(primes.iter().all(|&p| p >= 2 && is_prime(p)));
        let product: f64 = primes.iter().map(|&p| p as f64).product();
        assert!(product > 16f64.powi(4), "product {product}");

        for (k, n) in [(1u32, 16u64), (2, 64), (3, 256)] {
            let primes = prime_shift_set(k, n);
            assert!(primes.iter().all(|&p| p > k as u64));
            let bound = ((k + 1) as f64).powi(2) * (n as f64).log2() / ((k + 1) as f64).log2();
            assert!(primes.len() as f64 <= bound.ceil() + 1.0, "{} primes", primes.len());
        }
    }

    #[test]
    fn one_mismatch_is_reported() {
        let pattern = b"abba";
        let stream = b"zzabcazz";
        let mut m = KMismatchMatcher::with_stream_bound(pattern, 1, 64, 3).unwrap();
        let mut hits = Vec::new();
        for &c in stream.iter() {
            if let Some((end, mm)) = m.push(c) {
                hits.push((end, mm));
            }
        }
        // "abca" ends at position 6 with exactly one mismatch from "abba".
        assert_eq!(hits, vec![(6, 1)]);
    }

    #[test]
    fn zero_mismatch_degenerates_to_exact_matching() {
        let mut rng = DetRng::new(5);
        for round in 0..50 {
            let n = 2 + rng.next_below(15) as usize;
            let m_len = n + rng.next_below(500) as usize;
            let pattern: Vec<u8> = (0..n).map(|_| b'a' + rng.next_below(2) as u8).collect();
            let stream: Vec<u8> = (0..m_len).map(|_| b'a' + rng.next_below(2) as u8).collect();

            let mut km = KMismatchMatcher::with_stream_bound(&pattern, 0, 4096, round).unwrap();
            let km_ends: Vec<u64> =
                stream.iter().filter_map(|&c| km.push(c)).map(|(e, _)| e).collect();

            let mut pp = PpMatcher::with_stream_bound(&pattern, 4096, round).unwrap();
            let mut pp_ends = Vec::new();
            for (i, &c) in stream.iter().enumerate() {
                for _ in 0..pp.push(c) {
                    pp_ends.push(i as u64);
                }
            }
            for _ in 0..pp.finish() {
                pp_ends.push(stream.len() as u64);
            }
            assert_eq!(km_ends, pp_ends, "round {round}");
        }
    }

    #[test]
    fn no_false_negatives_against_naive_oracle() {
        let mut rng = DetRng::new(31);
        for round in 0..200 {
            let k = rng.next_below(4) as u32;
            let n = 3 + rng.next_below(14) as usize;
            let m_len = n + rng.next_below(800) as usize;
            let sigma = 2 + rng.next_below(2);
            let pattern: Vec<u8> = (0..n).map(|_| b'a' + rng.next_below(sigma) as u8).collect();
            let stream: Vec<u8> = (0..m_len).map(|_| b'a' + rng.next_below(sigma) as u8).collect();

            let mut m = KMismatchMatcher::with_stream_bound(&pattern, k, 4096, round).unwrap();
            let mut reported = Vec::new();
            for &c in &stream {
                if let Some((end, mm)) = m.push(c) {
                    assert!(mm <= k);
                    // The shift tally never exceeds the true distance.
                    let e = end as usize;
                    assert!(mm <= hamming(&stream[e - n..e], &pattern));
                    reported.push(end);
                }
            }
            let truth = naive_k_ends(&pattern, &stream, k);
            // No false negatives; false positives only via collisions,
            // which the modulus makes vanishingly rare.
            for t in &truth {
                assert!(reported.contains(t), "missed end {t} at round {round}");
            }
            assert_eq!(reported, truth, "round {round} (collision?)");
        }
    }
}

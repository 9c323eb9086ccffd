//! Primality testing and prime sampling.

use crate::error::{Error, Result};
use crate::rng::DetRng;

use super::{mul_mod, pow_mod};

/// Deterministic Miller-Rabin for 64-bit integers.
///
/// The witness set {2, 3, 5, 7, 11, 13, 17, 19, 23, 29, 31, 37} is exact
/// for every n < 2^64.
pub fn is_prime(n: u64) -> bool {
    if n < 2 {
        return false;
    }
    for p in [2u64, 3, 5, 7, 11, 13, 17, 19, 23, 29, 31, 37] {
        if n == p {
            return true;
        }
        if n.is_multiple_of(p) {
            return false;
        }
    }
    let mut d = n - 1;
    let mut s = 0u32;
    while d.is_multiple_of(2) {
        d /= 2;
        s += 1;
    }
    'witness: for a in [2u64, 3, 5, 7, 11, 13, 17, 19, 23, 29, 31, 37] {
        let mut x = pow_mod(a, d, n);
        if x == 1 || x == n - 1 {
            continue;
        }
        for _ in 1..s {
            x = mul_mod(x, x, n);
            if x == n - 1 {
                continue 'witness;
            }
        }
        return false;
    }
    true
}

/// A prime in `[lo, hi]`, sampled at a seeded random start and scanned
/// cyclically. Errors if the range contains no prime.
pub fn gen_prime(lo: u64, hi: u64, rng: &mut DetRng) -> Result<u64> {
    if lo < 2 || hi < lo {
        return Err(Error::invalid(format!("bad prime range [{lo}, {hi}]")));
    }
    let span = hi - lo + 1;
    let start = rng.next_below(span);
    for step in 0..span {
        let candidate = lo + (start + step) % span;
        if is_prime(candidate) {
            return Ok(candidate);
        }
    }
    Err(Error::NotFound(format!("no prime in [{lo}, {hi}]")))
}

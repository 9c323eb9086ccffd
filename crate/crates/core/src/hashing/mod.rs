//! Seeded hash families.
//!
//! Polynomial hashing over a prime field (pairwise and k-wise
//! independent), range-reduced and unit-interval variants, and Rabin
//! string fingerprints with append/concat/slide algebra. Each constructor
//! takes an explicit 64-bit seed; draws come from [`crate::rng::DetRng`].

pub mod poly;
pub mod prime;
pub mod rabin;

pub use poly::{PolyHash, RangeHash};
pub use prime::{gen_prime, is_prime};
pub use rabin::{RabinContext, RabinFingerprint};

/// Modular multiplication via 128-bit intermediates. `m` must be < 2^63.
#[inline]
pub(crate) fn mul_mod(a: u64, b: u64, m: u64) -> u64 {
    (a as u128 * b as u128 % m as u128) as u64
}

/// `base^exp mod m` by square and multiply.
pub(crate) fn pow_mod(mut base: u64, mut exp: u64, m: u64) -> u64 {
    let mut acc = 1u64 % m;
    base %= m;
    while exp > 0 {
        if exp & 1 == 1 {
            acc = mul_mod(acc, base, m);
        }
        base = mul_mod(base, base, m);
        exp >>= 1;
    }
    acc
}

/// Modular inverse by Fermat: `a^(m-2) mod m` for prime `m`.
pub(crate) fn inv_mod(a: u64, m: u64) -> u64 {
    pow_mod(a, m - 2, m)
}

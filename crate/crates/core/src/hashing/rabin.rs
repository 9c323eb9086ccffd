//! Rabin string fingerprints with append/concat/slide algebra.
//!
//! The fingerprint of a string is a polynomial with the string's bytes as
//! coefficients, evaluated at a seeded random point `z` modulo a prime
//! `q`. Together with `z^len mod q` as a length carrier, fingerprints can
//! be appended to, concatenated, and slid across a fixed-size window in
//! constant time; equal strings always have equal fingerprints and
//! distinct strings of length at most n collide with probability at most
//! `n/q`.

use crate::error::{Error, Result};
use crate::rng::DetRng;

use super::{gen_prime, inv_mod, mul_mod};

/// Fingerprint of a byte string: the hash value and `z^len mod q`.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct RabinFingerprint {
    pub value: u64,
    pub zpow: u64,
}

impl RabinFingerprint {
    /// Fingerprint of the empty string: `(0, z^0) = (0, 1)`.
    pub fn empty() -> Self {
        RabinFingerprint { value: 0, zpow: 1 }
    }
}

/// Shared modulus, evaluation point, and precomputed powers.
#[derive(Debug, Clone)]
pub struct RabinContext {
    q: u64,
    z: u64,
    z_inv: u64,
    /// `z^(2^i) mod q` for i up to the configured maximum length.
    pow2: Vec<u64>,
    /// `z^(-2^i) mod q`.
    inv_pow2: Vec<u64>,
}

impl RabinContext {
    /// Context with modulus `q` (prime, < 2^62) and the maximum string
    /// length the doubling power tables should cover.
    pub fn new(q: u64, seed: u64, max_len: u64) -> Result<Self> {
        if !(3..super::poly::MAX_MODULUS).contains(&q) || !super::prime::is_prime(q) {
            return Err(Error::invalid(format!("modulus {q} must be an odd prime below 2^62")));
        }
        let mut rng = DetRng::derive(seed, 0x7261626e);
        let z = rng.next_below(q);
        let levels = 64 - max_len.max(1).leading_zeros() as usize + 1;
        let mut pow2 = Vec::with_capacity(levels);
        let mut inv_pow2 = Vec::with_capacity(levels);
        let mut p = z % q;
        for _ in 0..levels {
            pow2.push(p);
            inv_pow2.push(inv_mod(p, q));
            p = mul_mod(p, p, q);
        }
        let z_inv = if z == 0 { 0 } else { inv_mod(z, q) };
        let ctx = RabinContext { q, z, z_inv, pow2, inv_pow2 };
        ctx.check_inverses()?;
        Ok(ctx)
    }

    /// Picks a prime `q` in `[m_max^3, 2*m_max^3]`, the inverse-polynomial
    /// collision regime for streams of length up to `m_max`.
    pub fn for_stream(m_max: u64, seed: u64) -> Result<Self> {
        let cube = (m_max.max(2) as u128).pow(3).min((super::poly::MAX_MODULUS - 1) as u128 / 2) as u64;
        let mut rng = DetRng::derive(seed, 0x71707269);
        let q = gen_prime(cube.max(3), cube * 2, &mut rng)?;
        Self::new(q, seed, m_max)
    }

    fn check_inverses(&self) -> Result<()> {
        if self.z == 0 {
            // z = 0 collapses every power; still algebraically consistent,
            // but the inverse table is meaningless. Re-draws are the
            // caller's business; probability is 1/q.
            return Ok(());
        }
        for (p, ip) in self.pow2.iter().zip(self.inv_pow2.iter()) {
            if mul_mod(*p, *ip, self.q) != 1 {
                return Err(Error::corrupt("inverse power table inconsistent"));
            }
        }
        Ok(())
    }

    pub fn modulus(&self) -> u64 {
        self.q
    }

    pub fn point(&self) -> u64 {
        self.z
    }

    /// `z^(2^i) mod q`.
    pub fn pow2(&self, i: usize) -> u64 {
        self.pow2[i]
    }

    /// `z^(-2^i) mod q`.
    pub fn inv_pow2(&self, i: usize) -> u64 {
        self.inv_pow2[i]
    }

    pub fn z_inv(&self) -> u64 {
        self.z_inv
    }

    /// `z^e mod q` for arbitrary `e` (square and multiply, O(log e)).
    pub fn pow(&self, e: u64) -> u64 {
        super::pow_mod(self.z, e, self.q)
    }

    /// Fingerprint of `s` by folding [`append`](Self::append).
    pub fn of(&self, s: &[u8]) -> RabinFingerprint {
        let mut f = RabinFingerprint::empty();
        for &c in s {
            f = self.append(f, c);
        }
        f
    }

    /// Fingerprint of `x . c` from the fingerprint of `x`.
    #[inline]
    pub fn append(&self, f: RabinFingerprint, c: u8) -> RabinFingerprint {
        RabinFingerprint {
            value: (mul_mod(f.value, self.z, self.q) + c as u64) % self.q,
            zpow: mul_mod(f.zpow, self.z, self.q),
        }
    }

    /// Fingerprint of `x . y` from the fingerprints of `x` and `y`.
    #[inline]
    pub fn concat(&self, fx: RabinFingerprint, fy: RabinFingerprint) -> RabinFingerprint {
        RabinFingerprint {
            value: (mul_mod(fx.value, fy.zpow, self.q) + fy.value) % self.q,
            zpow: mul_mod(fx.zpow, fy.zpow, self.q),
        }
    }

    /// Slides a length-n window one position: drops `out_c`, appends `in_c`.
    /// `z_pow_nm1` must be `z^(n-1) mod q`.
    #[inline]
    pub fn slide(
        &self,
        f: RabinFingerprint,
        out_c: u8,
        in_c: u8,
        z_pow_nm1: u64,
    ) -> RabinFingerprint {
        let drop = mul_mod(out_c as u64, z_pow_nm1, self.q);
        let without = (f.value + self.q - drop % self.q) % self.q;
        RabinFingerprint {
            value: (mul_mod(without, self.z, self.q) + in_c as u64) % self.q,
            zpow: f.zpow,
        }
    }

    /// `a + b mod q` on hash values.
    #[inline]
    pub fn add(&self, a: u64, b: u64) -> u64 {
        (a + b) % self.q
    }

    /// `a - b mod q` on hash values.
    #[inline]
    pub fn sub(&self, a: u64, b: u64) -> u64 {
        (a + self.q - b % self.q) % self.q
    }

    /// `a * b mod q` on hash values.
    #[inline]
    pub fn mul(&self, a: u64, b: u64) -> u64 {
        mul_mod(a, b, self.q)
    }
}

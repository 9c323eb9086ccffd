//! Polynomial hash families over a prime field.

use crate::error::{Error, Result};
use crate::rng::DetRng;

use super::{gen_prime, mul_mod};

/// Largest modulus accepted; 128-bit intermediates stay exact below it.
pub const MAX_MODULUS: u64 = 1 << 62;

/// A degree-(k-1) polynomial `sum a_i x^i mod M` with uniformly drawn
/// coefficients: a k-wise independent family member.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct PolyHash {
    modulus: u64,
    coeffs: Vec<u64>,
}

impl PolyHash {
    /// Uniformly drawn degree-(k-1) polynomial. `modulus` must be a prime
    /// below 2^62.
    pub fn new(modulus: u64, degree: usize, seed: u64) -> Result<Self> {
        if !(2..MAX_MODULUS).contains(&modulus) {
            return Err(Error::invalid("modulus out of range"));
        }
        if degree == 0 {
            return Err(Error::invalid("degree must be at least 1"));
        }
        let mut rng = DetRng::new(seed);
        let coeffs = (0..degree).map(|_| rng.next_below(modulus)).collect();
        Ok(PolyHash { modulus, coeffs })
    }

    /// Pairwise-independent `a*x + b mod M`.
    pub fn pairwise(modulus: u64, seed: u64) -> Result<Self> {
        Self::new(modulus, 2, seed)
    }

    /// Degree-1 variant with `a != 0`: collision-free on `[0, M)`.
    pub fn collision_free(modulus: u64, seed: u64) -> Result<Self> {
        let mut h = Self::new(modulus, 2, seed)?;
        let mut rng = DetRng::derive(seed, 0x636f6c6c);
        while h.coeffs[1] == 0 {
            h.coeffs[1] = rng.next_below(modulus);
        }
        Ok(h)
    }

    /// Picks a prime modulus `M >= working_set^(c+2)` (default exponent
    /// c = 2) so evaluation is collision-free on the working set with
    /// high probability, then draws a degree-1 function with `a != 0`.
    pub fn collision_free_for(working_set: u64, seed: u64) -> Result<Self> {
        let target = (working_set as u128).saturating_pow(4).min((MAX_MODULUS - 1) as u128 / 2) as u64;
        let target = target.max(2);
        let mut rng = DetRng::derive(seed, 0x7072696d);
        let modulus = gen_prime(target, target.saturating_mul(2).min(MAX_MODULUS - 1), &mut rng)?;
        Self::collision_free(modulus, seed)
    }

    pub fn from_coeffs(modulus: u64, coeffs: Vec<u64>) -> Result<Self> {
        if !(2..MAX_MODULUS).contains(&modulus) {
            return Err(Error::invalid("modulus out of range"));
        }
        if coeffs.is_empty() || coeffs.iter().any(|&c| c >= modulus) {
            return Err(Error::invalid("bad coefficients"));
        }
        Ok(PolyHash { modulus, coeffs })
    }

    pub fn modulus(&self) -> u64 {
        self.modulus
    }

    pub fn coeffs(&self) -> &[u64] {
        &self.coeffs
    }

    /// Horner evaluation of the polynomial at `x`.
    #[inline]
    pub fn eval(&self, x: u64) -> u64 {
        let x = x % self.modulus;
        let mut acc = 0u64;
        for &c in self.coeffs.iter().rev() {
            acc = (mul_mod(acc, x, self.modulus) + c) % self.modulus;
        }
        acc
    }

    /// Evaluation scaled to the real unit interval `[0, 1]`.
    #[inline]
    pub fn eval_unit(&self, x: u64) -> f64 {
        self.eval(x) as f64 / self.modulus as f64
    }
}

/// `((a*x + b) mod M) mod m`: a universal family with co-domain `[0, m)`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct RangeHash {
    inner: PolyHash,
    range: u64,
}

impl RangeHash {
    /// Uniform `a in (0, M)`, `b in [0, M)` reduced modulo `range`.
    pub fn new(modulus: u64, range: u64, seed: u64) -> Result<Self> {
        if range == 0 {
            return Err(Error::invalid("empty range"));
        }
        let inner = PolyHash::collision_free(modulus, seed)?;
        Ok(RangeHash { inner, range })
    }

    pub fn from_params(modulus: u64, a: u64, b: u64, range: u64) -> Result<Self> {
        if a == 0 || a >= modulus || b >= modulus || range == 0 {
            return Err(Error::invalid("bad range hash parameters"));
        }
        Ok(RangeHash { inner: PolyHash::from_coeffs(modulus, vec![b, a])?, range })
    }

    pub fn range(&self) -> u64 {
        self.range
    }

    #[inline]
    pub fn eval(&self, x: u64) -> u64 {
        self.inner.eval(x) % self.range
    }
}

//! Morris approximate counter.
//!
//! One register X, incremented with probability `2^-X` per event; the
//! estimate `2^X - 1` is unbiased with variance at most `m^2 / 2`, so the
//! usual choice for mean/median boosting is `s = 3 / (2 eps^2)` copies
//! per group.

use crate::rng::DetRng;
use crate::wire::{Reader, Writer, MAGIC_SKETCH};

pub(crate) const KIND_MORRIS: u8 = 3;

#[derive(Debug, Clone)]
pub struct MorrisCounter {
    register: u32,
    rng: DetRng,
    saturated: bool,
}

impl MorrisCounter {
    pub fn new(seed: u64) -> Self {
        MorrisCounter { register: 0, rng: DetRng::derive(seed, 0x6d6f72), saturated: false }
    }

    /// Counts one event: increments X with probability exactly `2^-X`
    /// (an integer comparison against a uniform 64-bit draw). X is capped
    /// at 63; hitting the cap sets a saturation flag.
    pub fn tick(&mut self) {
        if self.register >= 63 {
            self.saturated = true;
            return;
        }
        let draw = self.rng.next_u64();
        // P(draw < 2^(64 - X)) = 2^-X.
        let ok = if self.register == 0 { true } else { draw < 1u64 << (64 - self.register) };
        if ok {
            self.register += 1;
        }
    }

    pub fn estimate(&self) -> f64 {
        2f64.powi(self.register as i32) - 1.0
    }

    pub fn register(&self) -> u32 {
        self.register
    }

    pub fn saturated(&self) -> bool {
        self.saturated
    }

    pub fn to_bytes(&self) -> Vec<u8> {
        let mut w = Writer::new(MAGIC_SKETCH, KIND_MORRIS);
        w.put_u64(self.register as u64);
        w.put_u8(self.saturated as u8);
        w.into_bytes()
    }

    pub fn from_bytes(bytes: &[u8], seed: u64) -> crate::error::Result<Self> {
        let (mut r, kind) = Reader::open(bytes, MAGIC_SKETCH)?;
        if kind != KIND_MORRIS {
            return Err(crate::error::Error::corrupt(format!("not a Morris counter (kind {kind})")));
        }
        let register = r.get_u64()? as u32;
        let saturated = r.get_u8()? != 0;
        r.finish()?;
        Ok(MorrisCounter { register, rng: DetRng::derive(seed, 0x6d6f72), saturated })
    }
}

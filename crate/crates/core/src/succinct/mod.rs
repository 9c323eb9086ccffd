//! Bit-level building blocks.
//!
//! [`PackedBits`] and [`PackedIntArray`] store raw bits and fixed-width
//! integers in exactly the information-theoretic number of bits, with
//! constant-time extraction. [`RsBitvector`] adds rank/select on top of a
//! zero-order-compressed class/offset encoding. [`EliasFano`] stores
//! sorted integer sequences, and [`WaveletTree`] lifts rank/select/access
//! to strings over general alphabets.
//!
//! Bit and element positions are 1-based throughout, following the usual
//! succinct-data-structure convention (`rank(0) = 0`).

pub mod elias_fano;
pub mod packed;
pub mod rrr;
pub mod wavelet;

pub use elias_fano::EliasFano;
pub use packed::{PackedBits, PackedIntArray};
pub use rrr::RsBitvector;
pub use wavelet::{WaveletTree, WtCode};

use crate::error::{Error, Result};
use crate::wire::{Reader, Writer, MAGIC_SUCCINCT};

const TAG_BITVECTOR: u8 = 1;
const TAG_ELIAS_FANO: u8 = 2;
const TAG_WAVELET: u8 = 3;

macro_rules! standalone_wire {
    ($ty:ty, $tag:expr, $name:literal) => {
        impl $ty {
            /// Serializes with the shared `MDT1` envelope.
            pub fn to_bytes(&self) -> Vec<u8> {
                let mut w = Writer::new(MAGIC_SUCCINCT, $tag);
                self.write_into(&mut w);
                w.into_bytes()
            }

            /// Parses a standalone serialized structure.
            pub fn from_bytes(bytes: &[u8]) -> Result<Self> {
                let (mut r, tag) = Reader::open(bytes, MAGIC_SUCCINCT)?;
                if tag != $tag {
                    return Err(Error::corrupt(concat!("not a serialized ", $name)));
                }
                let v = Self::read_from(&mut r)?;
                r.finish()?;
                Ok(v)
            }
        }
    };
}

standalone_wire!(RsBitvector, TAG_BITVECTOR, "rank/select bitvector");
standalone_wire!(EliasFano, TAG_ELIAS_FANO, "Elias-Fano sequence");
standalone_wire!(WaveletTree, TAG_WAVELET, "wavelet tree");

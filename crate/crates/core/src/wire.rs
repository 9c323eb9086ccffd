//! Binary serialization plumbing.
//!
//! All serialized artifacts share the same envelope: a 4-byte magic, a
//! 1-byte structure/kind tag, and a little-endian `u16` format version,
//! followed by type-specific payload. Everything is little-endian and
//! bit-exact across platforms.

use crate::error::{Error, Result};

pub const VERSION: u16 = 1;

/// Magic for standalone succinct structures.
pub const MAGIC_SUCCINCT: &[u8; 4] = b"MDT1";
/// Magic for text indexes.
pub const MAGIC_INDEX: &[u8; 4] = b"MDTI";
/// Magic for filters.
pub const MAGIC_FILTER: &[u8; 4] = b"MDTF";
/// Magic for sketches.
pub const MAGIC_SKETCH: &[u8; 4] = b"MDTS";

#[derive(Debug, Default)]
pub struct Writer {
    buf: Vec<u8>,
}

impl Writer {
    pub fn new(magic: &[u8; 4], tag: u8) -> Self {
        let mut w = Writer { buf: Vec::new() };
        w.buf.extend_from_slice(magic);
        w.put_u8(tag);
        w.put_u16(VERSION);
        w
    }

    pub fn put_u8(&mut self, v: u8) {
        self.buf.push(v);
    }

    pub fn put_u16(&mut self, v: u16) {
        self.buf.extend_from_slice(&v.to_le_bytes());
    }

    pub fn put_u64(&mut self, v: u64) {
        self.buf.extend_from_slice(&v.to_le_bytes());
    }

    pub fn put_usize(&mut self, v: usize) {
        self.put_u64(v as u64);
    }

    pub fn put_f64(&mut self, v: f64) {
        self.buf.extend_from_slice(&v.to_le_bytes());
    }

    pub fn put_u64_slice(&mut self, vs: &[u64]) {
        self.put_usize(vs.len());
        for &v in vs {
            self.put_u64(v);
        }
    }

    pub fn put_bytes(&mut self, bs: &[u8]) {
        self.put_usize(bs.len());
        self.buf.extend_from_slice(bs);
    }

    pub fn into_bytes(self) -> Vec<u8> {
        self.buf
    }
}

#[derive(Debug)]
pub struct Reader<'a> {
    buf: &'a [u8],
    pos: usize,
}

impl<'a> Reader<'a> {
    /// Opens an envelope, validating magic and version; returns the tag.
    pub fn open(buf: &'a [u8], magic: &[u8; 4]) -> Result<(Self, u8)> {
        let mut r = Reader { buf, pos: 0 };
        let got = r.take(4)?;
        if got != magic {
            return Err(Error::corrupt(format!(
                "bad magic {:02x?}, expected {:?}",
                got,
                std::str::from_utf8(magic).unwrap()
            )));
        }
        let tag = r.get_u8()?;
        let version = r.get_u16()?;
        if version != VERSION {
            return Err(Error::corrupt(format!("unsupported version {version}")));
        }
        Ok((r, tag))
    }

    fn take(&mut self, n: usize) -> Result<&'a [u8]> {
        if self.pos + n > self.buf.len() {
            return Err(Error::corrupt("truncated input"));
        }
        let s = &self.buf[self.pos..self.pos + n];
        self.pos += n;
        Ok(s)
    }

    pub fn get_u8(&mut self) -> Result<u8> {
        Ok(self.take(1)?[0])
    }

    pub fn get_u16(&mut self) -> Result<u16> {
        Ok(u16::from_le_bytes(self.take(2)?.try_into().unwrap()))
    }

    pub fn get_u64(&mut self) -> Result<u64> {
        Ok(u64::from_le_bytes(self.take(8)?.try_into().unwrap()))
    }

    pub fn get_usize(&mut self) -> Result<usize> {
        let v = self.get_u64()?;
        usize::try_from(v).map_err(|_| Error::corrupt("length overflows usize"))
    }

    pub fn get_f64(&mut self) -> Result<f64> {
        Ok(f64::from_le_bytes(self.take(8)?.try_into().unwrap()))
    }

    pub fn get_u64_vec(&mut self) -> Result<Vec<u64>> {
        let n = self.get_usize()?;
        if n > self.buf.len() / 8 + 1 {
            return Err(Error::corrupt("implausible array length"));
        }
        let mut out = Vec::with_capacity(n);
        for _ in 0..n {
            out.push(self.get_u64()?);
        }
        Ok(out)
    }

    pub fn get_bytes(&mut self) -> Result<Vec<u8>> {
        let n = self.get_usize()?;
        Ok(self.take(n)?.to_vec())
    }

    pub fn finish(self) -> Result<()> {
        if self.pos != self.buf.len() {
            return Err(Error::corrupt("trailing bytes"));
        }
        Ok(())
    }
}

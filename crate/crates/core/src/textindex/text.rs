//! Sentinel-terminated text.

use crate::error::{Error, Result};

/// Internal sentinel byte; compares smaller than every text symbol.
pub const SENTINEL: u8 = 0;

/// Byte displayed for the sentinel.
pub const SENTINEL_CHAR: u8 = b'$';

/// A byte string terminated by a unique sentinel.
///
/// User bytes may not contain the byte 0 or `'$'`; the terminating `'$'`
/// is stored internally as byte 0 so it sorts below every other symbol.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Text {
    bytes: Vec<u8>,
}

impl Text {
    /// Wraps user content, appending the sentinel.
    pub fn new(content: &[u8]) -> Result<Self> {
        if content.iter().any(|&b| b == SENTINEL || b == SENTINEL_CHAR) {
            return Err(Error::invalid("text must not contain byte 0 or '$'"));
        }
        let mut bytes = content.to_vec();
        bytes.push(SENTINEL);
        Ok(Text { bytes })
    }

    /// Parses a string that may carry an explicit trailing `'$'`.
    pub fn parse(s: &[u8]) -> Result<Self> {
        match s.last() {
            Some(&SENTINEL_CHAR) => Self::new(&s[..s.len() - 1]),
            _ => Self::new(s),
        }
    }

    /// Internal bytes including the sentinel (byte 0 at the end).
    pub fn bytes(&self) -> &[u8] {
        &self.bytes
    }

    /// Length including the sentinel.
    pub fn len(&self) -> usize {
        self.bytes.len()
    }

    pub fn is_empty(&self) -> bool {
        false
    }

    /// 1-based character access.
    pub fn get(&self, i: usize) -> u8 {
        self.bytes[i - 1]
    }

    /// Renders internal bytes with the sentinel shown as `'$'`.
    pub fn display_bytes(&self) -> Vec<u8> {
        render(&self.bytes)
    }
}

/// Maps internal byte 0 to `'$'` for display.
pub fn render(internal: &[u8]) -> Vec<u8> {
    internal.iter().map(|&b| if b == SENTINEL { SENTINEL_CHAR } else { b }).collect()
}

/// Inverse of [`render`]: maps `'$'` to the internal sentinel.
pub fn unrender(display: &[u8]) -> Vec<u8> {
    display.iter().map(|&b| if b == SENTINEL_CHAR { SENTINEL } else { b }).collect()
}

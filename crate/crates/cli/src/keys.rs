//! Shared input plumbing: newline-delimited keys and '-' for stdin.

use std::io::Read;

use mdt::rng::splitmix64;
use mdt::{Error, Result};

/// Reads a whole input source; `-` means standard input.
pub fn read_source(path: &str) -> Result<Vec<u8>> {
    if path == "-" {
        let mut buf = Vec::new();
        std::io::stdin().read_to_end(&mut buf)?;
        Ok(buf)
    } else {
        Ok(std::fs::read(path)?)
    }
}

/// Newline-delimited tokens, skipping empty lines.
pub fn read_tokens(path: &str) -> Result<Vec<String>> {
    let raw = read_source(path)?;
    let text = String::from_utf8(raw)
        .map_err(|_| Error::invalid("token input must be UTF-8 text"))?;
    Ok(text.lines().filter(|l| !l.is_empty()).map(str::to_owned).collect())
}

/// Deterministic 64-bit key for a token (FNV-1a folded through one mix).
pub fn token_key(token: &str) -> u64 {
    let mut h = 0xcbf29ce484222325u64;
    for &b in token.as_bytes() {
        h = (h ^ b as u64).wrapping_mul(0x100000001b3);
    }
    splitmix64(h)
}

/// File content with one trailing newline trimmed, the usual text-file shape.
pub fn read_text_file(path: &str) -> Result<Vec<u8>> {
    let mut bytes = std::fs::read(path)?;
    if bytes.last() == Some(&b'\n') {
        bytes.pop();
        if bytes.last() == Some(&b'\r') {
            bytes.pop();
        }
    }
    Ok(bytes)
}

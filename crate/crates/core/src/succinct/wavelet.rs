//! Wavelet trees: rank/select/access over general byte alphabets.
//!
//! The tree shape follows a prefix-free code over the alphabet: each
//! character is routed from the root by its code bits, and every internal
//! node stores the routing bits of the characters passing through it in a
//! compressed [`RsBitvector`]. The default code is balanced fixed-width;
//! a Huffman-shaped tree drops the average query depth to `H0 + 1`.

use std::collections::BTreeMap;

use crate::entropy::HuffmanCode;
use crate::error::{Error, Result};
use crate::wire::{Reader, Writer};

use super::rrr::RsBitvector;

/// Prefix-free routing code: symbol -> (bits, len), first bit most significant.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct WtCode {
    codes: BTreeMap<u8, (u64, u8)>,
}

impl WtCode {
    /// Balanced fixed-width code over the given symbol set. With a single
    /// symbol the code is empty and the tree degenerates to one leaf.
    pub fn balanced(symbols: &[u8]) -> Result<Self> {
        if symbols.is_empty() {
            return Err(Error::invalid("empty alphabet"));
        }
        let mut sorted: Vec<u8> = symbols.to_vec();
        sorted.sort_unstable();
        sorted.dedup();
        let sigma = sorted.len();
        let width = if sigma == 1 { 0 } else { (usize::BITS - (sigma - 1).leading_zeros()) as u8 };
        let codes = sorted
            .into_iter()
            .enumerate()
            .map(|(i, s)| (s, (i as u64, width)))
            .collect();
        Ok(WtCode { codes })
    }

    /// Huffman-shaped code taken from an existing Huffman coder.
    pub fn from_huffman(h: &HuffmanCode) -> Self {
        let codes = h.symbols().map(|s| (s, h.codeword(s).unwrap())).collect();
        WtCode { codes }
    }

    /// Explicit code table; must be prefix-free.
    pub fn from_table(table: &[(u8, &str)]) -> Result<Self> {
        let mut codes = BTreeMap::new();
        for &(sym, bits) in table {
            let mut v = 0u64;
            for c in bits.chars() {
                v = v << 1 | (c == '1') as u64;
            }
            codes.insert(sym, (v, bits.len() as u8));
        }
        let code = WtCode { codes };
        code.check_prefix_free()?;
        Ok(code)
    }

    fn check_prefix_free(&self) -> Result<()> {
        let items: Vec<(u64, u8)> = self.codes.values().copied().collect();
        for (i, &(ba, la)) in items.iter().enumerate() {
            for &(bb, lb) in items.iter().skip(i + 1) {
                let l = la.min(lb);
                if l > 0 && ba >> (la - l) == bb >> (lb - l) {
                    return Err(Error::invalid("code is not prefix-free"));
                }
                if la == 0 || lb == 0 {
                    return Err(Error::invalid("empty codeword in multi-symbol code"));
                }
            }
        }
        Ok(())
    }

    pub fn get(&self, sym: u8) -> Option<(u64, u8)> {
        self.codes.get(&sym).copied()
    }

    pub fn symbols(&self) -> impl Iterator<Item = u8> + '_ {
        self.codes.keys().copied()
    }

    pub fn len(&self) -> usize {
        self.codes.len()
    }

    pub fn is_empty(&self) -> bool {
        self.codes.is_empty()
    }
}

// Internal nodes dominate the arena, so the size skew of the leaf
// variant costs nothing worth a Box indirection.
#[allow(clippy::large_enum_variant)]
#[derive(Debug, Clone, PartialEq, Eq)]
enum WtNode {
    Leaf(u8),
    Internal {
        bits: RsBitvector,
        /// Child node indexes; a child is absent when no symbol routes there.
        zero: Option<usize>,
        one: Option<usize>,
    },
}

/// Wavelet tree over a byte string.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct WaveletTree {
    nodes: Vec<WtNode>,
    root: usize,
    code: WtCode,
    len: usize,
}

impl WaveletTree {
    /// Builds the tree for `s` with a balanced code over its alphabet.
    pub fn build(s: &[u8]) -> Result<Self> {
        let code = WtCode::balanced(s)?;
        Self::build_with_code(s, code)
    }

    /// Builds the tree with an arbitrary prefix-free code covering `s`.
    pub fn build_with_code(s: &[u8], code: WtCode) -> Result<Self> {
        if s.is_empty() {
            return Err(Error::invalid("empty string"));
        }
        for &b in s {
            if code.get(b).is_none() {
                return Err(Error::UnknownSymbol(b));
            }
        }
        let mut nodes = Vec::new();
        let root = Self::build_node(s, &code, 0, &mut nodes)?;
        Ok(WaveletTree { nodes, root, code, len: s.len() })
    }

    fn build_node(
        chars: &[u8],
        code: &WtCode,
        depth: u8,
        nodes: &mut Vec<WtNode>,
    ) -> Result<usize> {
        let (_, len0) = code.get(chars[0]).unwrap();
        if len0 == depth {
            // All characters here share the full codeword prefix, i.e. are equal.
            debug_assert!(chars.iter().all(|&c| c == chars[0]));
            nodes.push(WtNode::Leaf(chars[0]));
            return Ok(nodes.len() - 1);
        }
        let mut bits = Vec::with_capacity(chars.len());
        let mut left = Vec::new();
        let mut right = Vec::new();
        for &c in chars {
            let (bitsword, len) = code.get(c).unwrap();
            let bit = bitsword >> (len - depth - 1) & 1 == 1;
            bits.push(bit);
            if bit {
                right.push(c);
            } else {
                left.push(c);
            }
        }
        let bv = RsBitvector::from_bools(&bits)?;
        let slot = nodes.len();
        nodes.push(WtNode::Internal { bits: bv, zero: None, one: None });
        let zero =
            if left.is_empty() { None } else { Some(Self::build_node(&left, code, depth + 1, nodes)?) };
        let one =
            if right.is_empty() { None } else { Some(Self::build_node(&right, code, depth + 1, nodes)?) };
        if let WtNode::Internal { zero: z, one: o, .. } = &mut nodes[slot] {
            *z = zero;
            *o = one;
        }
        Ok(slot)
    }

    pub fn len(&self) -> usize {
        self.len
    }

    pub fn is_empty(&self) -> bool {
        self.len == 0
    }

    pub fn code(&self) -> &WtCode {
        &self.code
    }

    /// Depth of the leaf for `sym`, i.e. its codeword length.
    pub fn leaf_depth(&self, sym: u8) -> Option<u8> {
        self.code.get(sym).map(|(_, len)| len)
    }

    /// Total length in bits of all node bitvectors (`n * ceil(log2 sigma)`
    /// for the balanced code).
    pub fn node_bits_total(&self) -> usize {
        self.nodes
            .iter()
            .map(|n| match n {
                WtNode::Leaf(_) => 0,
                WtNode::Internal { bits, .. } => bits.len(),
            })
            .sum()
    }

    /// Compressed payload: sum of offset bits over all node bitvectors.
    pub fn compressed_offset_bits(&self) -> usize {
        self.nodes
            .iter()
            .map(|n| match n {
                WtNode::Leaf(_) => 0,
                WtNode::Internal { bits, .. } => bits.offset_bits(),
            })
            .sum()
    }

    /// Offsets plus classes over all node bitvectors: the content bits
    /// without query-acceleration samples.
    pub fn content_bits(&self) -> usize {
        self.nodes
            .iter()
            .map(|n| match n {
                WtNode::Leaf(_) => 0,
                WtNode::Internal { bits, .. } => bits.content_bits(),
            })
            .sum()
    }

    /// Full stored size including samples.
    pub fn size_bits(&self) -> usize {
        self.nodes
            .iter()
            .map(|n| match n {
                WtNode::Leaf(_) => 8,
                WtNode::Internal { bits, .. } => bits.size_bits(),
            })
            .sum()
    }

    /// Root routing bitvector, exposed for inspection.
    pub fn root_bits(&self) -> Option<&RsBitvector> {
        match &self.nodes[self.root] {
            WtNode::Internal { bits, .. } => Some(bits),
            WtNode::Leaf(_) => None,
        }
    }

    /// Character at 1-based position `i`.
    pub fn access(&self, i: usize) -> Result<u8> {
        if i == 0 || i > self.len {
            return Err(Error::OutOfBounds { index: i, len: self.len });
        }
        let mut node = self.root;
        let mut i = i;
        loop {
            match &self.nodes[node] {
                WtNode::Leaf(sym) => return Ok(*sym),
                WtNode::Internal { bits, zero, one } => {
                    let b = bits.access(i)?;
                    i = bits.rank(b, i)?;
                    node = if b { one.unwrap() } else { zero.unwrap() };
                }
            }
        }
    }

    /// Occurrences of `sym` in the first `i` characters.
    pub fn rank(&self, sym: u8, i: usize) -> Result<usize> {
        let (codeword, len) = self.code.get(sym).ok_or(Error::UnknownSymbol(sym))?;
        if i > self.len {
            return Err(Error::OutOfBounds { index: i, len: self.len });
        }
        let mut node = self.root;
        let mut i = i;
        let mut depth = 0u8;
        while depth < len {
            match &self.nodes[node] {
                WtNode::Leaf(_) => break,
                WtNode::Internal { bits, zero, one } => {
                    let b = codeword >> (len - depth - 1) & 1 == 1;
                    i = bits.rank(b, i)?;
                    let next = if b { *one } else { *zero };
                    match next {
                        Some(nx) => node = nx,
                        // No character with this prefix occurs in the string.
                        None => return Ok(0),
                    }
                    depth += 1;
                }
            }
        }
        Ok(i)
    }

    /// Position of the `j`-th occurrence of `sym`.
    pub fn select(&self, sym: u8, j: usize) -> Result<usize> {
        let (codeword, len) = self.code.get(sym).ok_or(Error::UnknownSymbol(sym))?;
        let total = self.rank(sym, self.len)?;
        if j == 0 || j > total {
            return Err(Error::NotFound(format!("select({j}) beyond {total} occurrences")));
        }
        self.select_rec(self.root, codeword, len, 0, j)
    }

    fn select_rec(&self, node: usize, codeword: u64, len: u8, depth: u8, j: usize) -> Result<usize> {
        match &self.nodes[node] {
            WtNode::Leaf(_) => Ok(j),
            WtNode::Internal { bits, zero, one } => {
                let b = codeword >> (len - depth - 1) & 1 == 1;
                let child = if b { one.unwrap() } else { zero.unwrap() };
                let below = self.select_rec(child, codeword, len, depth + 1, j)?;
                bits.select(b, below)
            }
        }
    }

    pub fn write_into(&self, w: &mut Writer) {
        w.put_usize(self.len);
        w.put_usize(self.code.len());
        for (sym, (bits, len)) in &self.code.codes {
            w.put_u8(*sym);
            w.put_u64(*bits);
            w.put_u8(*len);
        }
        w.put_usize(self.nodes.len());
        w.put_usize(self.root);
        for node in &self.nodes {
            match node {
                WtNode::Leaf(sym) => {
                    w.put_u8(0);
                    w.put_u8(*sym);
                }
                WtNode::Internal { bits, zero, one } => {
                    w.put_u8(1);
                    w.put_u64(zero.map(|z| z as u64 + 1).unwrap_or(0));
                    w.put_u64(one.map(|o| o as u64 + 1).unwrap_or(0));
                    bits.write_into(w);
                }
            }
        }
    }

    pub fn read_from(r: &mut Reader) -> Result<Self> {
        let len = r.get_usize()?;
        let n_codes = r.get_usize()?;
        let mut codes = BTreeMap::new();
        for _ in 0..n_codes {
            let sym = r.get_u8()?;
            let bits = r.get_u64()?;
            let clen = r.get_u8()?;
            codes.insert(sym, (bits, clen));
        }
        let n_nodes = r.get_usize()?;
        let root = r.get_usize()?;
        if root >= n_nodes || n_nodes == 0 {
            return Err(Error::corrupt("bad wavelet tree topology"));
        }
        let mut nodes = Vec::with_capacity(n_nodes);
        for _ in 0..n_nodes {
            match r.get_u8()? {
                0 => nodes.push(WtNode::Leaf(r.get_u8()?)),
                1 => {
                    let zero = r.get_u64()?;
                    let one = r.get_u64()?;
                    let bits = RsBitvector::read_from(r)?;
                    let map = |v: u64| -> Result<Option<usize>> {
                        if v == 0 {
                            Ok(None)
                        } else if (v - 1) as usize >= n_nodes {
                            Err(Error::corrupt("child index out of range"))
                        } else {
                            Ok(Some((v - 1) as usize))
                        }
                    };
                    nodes.push(WtNode::Internal { bits, zero: map(zero)?, one: map(one)? });
                }
                _ => return Err(Error::corrupt("bad node tag")),
            }
        }
        Ok(WaveletTree { nodes, root, code: WtCode { codes }, len })
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::entropy::FrequencyTable;
    use crate::rng::DetRng;

    #[test]
    fn mississippi_root_bitvector() {
        let code =
            WtCode::from_table(&[(b'i', "00"), (b'm', "01"), (b'p', "10"), (b's', "11")]).unwrap();
        let wt = WaveletTree::build_with_code(b"mississippi", code).unwrap();
        let root = wt.root_bits().unwrap();
        let s: String =
            (1..=root.len()).map(|i| if root.access(i).unwrap() { '1' } else { '0' }).collect();
        assert_eq!(s, "00110110110");
    }

    #[test]
    fn huffman_shaped_leaf_depths() {
        let code = WtCode::from_table(&[(b'i', "01"), (b'm', "001"), (b'p', "000"), (b's', "1")])
            .unwrap();
        let wt = WaveletTree::build_with_code(b"mississippi", code).unwrap();
        assert_eq!(wt.leaf_depth(b'i'), Some(2));
        assert_eq!(wt.leaf_depth(b'm'), Some(3));
        assert_eq!(wt.leaf_depth(b'p'), Some(3));
        assert_eq!(wt.leaf_depth(b's'), Some(1));
        for (i, &c) in b"mississippi".iter().enumerate() {
            assert_eq!(wt.access(i + 1).unwrap(), c);
        }
    }

    #[test]
    fn single_symbol_string() {
        let wt = WaveletTree::build(b"aaaa").unwrap();
        assert_eq!(wt.node_bits_total(), 0);
        assert_eq!(wt.access(3).unwrap(), b'a');
        assert_eq!(wt.rank(b'a', 4).unwrap(), 4);
        assert_eq!(wt.select(b'a', 2).unwrap(), 2);
    }

    #[test]
    fn access_rank_select_fixtures() {
        let wt = WaveletTree::build(b"mississippi").unwrap();
        assert_eq!(wt.access(1).unwrap(), b'm');
        assert_eq!(wt.access(9).unwrap(), b'p');
        assert_eq!(wt.rank(b's', 6).unwrap(), 3);
        assert_eq!(wt.rank(b's', 0).unwrap(), 0);
        assert_eq!(wt.select(b'i', 2).unwrap(), 5);
        assert!(wt.rank(b'z', 5).is_err());
        assert!(wt.select(b's', 5).is_err());
    }

    #[test]
    fn balanced_node_bits_equal_n_ceil_log_sigma() {
        let mut rng = DetRng::new(31);
        for _ in 0..20 {
            let n = 1 + rng.next_below(400) as usize;
            let sigma = 1 + rng.next_below(16);
            let s: Vec<u8> = (0..n).map(|_| b'a' + rng.next_below(sigma) as u8).collect();
            let wt = WaveletTree::build(&s).unwrap();
            let distinct = {
                let mut d = s.clone();
                d.sort_unstable();
                d.dedup();
                d.len()
            };
            let width = if distinct == 1 {
                0
            } else {
                (usize::BITS - (distinct - 1).leading_zeros()) as usize
            };
            assert_eq!(wt.node_bits_total(), n * width);
        }
    }

    #[test]
    fn matches_naive_on_random_strings() {
        let mut rng = DetRng::new(8);
        for round in 0..30 {
            let n = 1 + rng.next_below(500) as usize;
            let sigma = 1 + rng.next_below(16);
            let s: Vec<u8> = (0..n).map(|_| b'a' + rng.next_below(sigma) as u8).collect();
            let wt = if round % 2 == 0 {
                WaveletTree::build(&s).unwrap()
            } else {
                let freqs = FrequencyTable::from_bytes(&s);
                let h = crate::entropy::HuffmanCode::build(&freqs).unwrap();
                WaveletTree::build_with_code(&s, WtCode::from_huffman(&h)).unwrap()
            };
            for i in 1..=n {
                assert_eq!(wt.access(i).unwrap(), s[i - 1]);
            }
            for c in wt.code().symbols().collect::<Vec<_>>() {
                let mut count = 0;
                for i in 1..=n {
                    if s[i - 1] == c {
                        count += 1;
                        assert_eq!(wt.select(c, count).unwrap(), i);
                    }
                    assert_eq!(wt.rank(c, i).unwrap(), count, "rank_{c}({i})");
                }
            }
            let total: usize =
                wt.code().symbols().map(|c| wt.rank(c, n).unwrap()).sum();
            assert_eq!(total, n);
        }
    }

    #[test]
    fn serialization_roundtrip() {
        let wt = WaveletTree::build(b"abracadabra_mississippi").unwrap();
        let mut w = Writer::new(crate::wire::MAGIC_SUCCINCT, 3);
        wt.write_into(&mut w);
        let bytes = w.into_bytes();
        let (mut r, tag) = Reader::open(&bytes, crate::wire::MAGIC_SUCCINCT).unwrap();
        assert_eq!(tag, 3);
        let wt2 = WaveletTree::read_from(&mut r).unwrap();
        r.finish().unwrap();
        assert_eq!(wt, wt2);
    }
}

//! Entropy measures and Huffman coding.
//!
//! Worst-case entropy of a universe, zero-order empirical entropy `H0`,
//! and k-th order empirical entropy `Hk` (contexts taken circularly), plus
//! a Huffman coder used both on its own and to shape wavelet trees.
//! `Hk` is the compression yardstick the index modules report against.

use std::collections::BTreeMap;

use crate::error::{Error, Result};

/// Symbol occurrence counts over a byte alphabet.
#[derive(Debug, Clone, Default, PartialEq, Eq)]
pub struct FrequencyTable {
    counts: BTreeMap<u8, u64>,
    total: u64,
}

impl FrequencyTable {
    pub fn from_bytes(s: &[u8]) -> Self {
        let mut counts = BTreeMap::new();
        for &b in s {
            *counts.entry(b).or_insert(0) += 1;
        }
        FrequencyTable { counts, total: s.len() as u64 }
    }

    pub fn from_counts(pairs: &[(u8, u64)]) -> Result<Self> {
        let mut counts = BTreeMap::new();
        for &(sym, c) in pairs {
            if c == 0 {
                return Err(Error::invalid("zero count in frequency table"));
            }
            *counts.entry(sym).or_insert(0) += c;
        }
        let total = counts.values().sum();
        Ok(FrequencyTable { counts, total })
    }

    pub fn total(&self) -> u64 {
        self.total
    }

    pub fn sigma(&self) -> usize {
        self.counts.len()
    }

    pub fn iter(&self) -> impl Iterator<Item = (u8, u64)> + '_ {
        self.counts.iter().map(|(&s, &c)| (s, c))
    }
}

/// `ceil(log2(universe_size))`: the minimum worst-case code length in bits.
pub fn worst_case_entropy(universe_size: u64) -> Result<u32> {
    if universe_size == 0 {
        return Err(Error::invalid("empty universe"));
    }
    Ok(64 - (universe_size - 1).leading_zeros().min(64))
}

/// Zero-order empirical entropy of `s`, in bits per symbol.
pub fn h0(s: &[u8]) -> Result<f64> {
    if s.is_empty() {
        return Err(Error::invalid("empty string"));
    }
    Ok(h0_of_table(&FrequencyTable::from_bytes(s)))
}

fn h0_of_table(freqs: &FrequencyTable) -> f64 {
    let n = freqs.total() as f64;
    freqs
        .iter()
        .map(|(_, c)| {
            let p = c as f64 / n;
            p * (n / c as f64).log2()
        })
        .sum()
}

/// Characters preceding each occurrence of `w` in circular `s`, left to right.
///
/// Both the occurrences of `w` and the preceding characters wrap around,
/// so `s[1]` is preceded by `s[n]` and an occurrence may straddle the end.
pub fn context_string(s: &[u8], w: &[u8]) -> Result<Vec<u8>> {
    let n = s.len();
    if w.len() > n {
        return Err(Error::invalid("context longer than string"));
    }
    let mut out = Vec::new();
    for start in 0..n {
        if (0..w.len()).all(|t| s[(start + t) % n] == w[t]) {
            out.push(s[(start + n - 1) % n]);
        }
    }
    Ok(out)
}

/// k-th order empirical entropy of `s` with circular contexts.
///
/// `hk(s, 0)` collapses to `h0(s)`.
pub fn hk(s: &[u8], k: usize) -> Result<f64> {
    if s.is_empty() {
        return Err(Error::invalid("empty string"));
    }
    if k > s.len() {
        return Err(Error::invalid("context order exceeds string length"));
    }
    if k == 0 {
        return h0(s);
    }
    let n = s.len();
    // Group the character preceding each position by the k-mer starting there.
    let mut groups: BTreeMap<Vec<u8>, Vec<u8>> = BTreeMap::new();
    for start in 0..n {
        let mut w = Vec::with_capacity(k);
        for t in 0..k {
            w.push(s[(start + t) % n]);
        }
        groups.entry(w).or_default().push(s[(start + n - 1) % n]);
    }
    let mut sum = 0.0;
    for ctx in groups.values() {
        sum += ctx.len() as f64 / n as f64 * h0(ctx)?;
    }
    Ok(sum)
}

/// A prefix-free binary code with its code tree.
#[derive(Debug, Clone)]
pub struct HuffmanCode {
    /// Symbol -> (bits packed LSB-last in a u64, length). The first code bit
    /// is the most significant of the `len` stored bits.
    codewords: BTreeMap<u8, (u64, u8)>,
    tree: Vec<HuffNode>,
    root: usize,
}

#[derive(Debug, Clone)]
enum HuffNode {
    Leaf(u8),
    Internal { zero: usize, one: usize },
}

impl HuffmanCode {
    /// Builds a Huffman code by repeated minimum-frequency pairing.
    ///
    /// Ties are broken by insertion order (symbols in increasing value
    /// first, merged nodes in creation order), so the resulting code is
    /// deterministic. A single-symbol alphabet gets codeword `0`.
    pub fn build(freqs: &FrequencyTable) -> Result<Self> {
        if freqs.sigma() == 0 {
            return Err(Error::invalid("empty frequency table"));
        }
        let mut tree: Vec<HuffNode> = Vec::new();
        // (freq, tiebreak id, node index)
        let mut heap: std::collections::BinaryHeap<std::cmp::Reverse<(u64, u64, usize)>> =
            std::collections::BinaryHeap::new();
        let mut next_id = 0u64;
        for (sym, c) in freqs.iter() {
            tree.push(HuffNode::Leaf(sym));
            heap.push(std::cmp::Reverse((c, next_id, tree.len() - 1)));
            next_id += 1;
        }
        if tree.len() == 1 {
            // Degenerate tree: one internal node whose zero-edge leads to the
            // symbol; the one-edge is dead.
            tree.push(HuffNode::Internal { zero: 0, one: usize::MAX });
            let root = 1;
            let mut codewords = BTreeMap::new();
            let sym = match tree[0] {
                HuffNode::Leaf(s) => s,
                _ => unreachable!(),
            };
            codewords.insert(sym, (0, 1));
            return Ok(HuffmanCode { codewords, tree, root });
        }
        while heap.len() > 1 {
            let std::cmp::Reverse((fa, _, a)) = heap.pop().unwrap();
            let std::cmp::Reverse((fb, _, b)) = heap.pop().unwrap();
            tree.push(HuffNode::Internal { zero: a, one: b });
            heap.push(std::cmp::Reverse((fa + fb, next_id, tree.len() - 1)));
            next_id += 1;
        }
        let root = heap.pop().unwrap().0 .2;
        let mut codewords = BTreeMap::new();
        let mut stack = vec![(root, 0u64, 0u8)];
        while let Some((node, bits, len)) = stack.pop() {
            match tree[node] {
                HuffNode::Leaf(sym) => {
                    codewords.insert(sym, (bits, len));
                }
                HuffNode::Internal { zero, one } => {
                    stack.push((zero, bits << 1, len + 1));
                    stack.push((one, (bits << 1) | 1, len + 1));
                }
            }
        }
        Ok(HuffmanCode { codewords, tree, root })
    }

    pub fn codeword(&self, sym: u8) -> Option<(u64, u8)> {
        self.codewords.get(&sym).copied()
    }

    /// Codeword as a 0/1 string, most significant bit first.
    pub fn codeword_string(&self, sym: u8) -> Option<String> {
        self.codeword(sym).map(|(bits, len)| {
            (0..len).rev().map(|i| if bits >> i & 1 == 1 { '1' } else { '0' }).collect()
        })
    }

    pub fn symbols(&self) -> impl Iterator<Item = u8> + '_ {
        self.codewords.keys().copied()
    }

    /// Total encoded size of `freqs` under this code, in bits.
    pub fn total_bits(&self, freqs: &FrequencyTable) -> u64 {
        freqs
            .iter()
            .map(|(sym, c)| c * self.codeword(sym).map(|(_, len)| len as u64).unwrap_or(0))
            .sum()
    }

    /// Encodes `s`; fails on symbols without a codeword.
    pub fn encode(&self, s: &[u8]) -> Result<BitString> {
        let mut out = BitString::new();
        for &b in s {
            let (bits, len) = self.codeword(b).ok_or(Error::UnknownSymbol(b))?;
            out.push_bits(bits, len);
        }
        Ok(out)
    }

    /// Decodes a bit string produced by [`encode`](Self::encode).
    pub fn decode(&self, bits: &BitString) -> Result<Vec<u8>> {
        let mut out = Vec::new();
        let mut node = self.root;
        let mut consumed = 0usize;
        for i in 0..bits.len() {
            node = match self.tree[node] {
                HuffNode::Internal { zero, one } => {
                    if bits.get(i) {
                        one
                    } else {
                        zero
                    }
                }
                HuffNode::Leaf(_) => unreachable!(),
            };
            if node == usize::MAX {
                return Err(Error::corrupt("bit sequence leaves the code tree"));
            }
            if let HuffNode::Leaf(sym) = self.tree[node] {
                out.push(sym);
                node = self.root;
                consumed = i + 1;
            }
        }
        if consumed != bits.len() {
            return Err(Error::corrupt("dangling bits do not complete a codeword"));
        }
        Ok(out)
    }
}

/// A growable bit sequence used by the Huffman coder.
#[derive(Debug, Clone, Default, PartialEq, Eq)]
pub struct BitString {
    bits: Vec<bool>,
}

impl BitString {
    pub fn new() -> Self {
        Self::default()
    }

    pub fn len(&self) -> usize {
        self.bits.len()
    }

    pub fn is_empty(&self) -> bool {
        self.bits.is_empty()
    }

    pub fn get(&self, i: usize) -> bool {
        self.bits[i]
    }

    pub fn push(&mut self, b: bool) {
        self.bits.push(b);
    }

    fn push_bits(&mut self, bits: u64, len: u8) {
        for i in (0..len).rev() {
            self.bits.push(bits >> i & 1 == 1);
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn worst_case_entropy_fixtures() {
        assert_eq!(worst_case_entropy(1 << 16).unwrap(), 16);
        assert_eq!(worst_case_entropy(1).unwrap(), 0);
        // C(12,3) enumerated by brute force.
        let mut combos = 0u64;
        for a in 0..12 {
            for b in a + 1..12 {
                for c in b + 1..12 {
                    let _ = (a, b, c);
                    combos += 1;
                }
            }
        }
        assert_eq!(combos, 220);
        assert_eq!(worst_case_entropy(combos).unwrap(), 8);
        assert!(worst_case_entropy(0).is_err());
    }

    #[test]
    fn h0_fixtures() {
        // 3 ones over 12 bits: about 20% below 1 bit/bit.
        let v = h0(b"001010001000").unwrap();
        assert!((v - 0.8113).abs() < 1e-2);
        assert_eq!(h0(b"aaaa").unwrap(), 0.0);
        assert!((h0(b"ab").unwrap() - 1.0).abs() < 1e-9);
        assert!(h0(b"").is_err());
    }

    #[test]
    fn context_string_fixtures() {
        assert_eq!(context_string(b"aababbabab", b"ab").unwrap(), b"abbb");
        assert_eq!(context_string(b"aababbabab", b"ba").unwrap(), b"abaa");
        assert_eq!(context_string(b"aaaa", b"a").unwrap(), b"aaaa");
        assert!(context_string(b"ab", b"abc").is_err());
    }

    #[test]
    fn hk_fixtures() {
        let s = b"aababbabab";
        assert!((hk(s, 2).unwrap() - 0.65).abs() < 1e-2);
        assert!((hk(s, 0).unwrap() - 1.0).abs() < 1e-9);
        assert!(hk(s, 11).is_err());
    }

    #[test]
    fn hk_zero_collapses_to_h0() {
        for s in [&b"mississippi"[..], b"abracadabra", b"zzzyx"] {
            assert!((hk(s, 0).unwrap() - h0(s).unwrap()).abs() < 1e-12);
        }
    }

    #[test]
    fn hk_direct_recomputation_agrees() {
        // Independent route: collect (k-mer, preceding char) pairs, sort by
        // k-mer, recompute the weighted sum from scratch.
        let s = b"abracadabra_mississippi";
        for k in 1..=3 {
            let n = s.len();
            let mut pairs: Vec<(Vec<u8>, u8)> = (0..n)
                .map(|i| {
                    let w: Vec<u8> = (0..k).map(|t| s[(i + t) % n]).collect();
                    (w, s[(i + n - 1) % n])
                })
                .collect();
            pairs.sort();
            let mut direct = 0.0;
            let mut i = 0;
            while i < n {
                let mut j = i;
                let mut ctx = Vec::new();
                while j < n && pairs[j].0 == pairs[i].0 {
                    ctx.push(pairs[j].1);
                    j += 1;
                }
                direct += ctx.len() as f64 / n as f64 * h0(&ctx).unwrap();
                i = j;
            }
            assert!((hk(s, k).unwrap() - direct).abs() < 1e-12);
        }
    }

    #[test]
    fn entropy_hierarchy_on_random_strings() {
        let mut rng = crate::rng::DetRng::new(11);
        for _ in 0..20 {
            let n = 64 + rng.next_below(192) as usize;
            let sigma = 2 + rng.next_below(6) as u8;
            let s: Vec<u8> = (0..n).map(|_| b'a' + rng.next_below(sigma as u64) as u8).collect();
            let bound = (sigma as f64).log2() + 1e-9;
            let mut prev = bound;
            for k in 0..=3usize.min(n) {
                let v = hk(&s, k).unwrap();
                assert!(v <= prev + 1e-9, "H{k}={v} exceeds previous {prev}");
                prev = v;
            }
        }
    }

    #[test]
    fn huffman_abracadabra() {
        let freqs = FrequencyTable::from_bytes(b"abracadabra");
        let code = HuffmanCode::build(&freqs).unwrap();
        assert_eq!(code.total_bits(&freqs), 23);
    }

    #[test]
    fn huffman_single_symbol() {
        let freqs = FrequencyTable::from_counts(&[(b'a', 5)]).unwrap();
        let code = HuffmanCode::build(&freqs).unwrap();
        assert_eq!(code.codeword_string(b'a').unwrap(), "0");
        assert_eq!(code.total_bits(&freqs), 5);
        let enc = code.encode(b"aaaaa").unwrap();
        assert_eq!(enc.len(), 5);
        assert_eq!(code.decode(&enc).unwrap(), b"aaaaa");
    }

    #[test]
    fn huffman_uniform_four() {
        let freqs =
            FrequencyTable::from_counts(&[(b'a', 1), (b'b', 1), (b'c', 1), (b'd', 1)]).unwrap();
        let code = HuffmanCode::build(&freqs).unwrap();
        for sym in *b"abcd" {
            assert_eq!(code.codeword(sym).unwrap().1, 2);
        }
        assert_eq!(code.total_bits(&freqs), 8);
        // Brute force over all prefix-code shapes confirms 8 is minimal.
        assert_eq!(min_prefix_code_cost(&[1, 1, 1, 1]), 8);
    }

    #[test]
    fn huffman_roundtrip_and_empty() {
        let freqs = FrequencyTable::from_bytes(b"abracadabra");
        let code = HuffmanCode::build(&freqs).unwrap();
        let enc = code.encode(b"abracadabra").unwrap();
        assert_eq!(enc.len(), 23);
        assert_eq!(code.decode(&enc).unwrap(), b"abracadabra");
        assert_eq!(code.encode(b"").unwrap().len(), 0);
        assert!(code.encode(b"xyz").is_err());
    }

    #[test]
    fn huffman_within_entropy_plus_one() {
        let mut rng = crate::rng::DetRng::new(5);
        for _ in 0..20 {
            let n = 50 + rng.next_below(200) as usize;
            let s: Vec<u8> = (0..n).map(|_| b'a' + rng.next_below(4) as u8).collect();
            let freqs = FrequencyTable::from_bytes(&s);
            let code = HuffmanCode::build(&freqs).unwrap();
            let bits = code.encode(&s).unwrap().len() as f64;
            let nh0 = n as f64 * h0(&s).unwrap();
            assert!(bits + 1e-6 >= nh0, "{bits} < {nh0}");
            assert!(bits <= nh0 + n as f64 + 1e-6);
        }
    }

    /// All distinct multisets of codeword depths of complete binary trees
    /// with `n` leaves.
    fn depth_profiles(n: usize) -> Vec<Vec<u32>> {
        if n == 1 {
            return vec![vec![0]];
        }
        let mut out: Vec<Vec<u32>> = Vec::new();
        for left in 1..n {
            for l in depth_profiles(left) {
                for r in depth_profiles(n - left) {
                    let mut d: Vec<u32> =
                        l.iter().chain(r.iter()).map(|&x| x + 1).collect();
                    d.sort_unstable();
                    if !out.contains(&d) {
                        out.push(d);
                    }
                }
            }
        }
        out
    }

    /// Minimum total bits over all prefix-free codes for the given counts.
    fn min_prefix_code_cost(counts: &[u64]) -> u64 {
        let mut sorted: Vec<u64> = counts.to_vec();
        sorted.sort_unstable_by(|a, b| b.cmp(a));
        depth_profiles(counts.len())
            .into_iter()
            .map(|depths| {
                // Largest count pairs with smallest depth.
                sorted.iter().zip(depths.iter()).map(|(&c, &d)| c * d as u64).sum()
            })
            .min()
            .unwrap()
    }

    #[test]
    fn huffman_optimal_small_alphabets() {
        let mut rng = crate::rng::DetRng::new(99);
        for _ in 0..200 {
            let sigma = 1 + rng.next_below(5) as usize;
            let counts: Vec<u64> = (0..sigma).map(|_| 1 + rng.next_below(8)).collect();
            let pairs: Vec<(u8, u64)> =
                counts.iter().enumerate().map(|(i, &c)| (b'a' + i as u8, c)).collect();
            let freqs = FrequencyTable::from_counts(&pairs).unwrap();
            let code = HuffmanCode::build(&freqs).unwrap();
            if sigma == 1 {
                assert_eq!(code.total_bits(&freqs), counts[0]);
                continue;
            }
            assert_eq!(
                code.total_bits(&freqs),
                min_prefix_code_cost(&counts),
                "counts {counts:?}"
            );
        }
    }
}

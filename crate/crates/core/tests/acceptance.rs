//! Acceptance suite: one test per criterion, printing a pass line each.
//!
//! Statistical criteria run under a retry(2) wrapper: a failed seed is
//! retried with the next derived seed up to two times before the
//! criterion counts as failed. Run with `--nocapture` to see the
//! per-criterion lines.

use mdt::entropy::{h0, hk, FrequencyTable, HuffmanCode};
use mdt::exec;
use mdt::filters::{bloom_params, BloomFilter, CountingBloomFilter, QuotientFilter};
use mdt::hashing::RabinContext;
use mdt::rng::{splitmix64, DetRng};
use mdt::sketches::{
    boost_mean_median, jaccard_estimate, lsh_fit_r, lsh_scurve, minhash_k, BoostConfig,
    DgimWindow, DistinctCounter, LshIndex, MinHashSketch, MorrisCounter,
};
use mdt::streammatch::{KrMatcher, PpMatcher};
use mdt::succinct::{EliasFano, PackedBits, RsBitvector};
use mdt::textindex::{bwt_from_text, text, CsaIndex, FmIndex, SuffixArray, Text};

/// Runs a seeded statistical check with up to two retries.
fn retry_stat(name: &str, check: impl Fn(u64) -> Result<(), String>) {
    let mut last = String::new();
    for attempt in 0..3u64 {
        match check(attempt) {
            Ok(()) => {
                if attempt > 0 {
                    println!("  [note] {name}: passed on retry {attempt}");
                }
                return;
            }
            Err(e) => last = e,
        }
    }
    panic!("{name} failed after 2 retries: {last}");
}

#[test]
fn criterion1_paper_fixture_battery() {
    // Suffix arrays.
    let sa = SuffixArray::build(&Text::parse(b"abaab$").unwrap()).unwrap();
    assert_eq!(sa.positions(), vec![6, 3, 4, 1, 5, 2]);
    let sa = SuffixArray::build(&Text::parse(b"BANANA$").unwrap()).unwrap();
    assert_eq!(sa.positions(), vec![7, 6, 4, 2, 1, 5, 3]);

    // psi of BANANA$ (row 1 is the sentinel row, conventionally undefined).
    let csa = CsaIndex::build(&Text::parse(b"BANANA$").unwrap()).unwrap();
    let psi: Vec<usize> = (2..=7).map(|i| csa.psi(i).unwrap()).collect();
    assert_eq!(psi, vec![1, 6, 7, 4, 2, 3]);

    // BWT.
    let bwt = bwt_from_text(&Text::parse(b"mississippi$").unwrap()).unwrap();
    assert_eq!(text::render(&bwt), b"ipssm$pissii");

    // Backward search ranges.
    let fm = FmIndex::build(&Text::parse(b"aabbbababbbaababa$").unwrap()).unwrap();
    assert_eq!(fm.count_range(b"ab").unwrap(), Some((5, 9)));
    assert_eq!(fm.count_range(b"bab").unwrap(), Some((12, 14)));

    // Elias-Fano high bits.
    let ef = EliasFano::build(&[0, 5, 8, 12, 14, 17, 20, 31], 32).unwrap();
    let high: String = (1..=ef.high_len_bits())
        .map(|i| if ef.high().access(i).unwrap() { '1' } else { '0' })
        .collect();
    assert_eq!(high, "101010110101001");

    // Zero-order bitvector example answers.
    let v = RsBitvector::build(&PackedBits::from_bit_str("011100010100110011")).unwrap();
    assert!(!v.access(5).unwrap());
    assert_eq!(v.rank0(4).unwrap(), 1);
    assert_eq!(v.rank0(6).unwrap(), 3);
    assert_eq!(v.rank1(8).unwrap(), 4);
    assert_eq!(v.select1(4).unwrap(), 8);
    assert_eq!(v.select0(3).unwrap(), 6);

    // Huffman and H2.
    let freqs = FrequencyTable::from_bytes(b"abracadabra");
    assert_eq!(HuffmanCode::build(&freqs).unwrap().total_bits(&freqs), 23);
    assert!((hk(b"aababbabab", 2).unwrap() - 0.65).abs() <= 0.01);

    // Bloom sizing.
    assert_eq!(bloom_params(10_000_000, 0.1).unwrap(), (3, 48_100_000));

    // LSH.
    assert_eq!(lsh_fit_r(100_000, 0.9).unwrap(), 5);
    assert!((lsh_scurve(0.4, 10, 1200).unwrap() - 0.999).abs() <= 0.001);
    assert!((lsh_scurve(0.7, 10, 1200).unwrap() - 0.007).abs() <= 0.001);
    assert!((lsh_scurve(0.85, 5, 100_000).unwrap() - 0.99949).abs() <= 0.0005);
    assert!((lsh_scurve(0.95, 5, 100_000).unwrap() - 0.03076).abs() <= 0.0005);

    println!("[PASS] criterion 1: paper fixture battery");
}

fn naive_rank(bits: &[bool], b: bool, i: usize) -> usize {
    bits[..i].iter().filter(|&&x| x == b).count()
}

fn naive_select(bits: &[bool], b: bool, j: usize) -> Option<usize> {
    let mut seen = 0;
    for (p, &x) in bits.iter().enumerate() {
        if x == b {
            seen += 1;
            if seen == j {
                return Some(p + 1);
            }
        }
    }
    None
}

/// 1-based start positions by quadratic scan.
fn naive_occurrences(pattern: &[u8], text: &[u8]) -> Vec<usize> {
    if pattern.is_empty() || pattern.len() > text.len() {
        return Vec::new();
    }
    (0..=text.len() - pattern.len())
        .filter(|&i| &text[i..i + pattern.len()] == pattern)
        .map(|i| i + 1)
        .collect()
}

#[test]
fn criterion2_oracle_equivalence() {
    // Exhaustive bitvectors up to length 18.
    for len in 1..=18usize {
        for word in 0u32..1 << len {
            let bits: Vec<bool> = (0..len).map(|t| word >> (len - 1 - t) & 1 == 1).collect();
            let v = RsBitvector::from_bools(&bits).unwrap();
            for i in 0..=len {
                assert_eq!(v.rank1(i).unwrap(), naive_rank(&bits, true, i));
                if i >= 1 {
                    assert_eq!(v.access(i).unwrap(), bits[i - 1]);
                }
            }
            let ones = v.count_ones();
            for j in 1..=len {
                match naive_select(&bits, true, j) {
                    Some(p) => assert_eq!(v.select1(j).unwrap(), p),
                    None => assert!(j > ones),
                }
                match naive_select(&bits, false, j) {
                    Some(p) => assert_eq!(v.select0(j).unwrap(), p),
                    None => assert!(j > len - ones),
                }
            }
        }
    }

    // 1000 random vectors up to 1e5 bits.
    let mut rng = DetRng::new(0xACCE);
    for _ in 0..1000 {
        let n = 1 + rng.next_below(100_000) as usize;
        let dens = rng.next_f64();
        let bits: Vec<bool> = (0..n).map(|_| rng.next_bool(dens)).collect();
        let v = RsBitvector::from_bools(&bits).unwrap();
        for _ in 0..100 {
            let i = rng.next_below(n as u64 + 1) as usize;
            assert_eq!(v.rank1(i).unwrap(), naive_rank(&bits, true, i));
            if i >= 1 {
                assert_eq!(v.access(i).unwrap(), bits[i - 1]);
            }
        }
        for (bit, total) in [(true, v.count_ones()), (false, v.count_zeros())] {
            if total > 0 {
                for _ in 0..20 {
                    let j = 1 + rng.next_below(total as u64) as usize;
                    let p = v.select(bit, j).unwrap();
                    assert_eq!(naive_select(&bits, bit, j), Some(p));
                }
            }
        }
    }
    println!("  criterion 2a: bitvector oracle equivalence (exhaustive <= 18 + 1000 random)");

    // FM and CSA vs the naive matcher: 1000 random texts, 10 patterns each.
    let zero_len_cases = exec::map_indexed(1000, |case| {
        let mut rng = DetRng::derive(0x1D2, case as u64);
        // Log-uniform lengths up to 1e4.
        let ln_max = (10_000f64).ln();
        let n = (rng.next_f64() * ln_max).exp().ceil() as usize;
        let n = n.clamp(1, 10_000);
        let sigma = 1 + rng.next_below(8);
        let content: Vec<u8> = (0..n).map(|_| b'a' + rng.next_below(sigma) as u8).collect();
        let t = Text::new(&content).unwrap();
        let sa = SuffixArray::build(&t).unwrap();
        let fm = FmIndex::build_from_sa(&t, &sa).unwrap();
        let csa = CsaIndex::build_from_sa(&t, &sa).unwrap();
        for q in 0..10 {
            let plen = 1 + rng.next_below(10) as usize;
            let pattern: Vec<u8> = if q % 2 == 0 && plen <= n {
                // Planted pattern: cut from the text.
                let start = rng.next_below((n - plen + 1) as u64) as usize;
                content[start..start + plen].to_vec()
            } else {
                (0..plen).map(|_| b'a' + rng.next_below(sigma) as u8).collect()
            };
            let expected = naive_occurrences(&pattern, &content);
            assert_eq!(fm.count(&pattern).unwrap(), expected.len(), "fm count case {case}");
            assert_eq!(csa.count(&pattern).unwrap(), expected.len(), "csa count case {case}");
            assert_eq!(fm.locate(&pattern).unwrap(), expected, "fm locate case {case}");
            assert_eq!(csa.locate(&pattern).unwrap(), expected, "csa locate case {case}");
        }
        for _ in 0..5 {
            let i = 1 + rng.next_below(n as u64) as usize;
            let len = 1 + rng.next_below((n - i + 1).min(100) as u64) as usize;
            let expected = &content[i - 1..i - 1 + len];
            assert_eq!(fm.extract(i, len).unwrap(), expected, "fm extract case {case}");
            assert_eq!(csa.extract(i, len).unwrap(), expected, "csa extract case {case}");
        }
        0usize
    });
    assert_eq!(zero_len_cases.len(), 1000);
    println!("  criterion 2b: FM/CSA vs naive matcher on 1000 random texts");

    // Porat-Porat = Karp-Rabin = naive on 500 cases with q >= m^3.
    let mismatches: u64 = exec::map_indexed(500, |round| {
        let mut rng = DetRng::derive(0x99, round as u64);
        let n = [4usize, 16, 64][rng.next_below(3) as usize];
        let m_len = n + rng.next_below(10_000) as usize;
        let sigma = 2 + rng.next_below(3);
        let period = 1 + rng.next_below(n as u64) as usize;
        let base: Vec<u8> = (0..period).map(|_| b'a' + rng.next_below(sigma) as u8).collect();
        let pattern: Vec<u8> = (0..n).map(|i| base[i % period]).collect();
        let stream: Vec<u8> = (0..m_len).map(|_| b'a' + rng.next_below(sigma) as u8).collect();

        let ctx = RabinContext::for_stream(m_len as u64, round as u64).unwrap();
        assert!(ctx.modulus() >= (m_len as u64).pow(3), "modulus below m^3");
        let (pp_q, pp_z) = (ctx.modulus(), ctx.point());
        let mut pp = PpMatcher::new(&pattern, ctx.clone()).unwrap();
        let mut kr = KrMatcher::new(&pattern, ctx).unwrap();
        let mut pp_ends: Vec<u64> = Vec::new();
        let mut kr_ends: Vec<u64> = Vec::new();
        for (i, &c) in stream.iter().enumerate() {
            for _ in 0..pp.push(c) {
                pp_ends.push(i as u64);
            }
            if kr.push(c) {
                kr_ends.push(i as u64 + 1);
            }
        }
        for _ in 0..pp.finish() {
            pp_ends.push(stream.len() as u64);
        }
        let naive: Vec<u64> = naive_occurrences(&pattern, &stream)
            .into_iter()
            .map(|s| (s + n - 1) as u64)
            .collect();
        // A discrepancy would be a fingerprint collision; log its context.
        let tag = format!("case {round} (q={}, z={})", pp_q, pp_z);
        assert_eq!(pp_ends, naive, "pp vs naive, {tag}");
        assert_eq!(kr_ends, naive, "kr vs naive, {tag}");
        assert_eq!(pp.collision_events(), 0, "{tag}");
        pp.collision_events()
    })
    .into_iter()
    .sum();
    assert_eq!(mismatches, 0);
    println!("  criterion 2c: Porat-Porat = Karp-Rabin = naive on 500 cases");
    println!("[PASS] criterion 2: oracle equivalence (zero mismatches)");
}

#[test]
fn criterion3_space_accounting() {
    // RRR offsets within n*H0 + n/b on 100 random densities.
    let mut rng = DetRng::new(0x5ACE);
    let mut tested = 0;
    while tested < 100 {
        let n = 64 + rng.next_below(20_000) as usize;
        let dens = 0.02 + 0.96 * rng.next_f64();
        let bits: Vec<bool> = (0..n).map(|_| rng.next_bool(dens)).collect();
        let m = bits.iter().filter(|&&b| b).count();
        if m == 0 || m == n {
            continue;
        }
        tested += 1;
        let v = RsBitvector::from_bools(&bits).unwrap();
        let p = m as f64 / n as f64;
        let h = p * (1.0 / p).log2() + (1.0 - p) * (1.0 / (1.0 - p)).log2();
        let bound = n as f64 * h + n as f64 / v.block_size() as f64;
        assert!(
            v.offset_bits() as f64 <= bound,
            "offset bits {} > {bound} at n={n}, m={m}",
            v.offset_bits()
        );
    }

    // Elias-Fano low bits exactly m * ceil(log2(n/m)).
    for _ in 0..50 {
        let universe = 1u64 << (6 + rng.next_below(20));
        let m = 1 + rng.next_below(universe / 2) as usize;
        let mut values: Vec<u64> = (0..m).map(|_| rng.next_below(universe)).collect();
        values.sort_unstable();
        let ef = EliasFano::build(&values, universe).unwrap();
        let ratio = universe as f64 / m as f64;
        let expect = (ratio.log2().ceil() as usize).max(1);
        assert_eq!(ef.low_size_bits(), m * expect, "m={m} universe={universe}");
        assert!(ef.high_len_bits() <= 2 * m + 2);
    }

    // Quotient filter bits exactly 2^q * (r + 3).
    for (q, r) in [(8u32, 6u32), (11, 8), (13, 5)] {
        let f = QuotientFilter::with_params(q, r, 0.9, 0).unwrap();
        assert_eq!(f.measured_space_bits(), (1u64 << q) * (r as u64 + 3));
    }

    // Porat-Porat holds exactly floor(log2 n) + 1 levels.
    for n in [1usize, 2, 3, 4, 7, 8, 64, 100, 1000] {
        let pattern = vec![b'a'; n];
        let m = PpMatcher::with_stream_bound(&pattern, 4096, 0).unwrap();
        let expect = (usize::BITS - 1 - n.leading_zeros()) as usize + 1;
        assert_eq!(m.level_count(), expect, "n={n}");
    }
    println!("[PASS] criterion 3: space accounting (exact assertions)");
}

#[test]
fn criterion4_filter_statistics() {
    retry_stat("bloom FPR", |seed| {
        let m = 10_000u64;
        let mut f = BloomFilter::new(m, 0.1, splitmix64(seed)).unwrap();
        let mut rng = DetRng::derive(0xB100, seed);
        let mut present = std::collections::HashSet::new();
        while present.len() < m as usize {
            let k = rng.next_u64();
            if present.insert(k) {
                f.insert(k);
            }
        }
        let fill = f.fill_ratio();
        if !(0.45..=0.55).contains(&fill) {
            return Err(format!("fill ratio {fill}"));
        }
        let queries = 100_000u32;
        let mut fp = 0u32;
        for _ in 0..queries {
            let k = rng.next_u64();
            if !present.contains(&k) && f.contains(k) {
                fp += 1;
            }
        }
        let rate = f64::from(fp) / f64::from(queries);
        if rate <= 0.15 {
            Ok(())
        } else {
            Err(format!("measured FPR {rate}"))
        }
    });
    println!("  criterion 4a: bloom FPR <= 1.5*delta and fill ratio in [0.45, 0.55]");

    retry_stat("quotient filter FPR", |seed| {
        let m = 1u64 << 12;
        let mut f = QuotientFilter::new(m, 1.0 / 256.0, 0.9, splitmix64(seed ^ 1)).unwrap();
        assert_eq!(f.remainder_bits(), 8);
        let mut rng = DetRng::derive(0x0F0F, seed);
        let mut present = std::collections::HashSet::new();
        while present.len() < m as usize {
            let k = rng.next_u64();
            if present.insert(k) {
                f.insert(k).unwrap();
            }
        }
        let queries = 100_000u32;
        let mut fp = 0u32;
        for _ in 0..queries {
            let k = rng.next_u64();
            if !present.contains(&k) && f.contains(k) {
                fp += 1;
            }
        }
        let rate = f64::from(fp) / f64::from(queries);
        if rate <= 2.0 / 256.0 {
            Ok(())
        } else {
            Err(format!("measured FPR {rate}"))
        }
    });
    println!("  criterion 4b: quotient filter FPR <= 2 * 2^-r at r = 8");

    // CBF: zero false negatives across 100 seeded runs of 1e4 interleaved ops.
    let violations: usize = exec::map_indexed(100, |seed| {
        let mut f = CountingBloomFilter::with_params(10_000, 48_100, 3, 4, seed as u64).unwrap();
        let mut present: Vec<u64> = Vec::new();
        let mut rng = DetRng::derive(0xCBF, seed as u64);
        let mut bad = 0usize;
        for _ in 0..10_000 {
            if !present.is_empty() && rng.next_bool(0.45) {
                let i = rng.next_below(present.len() as u64) as usize;
                let key = present.swap_remove(i);
                if f.remove(key).is_err() {
                    bad += 1;
                }
            } else {
                let key = rng.next_below(1 << 24);
                f.insert(key);
                present.push(key);
            }
            if let Some(&k) = present.last() {
                if !f.contains(k) {
                    bad += 1;
                }
            }
        }
        for &k in &present {
            if !f.contains(k) {
                bad += 1;
            }
        }
        bad
    })
    .into_iter()
    .sum();
    assert_eq!(violations, 0, "CBF produced {violations} false negatives");
    println!("  criterion 4c: CBF zero false negatives over 100 seeded runs");
    println!("[PASS] criterion 4: filter statistics");
}

#[test]
fn criterion5_sketch_statistics() {
    retry_stat("morris mean", |seed| {
        let m = 10_000usize;
        let counters = 2000usize;
        let sum: f64 = exec::map_indexed(counters, |i| {
            let mut c = MorrisCounter::new(splitmix64(seed) ^ i as u64);
            for _ in 0..m {
                c.tick();
            }
            c.estimate()
        })
        .into_iter()
        .sum();
        let mean = sum / counters as f64;
        if (mean - m as f64).abs() / m as f64 <= 0.05 {
            Ok(())
        } else {
            Err(format!("mean {mean}"))
        }
    });
    println!("  criterion 5a: Morris mean of 2000 counters within 5%");

    retry_stat("boosted morris", |seed| {
        let m = 100_000usize;
        let cfg = BoostConfig::for_half_quadratic_variance(0.5, 0.1).unwrap();
        let runs = 100usize;
        let failures: usize = exec::map_indexed(runs, |run| {
            let est = boost_mean_median(&cfg, |i| {
                let mut c = MorrisCounter::new(
                    splitmix64(seed ^ 0xB005) ^ splitmix64((run * 10_000 + i) as u64),
                );
                for _ in 0..m {
                    c.tick();
                }
                c.estimate()
            });
            ((est - m as f64).abs() >= 0.5 * m as f64) as usize
        })
        .into_iter()
        .sum();
        if failures as f64 / runs as f64 <= 0.15 {
            Ok(())
        } else {
            Err(format!("{failures}/{runs} failures"))
        }
    });
    println!("  criterion 5b: boosted Morris failure frequency <= 0.15");

    retry_stat("bottom-k", |seed| {
        let d = 10_000u64;
        // Single instance: failure frequency at most 1/3 + 0.05.
        let runs = 300usize;
        let failures: usize = exec::map_indexed(runs, |run| {
            let mut c =
                DistinctCounter::with_epsilon(0.25, splitmix64(seed ^ 0xB0) ^ run as u64).unwrap();
            for x in 0..d {
                c.offer(splitmix64(x ^ (run as u64) << 32));
            }
            ((c.estimate() - d as f64).abs() > 0.25 * d as f64) as usize
        })
        .into_iter()
        .sum();
        if failures as f64 / runs as f64 > 1.0 / 3.0 + 0.05 {
            return Err(format!("single-instance failures {failures}/{runs}"));
        }
        // Median of 30 instances: failure frequency at most 0.05.
        let trials = 100usize;
        let med_failures: usize = exec::map_indexed(trials, |trial| {
            let mut estimates: Vec<f64> = (0..30)
                .map(|i| {
                    let mut c = DistinctCounter::with_epsilon(
                        0.25,
                        splitmix64(seed ^ 0xB1) ^ (trial * 37 + i) as u64,
                    )
                    .unwrap();
                    for x in 0..d {
                        c.offer(splitmix64(x ^ (trial as u64) << 40));
                    }
                    c.estimate()
                })
                .collect();
            estimates.sort_by(|a, b| a.partial_cmp(b).unwrap());
            let med = estimates[(estimates.len() - 1) / 2];
            ((med - d as f64).abs() > 0.25 * d as f64) as usize
        })
        .into_iter()
        .sum();
        if med_failures as f64 / trials as f64 <= 0.05 {
            Ok(())
        } else {
            Err(format!("median-of-30 failures {med_failures}/{trials}"))
        }
    });
    println!("  criterion 5c: bottom-k single and median-of-30 failure rates");

    retry_stat("minhash accuracy", |seed| {
        let k = minhash_k(0.1, 0.05);
        assert_eq!(k, 738);
        let runs = 200usize;
        let ok: usize = exec::map_indexed(runs, |run| {
            let mut rng = DetRng::derive(splitmix64(seed ^ 0x3A), run as u64);
            let mut universe: Vec<u64> = Vec::with_capacity(2000);
            let mut seen = std::collections::HashSet::new();
            while universe.len() < 2000 {
                let x = rng.next_u64();
                if seen.insert(x) {
                    universe.push(x);
                }
            }
            let a: Vec<u64> =
                universe[..1000].iter().chain(&universe[1000..1500]).copied().collect();
            let b: Vec<u64> =
                universe[..1000].iter().chain(&universe[1500..2000]).copied().collect();
            let sa = MinHashSketch::build(&a, k, run as u64).unwrap();
            let sb = MinHashSketch::build(&b, k, run as u64).unwrap();
            let est = jaccard_estimate(&sa, &sb).unwrap();
            ((est - 0.5).abs() <= 0.1) as usize
        })
        .into_iter()
        .sum();
        if ok * 100 >= 95 * runs {
            Ok(())
        } else {
            Err(format!("{ok}/{runs} within epsilon"))
        }
    });
    println!("  criterion 5d: MinHash |J+ - J| <= 0.1 in >= 95% of runs");

    retry_stat("lsh planted recall", |seed| {
        let (r, b) = (5u32, 20u32);
        let k = (r * b) as usize;
        let runs = 100usize;
        let found: usize = exec::map_indexed(runs, |run| {
            let mut rng = DetRng::derive(splitmix64(seed ^ 0x15f), run as u64);
            let base: Vec<u64> = (0..2000).map(|_| rng.next_u64()).collect();
            let mut near = base.clone();
            for _ in 0..50 {
                let i = rng.next_below(near.len() as u64) as usize;
                near[i] = rng.next_u64();
            }
            let mut ix = LshIndex::new(b, r).unwrap();
            ix.insert(1, MinHashSketch::build(&base, k, run as u64).unwrap()).unwrap();
            let q = MinHashSketch::build(&near, k, run as u64).unwrap();
            let hit = ix
                .query(&q, 0.2, |x, y| 1.0 - jaccard_estimate(x, y).unwrap())
                .unwrap();
            (hit == Some(1)) as usize
        })
        .into_iter()
        .sum();
        if found * 100 >= 99 * runs {
            Ok(())
        } else {
            Err(format!("recall {found}/{runs}"))
        }
    });
    println!("  criterion 5e: LSH planted-neighbor recall >= 0.99");
    println!("[PASS] criterion 5: sketch statistics");
}

#[test]
fn criterion6_dgim_determinism() {
    // Structural rules after every push on a 1e5-push fuzz run.
    let mut w = DgimWindow::new(2000, 0.25).unwrap();
    let mut rng = DetRng::new(0xD61);
    for step in 0..100_000 {
        w.push(rng.next_bool(0.6));
        w.check_invariants().unwrap_or_else(|e| panic!("step {step}: {e}"));
    }
    println!("  criterion 6a: structural rules 1-5 hold after every push");

    // Deterministic bound at eps in {1, 0.5, 0.1}: zero violations.
    for &eps in &[1.0f64, 0.5, 0.1] {
        let window = 1000u64;
        let mut w = DgimWindow::new(window, eps).unwrap();
        let mut rng = DetRng::new(0xD62 ^ eps.to_bits());
        let mut history: Vec<bool> = Vec::new();
        for step in 0..10_000usize {
            let bit = rng.next_bool(0.5);
            w.push(bit);
            history.push(bit);
            if step % 199 == 0 {
                for _ in 0..50 {
                    let m = 1 + rng.next_below(window.min(step as u64 + 1)) as usize;
                    let exact: u64 = history[history.len() - m..].iter().map(|&b| b as u64).sum();
                    let est = w.count(m as u64).unwrap();
                    assert!(est >= exact, "undercount {est} < {exact}");
                    assert!(
                        est as f64 <= (1.0 + eps) * exact as f64 || (exact == 0 && est == 0),
                        "eps {eps}: {est} > (1+{eps})*{exact}"
                    );
                }
            }
        }
    }
    println!("  criterion 6b: d <= est <= (1+eps)d against prefix-sum oracle");
    println!("[PASS] criterion 6: DGIM determinism");
}

#[test]
fn criterion7_substituted_properties() {
    // O(1) rank claim, replaced by operation counting: one rank touches
    // at most 3 sampled arrays and decodes exactly one block.
    let mut rng = DetRng::new(0x0C7);
    let bits: Vec<bool> = (0..50_000).map(|_| rng.next_bool(0.37)).collect();
    let v = RsBitvector::from_bools(&bits).unwrap();
    match mdt::succinct::rrr::instrumentation_counts() {
        Some(_) => {
            for _ in 0..500 {
                let i = 1 + rng.next_below(50_000) as usize;
                mdt::succinct::rrr::instrumentation_reset();
                let _ = v.rank1(i).unwrap();
                let (touches, decodes) = mdt::succinct::rrr::instrumentation_counts().unwrap();
                assert!(touches <= 3, "rank touched {touches} sampled arrays");
                assert!(decodes <= 1, "rank decoded {decodes} blocks");
            }
            println!("  criterion 7a: rank <= 3 sampled-array touches + 1 block decode");
        }
        None => println!("  criterion 7a: skipped (instrumentation compiled out in release)"),
    }

    // The nH_k bound, replaced by component asserts (criterion 3) plus an
    // informational bits-per-symbol report on 1 MiB of word-like text.
    let corpus = english_like_corpus(1 << 20);
    let t = Text::new(&corpus).unwrap();
    let fm = FmIndex::build(&t).unwrap();
    let content_bps = fm.content_bits() as f64 / t.len() as f64;
    let total_bps = fm.measured_bits() as f64 / t.len() as f64;
    println!(
        "  criterion 7b (informational): FM content on 1 MiB corpus: {content_bps:.2} \
         bits/symbol (expected < 4.5; H0 = {:.2}); {total_bps:.2} with sample overhead",
        h0(&corpus).unwrap()
    );
    println!("[PASS] criterion 7: substituted properties");
}

/// Word-like filler text: words drawn from a skewed vocabulary.
fn english_like_corpus(len: usize) -> Vec<u8> {
    const WORDS: [&str; 24] = [
        "the", "of", "and", "to", "in", "that", "it", "was", "for", "on", "are", "as", "with",
        "his", "they", "at", "be", "this", "have", "from", "or", "one", "had", "word",
    ];
    let mut rng = DetRng::new(0xC07);
    let mut out = Vec::with_capacity(len + 16);
    while out.len() < len {
        // Zipf-ish: earlier words much more likely.
        let mut idx = 0usize;
        while idx + 1 < WORDS.len() && rng.next_bool(0.35) {
            idx += 1;
        }
        out.extend_from_slice(WORDS[idx].as_bytes());
        out.push(b' ');
    }
    out.truncate(len);
    out
}

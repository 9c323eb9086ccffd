//! Parallel vs sequential comparison on the data-parallel entry points:
//! MinHash construction (independent work per hash function) and boosted
//! estimation (independent work per estimator instance).
//!
//! With the `parallel` feature the left-hand benches run on the rayon
//! pool; the `_seq` twins always run the plain loop. On a single-core
//! host the two should track each other.

use std::hint::black_box;

use criterion::{criterion_group, criterion_main, Criterion};

use mdt::rng::DetRng;
use mdt::sketches::{
    boost_mean_median, boost_mean_median_seq, BoostConfig, MinHashSketch, MorrisCounter,
};

fn bench_minhash(c: &mut Criterion) {
    let mut rng = DetRng::new(1);
    let keys: Vec<u64> = (0..4096).map(|_| rng.next_u64()).collect();
    let k = 256;

    let mut group = c.benchmark_group("minhash_build_4096x256");
    group.bench_function("parallel", |b| {
        b.iter(|| MinHashSketch::build(black_box(&keys), k, 7).unwrap())
    });
    group.bench_function("sequential", |b| {
        b.iter(|| MinHashSketch::build_seq(black_box(&keys), k, 7).unwrap())
    });
    group.finish();
}

fn bench_boosted_morris(c: &mut Criterion) {
    let cfg = BoostConfig::for_half_quadratic_variance(0.5, 0.2).unwrap();
    let events = 2_000usize;
    let run = |i: usize| {
        let mut counter = MorrisCounter::new(i as u64);
        for _ in 0..events {
            counter.tick();
        }
        counter.estimate()
    };

    let mut group = c.benchmark_group("boosted_morris_2k_events");
    group.sample_size(20);
    group.bench_function("parallel", |b| b.iter(|| boost_mean_median(black_box(&cfg), run)));
    group.bench_function("sequential", |b| {
        b.iter(|| boost_mean_median_seq(black_box(&cfg), run))
    });
    group.finish();
}

criterion_group!(benches, bench_minhash, bench_boosted_morris);
criterion_main!(benches);

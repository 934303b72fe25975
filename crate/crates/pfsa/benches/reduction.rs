//! Scoring and reduction benchmarks.
//!
//! Each benchmark id carries a `parallel` or `sequential` suffix taken from
//! the active feature set, so the two configurations can be compared:
//!
//! ```text
//! cargo bench -p pfsa
//! cargo bench -p pfsa --no-default-features
//! ```

use std::time::Duration;

use criterion::{criterion_group, criterion_main, Criterion};
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use pfsa::{beam_reduce, build_canonical, mml, sk_sweep, BeamParams, Pfsa, SymbolTable};

fn mode() -> &'static str {
    if cfg!(feature = "parallel") {
        "parallel"
    } else {
        "sequential"
    }
}

/// A corpus with planted prefix regularity, like the bundled fixtures.
fn synthetic_trie(words: usize, seed: u64) -> Pfsa {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let prefixes: Vec<Vec<u32>> = (0..6)
        .map(|_| (0..rng.gen_range(2..4)).map(|_| rng.gen_range(1..10)).collect())
        .collect();
    let suffixes: Vec<Vec<u32>> = (0..5)
        .map(|_| (0..rng.gen_range(1..3)).map(|_| rng.gen_range(10..18)).collect())
        .collect();
    let sequences: Vec<Vec<u32>> = (0..words)
        .map(|_| {
            let mut s = prefixes[rng.gen_range(0..prefixes.len())].clone();
            s.extend(&suffixes[rng.gen_range(0..suffixes.len())]);
            s.push(0);
            s
        })
        .collect();
    let table = SymbolTable::from_spellings((1..18).map(|i| format!("r{i}")));
    build_canonical(&sequences, table).unwrap()
}

fn bench_mml(c: &mut Criterion) {
    let p = synthetic_trie(400, 1);
    c.bench_function(&format!("mml/{}", mode()), |b| {
        b.iter(|| mml(std::hint::black_box(&p)).unwrap().total_bits)
    });
}

fn bench_sk_sweep(c: &mut Criterion) {
    let p = synthetic_trie(60, 2);
    c.bench_function(&format!("sk_sweep/{}", mode()), |b| {
        b.iter(|| sk_sweep(std::hint::black_box(&p), 1..=2, 1..=50).unwrap().0)
    });
}

fn bench_beam(c: &mut Criterion) {
    let p = synthetic_trie(40, 3);
    let params = BeamParams::new(16, None).unwrap();
    c.bench_function(&format!("beam_reduce/{}", mode()), |b| {
        b.iter(|| beam_reduce(std::hint::black_box(&p), params).0)
    });
}

fn config() -> Criterion {
    Criterion::default()
        .sample_size(10)
        .measurement_time(Duration::from_secs(5))
        .warm_up_time(Duration::from_secs(1))
}

criterion_group! {
    name = benches;
    config = config();
    targets = bench_mml, bench_sk_sweep, bench_beam
}
criterion_main!(benches);

use std::hint::black_box;

use criterion::{criterion_group, criterion_main, BenchmarkId, Criterion, Throughput};
use jbhash::{Algorithm, BucketCount, SplitMix64, RandomSource};

const KEYS: usize = 1024;

fn keys() -> Vec<u64> {
    let mut g = SplitMix64::new(0x5EED);
    (0..KEYS).map(|_| g.next_u64()).collect()
}

/// Best (`2^i`) and worst (`2^i + 1`) cases for the backwards walk.
fn bucket_counts() -> Vec<u32> {
    (0..=20).flat_map(|i| [1u32 << i, (1u32 << i) + 1]).collect()
}

fn bench_algorithms(c: &mut Criterion) {
    let keys = keys();
    for algo in [
        Algorithm::Modulo,
        Algorithm::Random,
        Algorithm::JumpHash,
        Algorithm::JumpBackHash,
        Algorithm::JumpBackHashPacked,
    ] {
        let mut group = c.benchmark_group(algo.name());
        group.throughput(Throughput::Elements(KEYS as u64));
        for n in bucket_counts() {
            let n = BucketCount::new(n).unwrap();
            group.bench_with_input(BenchmarkId::from_parameter(n), &n, |b, &n| {
                b.iter(|| {
                    keys.iter()
                        .fold(0u32, |acc, &k| acc ^ algo.bucket(black_box(k), n).get())
                })
            });
        }
        group.finish();
    }
}

fn bench_slow_references(c: &mut Criterion) {
    let keys = keys();
    let mut group = c.benchmark_group("references");
    group.throughput(Throughput::Elements(KEYS as u64));
    let n = BucketCount::new(1000).unwrap();
    for algo in [
        Algorithm::Icws,
        Algorithm::JumpingBackwards,
        Algorithm::JumpingBackwardsImprovedOpt1,
        Algorithm::JumpingBackwardsImprovedOpt2,
    ] {
        group.bench_function(algo.name(), |b| {
            b.iter(|| keys.iter().fold(0u32, |acc, &k| acc ^ algo.bucket(black_box(k), n).get()))
        });
    }
    group.finish();
}

criterion_group!(hashers, bench_algorithms, bench_slow_references);
criterion_main!(hashers);

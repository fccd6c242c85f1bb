use std::hint::black_box;

use criterion::{criterion_group, criterion_main, BenchmarkId, Criterion};
use gapsub::{catalog, complexity_profile, derive_block_substitution, FactorStats, Letter};

fn supertiles(c: &mut Criterion) {
    let s = catalog::gapped_example();
    let mut group = c.benchmark_group("supertile");
    for level in [6u32, 9, 12] {
        group.bench_with_input(BenchmarkId::from_parameter(level), &level, |b, &k| {
            b.iter(|| s.supertile(Letter(0), black_box(k)).unwrap())
        });
    }
    group.finish();
}

fn complexity(c: &mut Criterion) {
    let s = catalog::gapped_example();
    let mut group = c.benchmark_group("complexity_profile");
    for n_max in [10usize, 30] {
        group.bench_with_input(BenchmarkId::from_parameter(n_max), &n_max, |b, &n| {
            b.iter(|| complexity_profile(&s, Letter(0), black_box(n)).unwrap())
        });
    }
    group.finish();

    let tm: Vec<Letter> = (0..1usize << 14).map(|i| Letter((i.count_ones() % 2) as u16)).collect();
    c.bench_function("factor_stats/thue_morse_2^14", |b| b.iter(|| FactorStats::of(black_box(&tm), 64)));
}

fn recoding(c: &mut Criterion) {
    let s = catalog::gapped_example();
    c.bench_function("derive_block_substitution/N=3", |b| {
        b.iter(|| derive_block_substitution(&s, Letter(0), black_box(3)).unwrap())
    });
}

criterion_group!(benches, supertiles, complexity, recoding);
criterion_main!(benches);

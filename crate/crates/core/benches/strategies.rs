use criterion::{criterion_group, criterion_main, BenchmarkId, Criterion};

use tsring_core::blocks::{rational_central_idempotent_scan, DEFAULT_SCAN_BOUND};
use tsring_core::mackey::check_table;
use tsring_core::{ModelParams, Strategy, TRing};

const STRATEGIES: [Strategy; 2] = [Strategy::Sequential, Strategy::Parallel];

fn table_build(c: &mut Criterion) {
    let mut group = c.benchmark_group("table_build");
    let params = ModelParams::new(7, 2, 3).unwrap();
    for s in STRATEGIES {
        group.bench_with_input(BenchmarkId::new(format!("{s:?}"), "7,2,3"), &s, |b, &s| {
            b.iter(|| TRing::with_strategy(params, s))
        });
    }
    group.finish();
}

fn associativity(c: &mut Criterion) {
    let mut group = c.benchmark_group("associativity");
    let ring = TRing::from_triple(5, 1, 4).unwrap();
    for s in STRATEGIES {
        group.bench_with_input(BenchmarkId::new(format!("{s:?}"), "5,1,4"), &s, |b, &s| {
            b.iter(|| ring.check_associativity(s).unwrap())
        });
    }
    group.finish();
}

fn oracle(c: &mut Criterion) {
    let mut group = c.benchmark_group("oracle_table");
    group.sample_size(10);
    let ring = TRing::from_triple(3, 2, 2).unwrap();
    for s in STRATEGIES {
        group.bench_with_input(BenchmarkId::new(format!("{s:?}"), "3,2,2"), &s, |b, &s| {
            b.iter(|| check_table(&ring, s).unwrap())
        });
    }
    group.finish();
}

fn scan(c: &mut Criterion) {
    let mut group = c.benchmark_group("idempotent_scan");
    group.sample_size(10);
    let ring = TRing::from_triple(7, 2, 3).unwrap();
    for s in STRATEGIES {
        group.bench_with_input(BenchmarkId::new(format!("{s:?}"), "7,2,3"), &s, |b, &s| {
            b.iter(|| rational_central_idempotent_scan(&ring, DEFAULT_SCAN_BOUND, s).unwrap())
        });
    }
    group.finish();
}

criterion_group!(benches, table_build, associativity, oracle, scan);
criterion_main!(benches);

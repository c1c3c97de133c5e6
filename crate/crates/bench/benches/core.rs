use std::hint::black_box;

use antisym_core::bounds::esq_upper;
use antisym_core::oracle::{max_purity, OptimizerConfig};
use antisym_core::repspace::{tmatrix_numeric, Dimension};
use antisym_core::zeta::{check_certificate, zeta_full, zeta_simplified, DualCertificate};
use criterion::{criterion_group, criterion_main, BenchmarkId, Criterion};

fn lp(c: &mut Criterion) {
    let mut group = c.benchmark_group("zeta_simplified");
    for n in [4usize, 8, 12] {
        group.bench_with_input(BenchmarkId::from_parameter(n), &n, |b, &n| {
            b.iter(|| zeta_simplified(black_box(n)).unwrap())
        });
    }
    group.finish();

    let mut group = c.benchmark_group("zeta_full_d4");
    group.sample_size(10);
    for n in [2usize, 4] {
        group.bench_with_input(BenchmarkId::from_parameter(n), &n, |b, &n| {
            b.iter(|| zeta_full(black_box(n), Dimension::Finite(4)).unwrap())
        });
    }
    group.finish();
}

fn certificate(c: &mut Criterion) {
    c.bench_function("certificate_64", |b| {
        b.iter(|| check_certificate(&DualCertificate::published(black_box(64))).unwrap())
    });
}

fn numerics(c: &mut Criterion) {
    let mut group = c.benchmark_group("tmatrix_numeric");
    group.sample_size(10);
    for d in [4usize, 6] {
        group.bench_with_input(BenchmarkId::from_parameter(d), &d, |b, &d| {
            b.iter(|| tmatrix_numeric(black_box(d), 0).unwrap())
        });
    }
    group.finish();

    let cfg = OptimizerConfig::default().with_restarts(16);
    c.bench_function("max_purity_2_3", |b| b.iter(|| max_purity(2, 3, black_box(&cfg)).unwrap()));
    c.bench_function("esq_upper_1000", |b| b.iter(|| esq_upper(black_box(1000)).unwrap()));
}

criterion_group!(benches, lp, certificate, numerics);
criterion_main!(benches);

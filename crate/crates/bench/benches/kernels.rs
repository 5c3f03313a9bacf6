use std::hint::black_box;

use criterion::{criterion_group, criterion_main, BenchmarkId, Criterion};

use summa_bench::{abs_function, abs_series, decaying_exp, jacobi_families, opts};
use summa_core::analysis::{jacobi_weighted_norm, laguerre_fn_norm};
use summa_core::orthopoly::{jacobi_eval_all, laguerre_fn_eval_all};
use summa_core::quadrature::{coefficients, gauss_rule};
use summa_core::summability::{cesaro_mean, riesz_mean};
use summa_core::{FamilySpec, MeasureTag};

fn recurrences(c: &mut Criterion) {
    let mut g = c.benchmark_group("recurrence");
    for n in [256usize, 4096] {
        g.bench_with_input(BenchmarkId::new("jacobi", n), &n, |b, &n| {
            b.iter(|| jacobi_eval_all(0.5, -0.5, n, black_box(0.3)).unwrap())
        });
        g.bench_with_input(BenchmarkId::new("laguerre_fn", n), &n, |b, &n| {
            b.iter(|| laguerre_fn_eval_all(0.0, n, black_box(7.5)).unwrap())
        });
    }
    g.finish();
}

fn gauss_rules(c: &mut Criterion) {
    let mut g = c.benchmark_group("gauss_rule");
    for k in [32usize, 128, 512] {
        g.bench_with_input(BenchmarkId::new("jacobi", k), &k, |b, &k| {
            b.iter(|| gauss_rule(MeasureTag::JacobiMeasure { alpha: 0.5, beta: -0.5 }, k).unwrap())
        });
        g.bench_with_input(BenchmarkId::new("laguerre", k), &k, |b, &k| {
            b.iter(|| gauss_rule(MeasureTag::LaguerreMeasure { alpha: 0.0 }, k).unwrap())
        });
    }
    g.finish();
}

fn expansion_coefficients(c: &mut Criterion) {
    let mut g = c.benchmark_group("coefficients");
    g.sample_size(10);
    let f = abs_function();
    for (name, fam) in jacobi_families() {
        g.bench_function(BenchmarkId::new(name, 256), |b| b.iter(|| coefficients(&f, fam, 256, &opts()).unwrap()));
    }
    let e = decaying_exp();
    let lag = FamilySpec::laguerre(0.0).unwrap();
    g.bench_function(BenchmarkId::new("laguerre_fn", 128), |b| b.iter(|| coefficients(&e, lag, 128, &opts()).unwrap()));
    g.finish();
}

fn norms(c: &mut Criterion) {
    let mut g = c.benchmark_group("norm");
    g.sample_size(10);
    let leg = FamilySpec::jacobi(0.0, 0.0).unwrap();
    for n in [128usize, 1024] {
        g.bench_with_input(BenchmarkId::new("legendre_q6", n), &n, |b, &n| {
            b.iter(|| jacobi_weighted_norm(leg, n, 6.0, 0.0).unwrap())
        });
        g.bench_with_input(BenchmarkId::new("laguerre_fn_q1", n), &n, |b, &n| {
            b.iter(|| laguerre_fn_norm(0.0, n, 1.0).unwrap())
        });
    }
    g.finish();
}

fn means(c: &mut Criterion) {
    let series = abs_series(2048).unwrap();
    let mut g = c.benchmark_group("means");
    for n in [128usize, 2048] {
        g.bench_with_input(BenchmarkId::new("cesaro", n), &n, |b, &n| {
            b.iter(|| cesaro_mean(&series, n, 0.5, black_box(0.4)).unwrap())
        });
        g.bench_with_input(BenchmarkId::new("riesz", n), &n, |b, &n| {
            b.iter(|| riesz_mean(&series, n as f64, 0.5, black_box(0.4)).unwrap())
        });
    }
    g.finish();
}

criterion_group!(benches, recurrences, gauss_rules, expansion_coefficients, norms, means);
criterion_main!(benches);

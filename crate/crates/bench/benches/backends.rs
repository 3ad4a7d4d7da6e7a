use std::collections::BTreeMap;
use std::hint::black_box;

use criterion::{criterion_group, criterion_main, BenchmarkId, Criterion};
use ordtutte::gbm::{moment_vs_s_n, GbmParams, DEFAULT_SEED};
use ordtutte::reductions::{s_n_via_generalized, ChainInstance};
use ordtutte::symbolic::{evaluate, FkWeights};
use ordtutte::Backend;
use ordtutte_bench::mixed;

fn state_sums(c: &mut Criterion) {
    let mut group = c.benchmark_group("state_sum");
    group.sample_size(20);
    for m in [4, 6, 8] {
        let (g, o) = mixed(m);
        for backend in [Backend::Recursive, Backend::Closed] {
            group.bench_with_input(BenchmarkId::new(backend.name(), m), &m, |b, _| {
                b.iter(|| backend.state_sum(black_box(&g), black_box(&o)).unwrap())
            });
        }
    }
    group.finish();
}

fn evaluation(c: &mut Criterion) {
    let mut group = c.benchmark_group("evaluate_fk");
    for m in [4, 8] {
        let (g, o) = mixed(m);
        let s = Backend::Closed.state_sum(&g, &o).unwrap();
        let lambdas: BTreeMap<u32, f64> = (1..=m).map(|id| (id, 0.1 + 0.05 * id as f64)).collect();
        group.bench_with_input(BenchmarkId::from_parameter(m), &m, |b, _| {
            b.iter(|| evaluate(&s, &2.0, &0.5, &-0.5, black_box(&lambdas), &FkWeights).unwrap())
        });
    }
    group.finish();
}

fn chain(c: &mut Criterion) {
    let mut group = c.benchmark_group("chain_s_n");
    for n in [2, 4, 6] {
        let lambdas: Vec<f64> = (0..n).map(|i| 0.3 + 0.2 * i as f64).collect();
        let inst = ChainInstance::new(lambdas).unwrap();
        group.bench_with_input(BenchmarkId::from_parameter(n), &n, |b, _| {
            b.iter(|| s_n_via_generalized(black_box(&inst)).unwrap())
        });
    }
    group.finish();
}

fn monte_carlo(c: &mut Criterion) {
    let p = GbmParams { mu: 0.05, sigma: 0.2, t: 1.0, steps: 200, paths: 2_000, seed: DEFAULT_SEED };
    let mut group = c.benchmark_group("gbm");
    group.sample_size(10);
    group.bench_function("moment_n2", |b| b.iter(|| moment_vs_s_n(black_box(&p), 2).unwrap()));
    group.finish();
}

criterion_group!(benches, state_sums, evaluation, chain, monte_carlo);
criterion_main!(benches);

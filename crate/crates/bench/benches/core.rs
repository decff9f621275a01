use criterion::{black_box, criterion_group, criterion_main, BenchmarkId, Criterion};

use conn_bench::{dp_inputs, exadec_kappa, tangle_inputs};
use conn_core::branchdec::branch_width;
use conn_core::canonical::canonical_decomposition;
use conn_core::check_properties;
use conn_core::tangles::enumerate_tangles;

fn bench_branch_width(c: &mut Criterion) {
    let mut group = c.benchmark_group("branch_width");
    group.sample_size(10);
    for (name, sys) in dp_inputs() {
        group.bench_with_input(BenchmarkId::from_parameter(&name), &sys, |b, sys| b.iter(|| branch_width(black_box(sys), 14).unwrap().value));
    }
    group.finish();
}

fn bench_properties(c: &mut Criterion) {
    let mut group = c.benchmark_group("check_properties");
    group.sample_size(10);
    for (name, sys) in dp_inputs() {
        group.bench_with_input(BenchmarkId::from_parameter(&name), &sys, |b, sys| b.iter(|| check_properties(black_box(sys), sys.limits()).unwrap()));
    }
    group.finish();
}

fn bench_tangles(c: &mut Criterion) {
    let mut group = c.benchmark_group("enumerate_tangles");
    group.sample_size(10);
    for (name, sys, k) in tangle_inputs() {
        group.bench_with_input(BenchmarkId::new(name, k), &sys, |b, sys| b.iter(|| enumerate_tangles(black_box(sys), k).unwrap().len()));
    }
    group.finish();
}

fn bench_canonical(c: &mut Criterion) {
    let sys = exadec_kappa();
    let mut group = c.benchmark_group("canonical");
    group.sample_size(10);
    group.bench_function("kappa/exadec", |b| b.iter(|| canonical_decomposition(black_box(&sys), None).unwrap().tree.tree.len()));
    group.finish();
}

criterion_group!(benches, bench_branch_width, bench_properties, bench_tangles, bench_canonical);
criterion_main!(benches);

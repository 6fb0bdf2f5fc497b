use criterion::{criterion_group, criterion_main, BenchmarkId, Criterion};
use superlambda::cc::super_cc;
use superlambda::snake::{build_snake, super_lambda_dimer};
use superlambda_bench::zigzag;

fn dimer_vs_cc(c: &mut Criterion) {
    let mut group = c.benchmark_group("longest_arc");
    for v in [6usize, 8, 10] {
        let ot = zigzag(v);
        let (s, t) = ot.gamma();
        group.bench_with_input(BenchmarkId::new("dimer", v), &v, |b, _| {
            b.iter(|| super_lambda_dimer(&ot, s, t).unwrap())
        });
        group.bench_with_input(BenchmarkId::new("cc", v), &v, |b, _| {
            b.iter(|| super_cc(&ot, s, t).unwrap())
        });
    }
    group.finish();
}

fn lattice(c: &mut Criterion) {
    let mut group = c.benchmark_group("cover_lattice");
    let ot = zigzag(10);
    let (s, t) = ot.gamma();
    let g = build_snake(&ot, s, t).unwrap();
    for d in [1u32, 2, 3] {
        group.bench_with_input(BenchmarkId::from_parameter(d), &d, |b, &d| {
            b.iter(|| g.enumerate_covers(d))
        });
    }
    group.finish();
}

criterion_group!(benches, dimer_vs_cc, lattice);
criterion_main!(benches);

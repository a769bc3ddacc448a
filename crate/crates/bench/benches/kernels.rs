use std::hint::black_box;

use criterion::{criterion_group, criterion_main, BenchmarkId, Criterion};
use opuc_bench::{period2, period3, precision};
use opuc_core::arc::{arc_zeros, ArcParameters};
use opuc_core::szego::{period2_pole_polynomial, radius_estimate_toward};
use opuc_core::{find_roots, synthesize};

fn bench_synthesize(c: &mut Criterion) {
    let p = precision();
    let schedule = period3(0.5);
    let mut group = c.benchmark_group("synthesize");
    for n in [50usize, 200] {
        group.bench_with_input(BenchmarkId::from_parameter(n), &n, |b, &n| {
            b.iter(|| synthesize(black_box(&schedule), n, p).unwrap())
        });
    }
    group.finish();
}

fn bench_find_roots(c: &mut Criterion) {
    let p = precision();
    let res = synthesize(&period3(0.5), 100, p).unwrap();
    let mut group = c.benchmark_group("find_roots");
    group.sample_size(10);
    for n in [25usize, 100] {
        group.bench_with_input(BenchmarkId::from_parameter(n), &n, |b, &n| {
            b.iter(|| find_roots(black_box(res.poly(n)), p, 0).unwrap())
        });
    }
    group.finish();
}

fn bench_arc_zeros(c: &mut Criterion) {
    let p = precision();
    let params = ArcParameters::new(&(p.pi() / 2u32)).unwrap();
    let mut group = c.benchmark_group("arc_zeros");
    group.sample_size(10);
    for n in [25usize, 100] {
        group.bench_with_input(BenchmarkId::from_parameter(n), &n, |b, &n| {
            b.iter(|| arc_zeros(black_box(&params), n, p, 0).unwrap())
        });
    }
    group.finish();
}

fn bench_pade(c: &mut Criterion) {
    let p = precision();
    let schedule = period2();
    let values = schedule.values().to_vec();
    let res = synthesize(&schedule, 70, p).unwrap();
    let target = period2_pole_polynomial(&values[0], &values[1]).unwrap();
    let ns: Vec<usize> = (20..=60).collect();
    c.bench_function("pade_radius_20_60", |b| {
        b.iter(|| radius_estimate_toward(black_box(&res.record), 2, &ns, Some(&target)).unwrap())
    });
}

criterion_group!(benches, bench_synthesize, bench_find_roots, bench_arc_zeros, bench_pade);
criterion_main!(benches);

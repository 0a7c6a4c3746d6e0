use std::hint::black_box;

use criterion::{criterion_group, criterion_main, BenchmarkId, Criterion};
use ringline_bench::{ring, SPECS};
use ringline_core::{all_ideals, maximal_reductions, ring_from_text, BuildOptions, ProjLine};

fn tabulate(c: &mut Criterion) {
    let mut g = c.benchmark_group("build_ring");
    for spec in SPECS {
        g.bench_with_input(BenchmarkId::from_parameter(spec), spec, |b, s| {
            b.iter(|| ring_from_text(black_box(s), &BuildOptions::default()).unwrap())
        });
    }
    g.finish();
}

fn ideals(c: &mut Criterion) {
    let mut g = c.benchmark_group("all_ideals");
    for spec in SPECS {
        let r = ring(spec);
        g.bench_with_input(BenchmarkId::from_parameter(spec), &r, |b, r| {
            b.iter(|| all_ideals(r))
        });
    }
    g.finish();
}

fn lines(c: &mut Criterion) {
    let mut g = c.benchmark_group("proj_line");
    for spec in SPECS {
        let r = ring(spec);
        g.bench_with_input(BenchmarkId::new("enumerate", spec), &r, |b, r| {
            b.iter(|| ProjLine::new(r))
        });
        let line = ProjLine::new(&r);
        g.bench_with_input(BenchmarkId::new("profile", spec), &line, |b, l| {
            b.iter(|| l.neighbourhood_profile())
        });
        g.bench_with_input(BenchmarkId::new("reductions", spec), &line, |b, l| {
            b.iter(|| maximal_reductions(l).unwrap())
        });
    }
    g.finish();
}

criterion_group!(benches, tabulate, ideals, lines);
criterion_main!(benches);

use std::hint::black_box;

use criterion::{criterion_group, criterion_main, BenchmarkId, Criterion};
use polywave_bench::{strips, time_grid};
use polywave_core::lattice::count_irreducible_in_sector;
use polywave_core::pentagon::enumerate_pentagon_lengths;
use polywave_core::semigroup::landau_ramanujan;
use polywave_core::waves::count_waves_grid;
use polywave_core::{LatticeKind, SignCone, Solid, SpectrumSieve, WaveOptions};

fn sieve(c: &mut Criterion) {
    let mut g = c.benchmark_group("sieve");
    for limit in [1_000_000u64, 10_000_000] {
        g.bench_with_input(BenchmarkId::new("square", limit), &limit, |b, &n| {
            b.iter(|| SpectrumSieve::build(LatticeKind::Square, black_box(n)).unwrap())
        });
        g.bench_with_input(BenchmarkId::new("triangular", limit), &limit, |b, &n| {
            b.iter(|| SpectrumSieve::build(LatticeKind::Triangular, black_box(n)).unwrap())
        });
    }
    g.finish();
}

fn euler_product(c: &mut Criterion) {
    c.bench_function("landau_ramanujan/1e6", |b| {
        b.iter(|| landau_ramanujan(LatticeKind::Square, black_box(1_000_000)).unwrap())
    });
}

fn waves(c: &mut Criterion) {
    let mut g = c.benchmark_group("waves");
    g.sample_size(10);
    for t_max in [20.0, 30.0] {
        let grid = time_grid(2.0, t_max, 1.0);
        g.bench_with_input(BenchmarkId::new("square_grid", t_max), &grid, |b, grid| {
            b.iter(|| count_waves_grid(LatticeKind::Square, grid, &WaveOptions::default()).unwrap())
        });
    }
    g.finish();
}

fn sectors(c: &mut Criterion) {
    let mut g = c.benchmark_group("sector");
    for solid in [Solid::Cube, Solid::Icosahedron] {
        g.bench_function(solid.name(), |b| {
            b.iter(|| count_irreducible_in_sector(solid.kind(), &solid.sector(), black_box(1000.0)).unwrap())
        });
    }
    g.finish();
}

fn pentagon(c: &mut Criterion) {
    let cone = SignCone::new(0).unwrap();
    c.bench_function("pentagon_lengths/l=10", |b| {
        b.iter(|| enumerate_pentagon_lengths(black_box(10.0), cone).unwrap())
    });
    let strips = strips(10, 20).unwrap();
    c.bench_function("decompose/10_strips", |b| {
        b.iter(|| {
            let mut done = 0;
            for s in &strips {
                let origin = s.faces[0].vertices[0];
                for v in s.vertices() {
                    if v != origin && s.monotone_decompose(origin, v).is_ok() {
                        done += 1;
                    }
                }
            }
            done
        })
    });
}

criterion_group!(benches, sieve, euler_product, waves, sectors, pentagon);
criterion_main!(benches);

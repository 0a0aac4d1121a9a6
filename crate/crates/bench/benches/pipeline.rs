use criterion::{criterion_group, criterion_main, BenchmarkId, Criterion};
use std::hint::black_box;

use orbit_lmap::{compute_l, product_over_roots, roots_le_one, RootSystem, Strategy, DEFAULT_TERM_CAP};
use orbit_lmap_bench::{config, workload, ORBITS};

fn strategies(c: &mut Criterion) {
    let mut group = c.benchmark_group("compute_l");
    group.sample_size(10);
    for i in 0..ORBITS.len() {
        let (ty, h) = workload(i);
        let rs = RootSystem::new(ty);
        let id = format!("{ty}/{h}");
        group.bench_with_input(BenchmarkId::new("hybrid", &id), &h, |b, h| {
            b.iter(|| compute_l(&rs, black_box(h), &config(Strategy::HybridLevi)).unwrap())
        });
        if roots_le_one(&rs, &h).unwrap().len() <= 24 {
            group.bench_with_input(BenchmarkId::new("full", &id), &h, |b, h| {
                b.iter(|| compute_l(&rs, black_box(h), &config(Strategy::FullProduct)).unwrap())
            });
        }
    }
    group.finish();
}

fn products(c: &mut Criterion) {
    let rs = RootSystem::new("B4".parse().unwrap());
    let roots = rs.positive_roots().to_vec();
    c.bench_function("product/B4 all roots", |b| {
        b.iter(|| product_over_roots(&rs, black_box(&roots), DEFAULT_TERM_CAP).unwrap())
    });
    c.bench_function("root system/E8", |b| {
        b.iter(|| RootSystem::new(black_box("E8".parse().unwrap())))
    });
}

criterion_group!(benches, strategies, products);
criterion_main!(benches);

use std::hint::black_box;

use criterion::{criterion_group, criterion_main, BenchmarkId, Criterion};
use planarity_core::generators::{gen_complete, gen_stacked_triangulation};
use planarity_core::geometry::convex_positions;
use planarity_core::obfuscate::{default_order, derandomized_obfuscate, family_optimal_drawing, local_search_swaps};
use planarity_core::puzzle::run_pipeline;
use planarity_core::untangle::{build_intersection_graph, max_independent_set};
use planarity_core::{Drawing, Family};

fn crossing_count(c: &mut Criterion) {
    let mut group = c.benchmark_group("count_crossings");
    for n in [10, 20, 40] {
        let g = gen_complete(n).unwrap();
        let d = Drawing::new(g, convex_positions(n).unwrap()).unwrap();
        group.bench_with_input(BenchmarkId::new("K_n convex", n), &d, |b, d| {
            b.iter(|| black_box(d).count_crossings().unwrap().count)
        });
    }
    group.finish();
}

fn greedy(c: &mut Criterion) {
    let mut group = c.benchmark_group("derandomized_obfuscate");
    for n in [10, 20, 30] {
        let g = gen_stacked_triangulation(n).unwrap();
        let order = default_order(&g);
        group.bench_with_input(BenchmarkId::new("triangulation", n), &g, |b, g| {
            b.iter(|| derandomized_obfuscate(black_box(g), &order).unwrap())
        });
    }
    group.finish();

    let g = gen_stacked_triangulation(20).unwrap();
    let start = derandomized_obfuscate(&g, &default_order(&g)).unwrap();
    c.bench_function("local_search_swaps/triangulation 20", |b| b.iter(|| local_search_swaps(black_box(&start), 200)));
}

fn independent_set(c: &mut Criterion) {
    let mut group = c.benchmark_group("max_independent_set");
    for n in [7, 8, 9] {
        let g = gen_complete(n).unwrap();
        let d = family_optimal_drawing(&g).unwrap();
        let sg = build_intersection_graph(&d).unwrap();
        group.bench_with_input(BenchmarkId::new("K_n convex segments", sg.node_count()), &sg, |b, sg| {
            b.iter(|| max_independent_set(black_box(sg)).unwrap())
        });
    }
    group.finish();
}

fn pipeline(c: &mut Criterion) {
    c.bench_function("run_pipeline/matching 10", |b| b.iter(|| run_pipeline(Family::Matching(10), black_box(1)).unwrap()));
}

criterion_group!(benches, crossing_count, greedy, independent_set, pipeline);
criterion_main!(benches);

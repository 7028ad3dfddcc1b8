use std::hint::black_box;

use criterion::{criterion_group, criterion_main, BenchmarkId, Criterion};
use lazypath_core::experiments::gnp_graph;
use lazypath_core::gw::sample_uniform_labeled_tree;
use lazypath_core::pathfind::dfs_long_path;
use lazypath_core::rng::rng_from_seed;
use lazypath_core::structure::{forest_max_path_count, forest_max_path_cover, two_core};
use lazypath_core::{Forest, LazyOracle, OracleConfig, Vertex};

fn random_forest(t: usize, seed: u64) -> Forest {
    let tree = sample_uniform_labeled_tree(t, false, &mut rng_from_seed(seed)).unwrap();
    Forest::from_edges(t, tree.edges()).unwrap()
}

fn forest_dp(c: &mut Criterion) {
    let mut group = c.benchmark_group("forest_dp");
    for t in [1_000, 10_000, 100_000] {
        let forest = random_forest(t, 1);
        group.bench_with_input(BenchmarkId::new("coverage", t), &forest, |b, f| {
            b.iter(|| forest_max_path_cover(f, 20).unwrap())
        });
        group.bench_with_input(BenchmarkId::new("count", t), &forest, |b, f| {
            b.iter(|| forest_max_path_count(f, 20).unwrap())
        });
    }
    group.finish();
}

fn gnp(c: &mut Criterion) {
    let n = 100_000;
    let p = 1.1 / n as f64;
    c.bench_function("gnp_graph/100000", |b| {
        b.iter(|| gnp_graph(n, p, black_box(3)).unwrap())
    });
    let g = gnp_graph(n, p, 3).unwrap();
    c.bench_function("two_core/100000", |b| b.iter(|| two_core(&g)));
}

fn dfs(c: &mut Criterion) {
    let n = 5_000;
    let eps = 0.2;
    let p = (1.0 + eps) / n as f64;
    let order: Vec<Vertex> = (0..n).collect();
    let target = (eps * eps * n as f64 / 5.0) as usize;
    c.bench_function("dfs_long_path/5000", |b| {
        b.iter(|| {
            let mut oracle =
                LazyOracle::new(OracleConfig::new(n, p, black_box(11)).unwrap()).unwrap();
            dfs_long_path(&mut oracle, &order, target, None).unwrap()
        })
    });
}

criterion_group! {
    name = benches;
    config = Criterion::default().sample_size(10);
    targets = forest_dp, gnp, dfs
}
criterion_main!(benches);

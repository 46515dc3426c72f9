use std::hint::black_box;

use criterion::{criterion_group, criterion_main, BenchmarkId, Criterion, Throughput};
use temporal_encoder::{
    spectral_outlier_measure, temporal_encoder_embedding, unfolded_spectral_embed, vertex_dynamic, SpectralOptions,
};
use temporal_encoder_bench::fixture;

const SIZES: [usize; 3] = [5000, 10000, 20000];

fn embed(c: &mut Criterion) {
    let mut group = c.benchmark_group("embed");
    for n in SIZES {
        let g = fixture(n, 3, 0).unwrap();
        group.throughput(Throughput::Elements(g.graph.total_edges() as u64));
        group.bench_with_input(BenchmarkId::from_parameter(n), &g, |b, g| {
            b.iter(|| temporal_encoder_embedding(black_box(&g.graph), &g.labels).unwrap())
        });
    }
    group.finish();
}

fn dynamics(c: &mut Criterion) {
    let mut group = c.benchmark_group("vertex_dynamic");
    for n in SIZES {
        let g = fixture(n, 10, 0).unwrap();
        let series = temporal_encoder_embedding(&g.graph, &g.labels).unwrap();
        group.bench_with_input(BenchmarkId::from_parameter(n), &series, |b, s| {
            b.iter(|| vertex_dynamic(black_box(s), 0).unwrap())
        });
    }
    group.finish();
}

fn spectral(c: &mut Criterion) {
    let mut group = c.benchmark_group("spectral_d3");
    group.sample_size(10);
    for n in [5000, 10000] {
        let g = fixture(n, 3, 0).unwrap();
        let opts = SpectralOptions::with_dim(3);
        group.bench_with_input(BenchmarkId::from_parameter(n), &g, |b, g| {
            b.iter(|| {
                let emb = unfolded_spectral_embed(black_box(&g.graph), &opts).unwrap();
                spectral_outlier_measure(&emb, 0, 2).unwrap()
            })
        });
    }
    group.finish();
}

criterion_group!(benches, embed, dynamics, spectral);
criterion_main!(benches);

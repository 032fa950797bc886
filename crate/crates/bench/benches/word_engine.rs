use criterion::{criterion_group, criterion_main, BenchmarkId, Criterion};
use std::hint::black_box;

use raag_bench::{graphs, words};
use raag_core::word;

fn reduce(c: &mut Criterion) {
    let mut group = c.benchmark_group("reduce");
    for (name, g) in graphs() {
        for len in [16, 64, 256] {
            let ws = words(&g, 64, len);
            group.bench_with_input(BenchmarkId::new(name, len), &ws, |b, ws| {
                b.iter(|| {
                    for w in ws {
                        black_box(word::reduce(&g, w).unwrap());
                    }
                })
            });
        }
    }
    group.finish();
}

fn gates_and_support(c: &mut Criterion) {
    let mut group = c.benchmark_group("gate");
    for (name, g) in graphs() {
        let xs: Vec<_> = words(&g, 64, 64).iter().map(|w| word::reduce(&g, w).unwrap()).collect();
        let half = raag_core::VertexSet::from_iter((0..g.vertex_count()).step_by(2));
        group.bench_function(BenchmarkId::new("gate_right", name), |b| {
            b.iter(|| {
                for x in &xs {
                    black_box(word::gate_right(&g, x, half));
                }
            })
        });
        group.bench_function(BenchmarkId::new("cyclic_reduce", name), |b| {
            b.iter(|| {
                for x in &xs {
                    black_box(word::cyclic_reduce(&g, x));
                }
            })
        });
    }
    group.finish();
}

fn balls(c: &mut Criterion) {
    let g = raag_core::Graph::cycle(5);
    let mut group = c.benchmark_group("ball");
    group.sample_size(10);
    for r in [3, 5] {
        group.bench_with_input(BenchmarkId::new("c5", r), &r, |b, &r| b.iter(|| black_box(word::ball(&g, r).len())));
    }
    group.finish();
}

criterion_group!(benches, reduce, gates_and_support, balls);
criterion_main!(benches);

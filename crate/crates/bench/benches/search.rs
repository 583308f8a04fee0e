use std::hint::black_box;

use basketry::index_bound::max_index_report;
use basketry::search::{search, ConstraintSet};
use criterion::{criterion_group, criterion_main, Criterion};

fn enumeration(c: &mut Criterion) {
    let mut g = c.benchmark_group("search");
    g.sample_size(20);
    let list = ConstraintSet::qfano(0).pin(2, 0);
    g.bench_function("P_-1 = P_-2 = 0", |b| b.iter(|| search(black_box(&list)).unwrap()));
    let p1 = ConstraintSet::qfano(1).pin(2, 1).pin(3, 1).pin(4, 1);
    g.bench_function("P_-1 = .. = P_-4 = 1", |b| b.iter(|| search(black_box(&p1)).unwrap()));
    g.bench_function("index bound", |b| b.iter(max_index_report));
    g.finish();
}

criterion_group!(benches, enumeration);
criterion_main!(benches);

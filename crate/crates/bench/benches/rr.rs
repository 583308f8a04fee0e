use std::hint::black_box;

use basketry::rr::{anti_plurigenus, anti_plurigenus_recursive, plurigenera};
use basketry::WeightedBasket;
use criterion::{criterion_group, criterion_main, Criterion};

fn rr(c: &mut Criterion) {
    let wb = WeightedBasket::parse("2x(1,2),(2,5),(3,7),(4,9)", 0).unwrap();
    c.bench_function("plurigenera to 100", |b| b.iter(|| plurigenera(black_box(&wb), 100).unwrap()));
    c.bench_function("closed form P_-61", |b| b.iter(|| anti_plurigenus(black_box(&wb), 61).unwrap()));
    c.bench_function("recursive P_-61", |b| b.iter(|| anti_plurigenus_recursive(black_box(&wb), 61).unwrap()));
}

criterion_group!(benches, rr);
criterion_main!(benches);

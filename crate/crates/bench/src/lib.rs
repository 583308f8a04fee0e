//! Benchmarks live in `benches/`: `cargo bench -p basketry-bench`.

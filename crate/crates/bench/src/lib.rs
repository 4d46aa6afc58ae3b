//! Criterion benchmarks for `bqlab-core` live under `benches/`.

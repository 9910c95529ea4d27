//! Criterion benchmarks for vicalign live under `benches/`.

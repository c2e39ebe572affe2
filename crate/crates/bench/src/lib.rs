//! Criterion benchmarks for `hesspave-core`; see `benches/`.

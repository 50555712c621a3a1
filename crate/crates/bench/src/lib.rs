//! Criterion benchmarks for the exact series engine; see `benches/`.

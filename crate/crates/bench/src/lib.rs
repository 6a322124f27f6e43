//! Criterion benchmarks for the Smith normal form paths; see `benches/`.

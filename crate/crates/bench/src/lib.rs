//! Criterion benchmarks for catalyze-core; see `benches/`.

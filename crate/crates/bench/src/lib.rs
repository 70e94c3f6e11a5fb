//! Criterion benchmarks for `ftinv`; see `benches/`.

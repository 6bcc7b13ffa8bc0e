//! Criterion benchmarks for `isoform-core` live in `benches/`.

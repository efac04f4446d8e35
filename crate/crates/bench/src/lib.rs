//! Criterion benchmarks for fusioncat kernels; see `benches/`.

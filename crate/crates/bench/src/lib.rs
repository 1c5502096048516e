//! Criterion benchmarks for the exit-time kernels; see `benches/`.

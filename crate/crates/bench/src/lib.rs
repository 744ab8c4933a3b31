//! Criterion benchmarks for the ymlab kernels live under `benches/`.

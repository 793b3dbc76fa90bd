//! Benchmarks for `affine-gs`; see `benches/engine.rs`.

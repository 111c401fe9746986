//! Benchmarks for media-core; see `benches/`.

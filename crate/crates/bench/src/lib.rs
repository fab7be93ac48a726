//! Benchmarks for `qgenocchi`; see `benches/`.

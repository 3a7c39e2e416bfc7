//! Benchmark-only crate; see `benches/crystals.rs`.

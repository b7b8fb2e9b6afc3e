//! Benchmark-only crate; see benches/atlas.rs.

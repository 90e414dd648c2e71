//! Criterion benchmarks for `sigmatau-core`; the harness lives in `benches/core.rs`.

//! Criterion benchmarks for the error-probability evaluators; run with
//! `cargo bench -p twdp-bench`.

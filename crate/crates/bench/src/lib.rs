//! Criterion microbenchmarks for the lcm-primes crates; see `benches/`.
//! Run with `cargo bench -p lcm-primes-bench`.

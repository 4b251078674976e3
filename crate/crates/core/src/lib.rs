//! Primes through the LCM characteristic function.
//!
//! The quotient `lcm(1..j) / lcm(1..j-1)`, floor-divided by `j`, is 1 exactly
//! when `j` is prime. Summing it gives the prime-counting function, and
//! counting how often that count stays below `n` recovers the n-th prime.
//! This crate implements that pipeline with arbitrary-precision integers,
//! three summation variants (fresh, memoized, and Rosser–Schoenfeld
//! accelerated), an independent sieve oracle to verify every value exactly,
//! and a timing harness that fits empirical power laws to the measured cost.

pub mod bench;
pub mod error;
pub mod lcm;
pub mod nth_prime;
pub mod oracle;
pub mod prime_count;
pub mod verify;

pub use bench::{
    emit_table, fit_complexity, parse_csv, run_bench, BenchRecord, ComplexityFit, Predictor,
    TableFormat, CSV_HEADER,
};
pub use error::{Error, Result};
pub use lcm::{char_fn, char_with_ratio, lcm_fresh, ratio, smarandache_p, CharValue, LcmState};
pub use nth_prime::{
    bounds_basic, bounds_rs, nth_prime, rs_c, Bounds, NthPrimeResult, Variant, ALL_VARIANTS,
};
pub use oracle::{is_prime, prime_power_decompose, ratio_law, sieve, SieveTable};
pub use prime_count::{pi_fresh, pi_streaming, PiAccumulator};
pub use verify::{run_verify, SectionReport, VerifyOptions, VerifyReport};

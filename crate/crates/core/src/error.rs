use crate::nth_prime::Variant;

/// Errors across the library: domain violations, corrupted arithmetic
/// state, and benchmark/fit failures.
#[derive(Debug, Clone, PartialEq, thiserror::Error)]
pub enum Error {
    #[error("{op}: argument must be at least {min}, got {got}")]
    DomainTooSmall {
        op: &'static str,
        min: u64,
        got: u64,
    },

    #[error("lcm ratio at index {j} is not an exact divisor; state is corrupted")]
    InexactRatio { j: u64 },

    #[error("inverted summation bounds for n={n}: k_lo={k_lo} > k_hi={k_hi}")]
    InvertedBounds { n: u64, k_lo: u64, k_hi: u64 },

    #[error("verification failed for variant={variant} n={n}: got {got}, expected {expected}")]
    BenchMismatch {
        variant: Variant,
        n: u64,
        got: u64,
        expected: u64,
    },

    #[error("complexity fit needs at least {min} records with distinct n, got {got}")]
    TooFewFitPoints { min: usize, got: usize },

    #[error(
        "complexity fit rejects non-positive timing for n={n} ({elapsed}s): \
         below clock resolution; raise n or repetitions"
    )]
    NonPositiveTiming { n: u64, elapsed: f64 },

    #[error("complexity fit requires records from a single variant")]
    MixedVariants,

    #[error("predictor value is not positive at n={n}; drop that point or use a larger n")]
    NonPositivePredictor { n: u64 },

    #[error("cannot emit a table from an empty record list")]
    EmptyRecords,

    #[error("csv parse error: {0}")]
    CsvParse(String),
}

pub type Result<T> = std::result::Result<T, Error>;

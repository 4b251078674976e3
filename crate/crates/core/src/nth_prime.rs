//! The n-th prime via summation of the prime-counting function built on the
//! LCM characteristic function. Three variants share one summation loop and
//! differ in how `pi(k)` is supplied and which bounds delimit the sum:
//!
//! * `Naive` — basic bounds, `pi(k)` recomputed from scratch for every `k`;
//! * `Memoized` — basic bounds, one streaming accumulator across `k`;
//! * `Rs` — Rosser–Schoenfeld bounds, streaming accumulator, valid for `n > 1`.

use std::fmt;
use std::str::FromStr;
use std::time::{Duration, Instant};

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::prime_count::{pi_fresh, PiAccumulator};

/// Algorithm variant tag.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum Variant {
    Naive,
    Memoized,
    Rs,
}

pub const ALL_VARIANTS: [Variant; 3] = [Variant::Naive, Variant::Memoized, Variant::Rs];

impl Variant {
    /// Smallest admissible `n` for this variant.
    pub fn min_n(self) -> u64 {
        match self {
            Variant::Naive | Variant::Memoized => 1,
            Variant::Rs => 2,
        }
    }

    pub fn label(self) -> &'static str {
        match self {
            Variant::Naive => "naive",
            Variant::Memoized => "memoized",
            Variant::Rs => "rs",
        }
    }
}

impl fmt::Display for Variant {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.label())
    }
}

impl FromStr for Variant {
    type Err = String;

    fn from_str(s: &str) -> std::result::Result<Self, Self::Err> {
        match s.to_ascii_lowercase().as_str() {
            "naive" => Ok(Variant::Naive),
            "memo" | "memoized" => Ok(Variant::Memoized),
            "rs" => Ok(Variant::Rs),
            other => Err(format!(
                "unknown variant `{other}` (expected naive, memo, memoized, or rs)"
            )),
        }
    }
}

/// Summation limits for one variant, plus the additive constant outside
/// the sum (1 for the basic formula, `floor(n ln n)` for the RS form).
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct Bounds {
    pub base: u64,
    pub k_lo: u64,
    pub k_hi: u64,
}

/// Basic-formula bounds: sum over `k = 1 ..= floor(2 n ln n + 2)`.
///
/// The limit is evaluated in f64; for very large `n` a value landing within
/// rounding distance of an integer would need guarded evaluation, but the
/// oracle-agreement suite pins correctness over the tested range.
pub fn bounds_basic(n: u64) -> Result<Bounds> {
    if n < 1 {
        return Err(Error::DomainTooSmall {
            op: "bounds_basic",
            min: 1,
            got: n,
        });
    }
    let x = n as f64;
    let k_hi = (2.0 * x * x.ln() + 2.0).floor() as u64;
    Ok(Bounds {
        base: 1,
        k_lo: 1,
        k_hi,
    })
}

/// Rosser–Schoenfeld upper-bound expression
/// `c_n = n ln n + n (ln ln n - 1/2)`, defined for `n >= 2`.
/// Negative for very small `n`.
pub fn rs_c(n: u64) -> Result<f64> {
    if n < 2 {
        return Err(Error::DomainTooSmall {
            op: "rs_c",
            min: 2,
            got: n,
        });
    }
    let x = n as f64;
    Ok(x * x.ln() + x * (x.ln().ln() - 0.5))
}

/// RS-accelerated bounds: base and lower limit `floor(n ln n)`, upper limit
/// `floor(c_n + 3)`.
pub fn bounds_rs(n: u64) -> Result<Bounds> {
    if n < 2 {
        return Err(Error::DomainTooSmall {
            op: "bounds_rs",
            min: 2,
            got: n,
        });
    }
    let x = n as f64;
    let k_lo = (x * x.ln()).floor() as u64;
    let k_hi = (rs_c(n)? + 3.0).floor() as u64;
    Ok(Bounds {
        base: k_lo,
        k_lo,
        k_hi,
    })
}

/// Outcome of one n-th prime evaluation, with instrumentation for the
/// benchmark harness.
#[derive(Debug, Clone)]
pub struct NthPrimeResult {
    pub n: u64,
    pub p_n: u64,
    pub variant: Variant,
    pub bounds: Bounds,
    /// Number of summands evaluated (not lcm updates).
    pub terms_evaluated: u64,
    pub elapsed: Duration,
}

/// Compute the n-th prime as `base + sum over k of (1 - floor(pi(k)/n))`.
///
/// With `early_exit` set, the summation stops at the first zero term; since
/// `pi` is nondecreasing every later term is also zero, so the result is
/// unchanged and only `terms_evaluated` may differ.
pub fn nth_prime(n: u64, variant: Variant, early_exit: bool) -> Result<NthPrimeResult> {
    if n < variant.min_n() {
        return Err(Error::DomainTooSmall {
            op: match variant {
                Variant::Naive => "nth_prime(naive)",
                Variant::Memoized => "nth_prime(memoized)",
                Variant::Rs => "nth_prime(rs)",
            },
            min: variant.min_n(),
            got: n,
        });
    }
    let started = Instant::now();
    let bounds = match variant {
        Variant::Naive | Variant::Memoized => bounds_basic(n)?,
        Variant::Rs => bounds_rs(n)?,
    };
    if bounds.k_hi < bounds.k_lo {
        // Must not happen for in-domain n; a silent empty sum would hide it.
        return Err(Error::InvertedBounds {
            n,
            k_lo: bounds.k_lo,
            k_hi: bounds.k_hi,
        });
    }

    let mut sum: i64 = 0;
    let mut terms: u64 = 0;
    match variant {
        Variant::Naive => {
            for k in bounds.k_lo..=bounds.k_hi {
                let pi = pi_fresh(k)?;
                terms += 1;
                let term = 1 - (pi / n) as i64;
                sum += term;
                if early_exit && term == 0 {
                    break;
                }
            }
        }
        Variant::Memoized | Variant::Rs => {
            let mut acc = PiAccumulator::new();
            acc.advance_to(bounds.k_lo);
            for k in bounds.k_lo..=bounds.k_hi {
                acc.advance_to(k);
                terms += 1;
                let term = 1 - (acc.pi() / n) as i64;
                sum += term;
                if early_exit && term == 0 {
                    break;
                }
            }
        }
    }

    let p_n = (bounds.base as i64 + sum) as u64;
    Ok(NthPrimeResult {
        n,
        p_n,
        variant,
        bounds,
        terms_evaluated: terms,
        elapsed: started.elapsed(),
    })
}

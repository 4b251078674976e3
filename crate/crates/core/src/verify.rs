//! Oracle-agreement sweeps behind the `verify` subcommand: characteristic
//! function and ratio law against the sieve, streaming pi against the sieve's
//! prefix counts, n-th prime variants against the sieve's prime list, and the
//! RS bound safety ledger.

use crate::error::{Error, Result};
use crate::lcm::LcmState;
use crate::nth_prime::{bounds_basic, bounds_rs, nth_prime, Variant};
use crate::oracle;

#[derive(Debug, Clone)]
pub struct VerifyOptions {
    /// Upper end of the n-th prime sweeps; at least 2.
    pub max_n: u64,
    pub variants: Vec<Variant>,
    /// Naive sweeps stop here; the fresh path is cubic in the bound.
    pub naive_cap: u64,
    /// Test hook: report the flipped characteristic value at this index,
    /// so the mismatch reporting path can be exercised end to end.
    pub char_fault: Option<u64>,
}

impl VerifyOptions {
    pub fn new(max_n: u64) -> Self {
        VerifyOptions {
            max_n,
            variants: vec![Variant::Memoized, Variant::Rs],
            naive_cap: 50,
            char_fault: None,
        }
    }
}

#[derive(Debug, Clone)]
pub struct SectionReport {
    pub name: String,
    pub checked: u64,
    /// First counterexample, if the section failed.
    pub failure: Option<String>,
}

#[derive(Debug, Clone)]
pub struct VerifyReport {
    pub sections: Vec<SectionReport>,
    /// Minimum of `k_hi - (p_n - 1)` over the RS range, with the n attaining it.
    pub rs_min_slack: Option<(i64, u64)>,
}

impl VerifyReport {
    pub fn passed(&self) -> bool {
        self.sections.iter().all(|s| s.failure.is_none())
    }

    pub fn first_failure(&self) -> Option<&str> {
        self.sections
            .iter()
            .find_map(|s| s.failure.as_deref())
    }
}

/// Run all agreement sweeps. The sieve limit is the larger of 5000 and the
/// basic summation bound at `max_n`, so oracle coverage always exceeds the
/// formula ranges.
pub fn run_verify(opts: &VerifyOptions) -> Result<VerifyReport> {
    if opts.max_n < 2 {
        return Err(Error::DomainTooSmall {
            op: "verify max_n",
            min: 2,
            got: opts.max_n,
        });
    }
    let limit = bounds_basic(opts.max_n)?.k_hi.max(5000);
    let table = oracle::sieve(limit)?;

    let mut sections = Vec::new();

    // one streaming pass covers char, ratio, and pi agreement
    let mut char_failure = None;
    let mut pi_failure = None;
    let mut state = LcmState::new();
    let mut pi: u64 = 0;
    for j in 2..=limit {
        let ratio = state.advance();
        let mut ch = ratio / j;
        if opts.char_fault == Some(j) {
            ch = 1 - ch;
        }
        if char_failure.is_none() {
            let expect = u64::from(table.is_prime(j));
            if ch != expect {
                char_failure = Some(format!(
                    "char mismatch at j={j}: formula gives {ch}, oracle gives {expect}"
                ));
            } else if ratio != oracle::ratio_law(j)? {
                char_failure = Some(format!(
                    "ratio mismatch at j={j}: computed {ratio}, predicted {}",
                    oracle::ratio_law(j)?
                ));
            }
        }
        pi += ch;
        if pi_failure.is_none() && pi != table.pi(j) {
            pi_failure = Some(format!(
                "pi mismatch at k={j}: formula gives {pi}, sieve gives {}",
                table.pi(j)
            ));
        }
    }
    sections.push(SectionReport {
        name: format!("char/ratio agreement on [2, {limit}]"),
        checked: limit - 1,
        failure: char_failure,
    });
    sections.push(SectionReport {
        name: format!("pi agreement on [1, {limit}]"),
        checked: limit,
        failure: pi_failure,
    });

    for &variant in &opts.variants {
        let hi = match variant {
            Variant::Naive => opts.max_n.min(opts.naive_cap),
            _ => opts.max_n,
        };
        let lo = variant.min_n();
        let mut failure = None;
        let mut checked = 0u64;
        for n in lo..=hi {
            let got = nth_prime(n, variant, false)?.p_n;
            let expect = table
                .nth_prime(n)
                .expect("sieve limit covers the sweep range");
            checked += 1;
            if got != expect {
                failure = Some(format!(
                    "nth prime mismatch for variant={variant} n={n}: got {got}, expected {expect}"
                ));
                break;
            }
        }
        sections.push(SectionReport {
            name: format!("nth prime ({variant}) on [{lo}, {hi}]"),
            checked,
            failure,
        });
    }

    // RS bound safety ledger
    let mut rs_failure = None;
    let mut min_slack: Option<(i64, u64)> = None;
    for n in 2..=opts.max_n {
        let b = bounds_rs(n)?;
        let p = table.nth_prime(n).expect("within sieve");
        if b.k_lo > p - 1 {
            rs_failure = Some(format!(
                "rs lower bound violated at n={n}: k_lo={} > p_n-1={}",
                b.k_lo,
                p - 1
            ));
            break;
        }
        let slack = b.k_hi as i64 - (p as i64 - 1);
        if min_slack.is_none_or(|(s, _)| slack < s) {
            min_slack = Some((slack, n));
        }
        if slack < 0 {
            rs_failure = Some(format!(
                "rs upper bound violated at n={n}: k_hi={} < p_n-1={}",
                b.k_hi,
                p - 1
            ));
            break;
        }
    }
    sections.push(SectionReport {
        name: format!("rs bound safety on [2, {}]", opts.max_n),
        checked: opts.max_n - 1,
        failure: rs_failure,
    });

    Ok(VerifyReport {
        sections,
        rs_min_slack: min_slack,
    })
}

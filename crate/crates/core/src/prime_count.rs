//! Prime-counting function `pi(k)` as the running sum of the characteristic
//! function, in both a batch form that recomputes every lcm from scratch and
//! a streaming form that advances one state.

use crate::error::{Error, Result};
use crate::lcm::{char_from_ratio, char_fn, LcmState};

/// Streaming prime counter: current index `k`, count of primes `<= k`, and
/// the lcm state at `k`. Each step performs exactly one lcm update.
#[derive(Debug, Clone)]
pub struct PiAccumulator {
    state: LcmState,
    pi: u64,
}

impl PiAccumulator {
    /// Start at `k = 1` with the empty-sum count `pi(1) = 0`.
    pub fn new() -> Self {
        PiAccumulator {
            state: LcmState::new(),
            pi: 0,
        }
    }

    pub fn k(&self) -> u64 {
        self.state.index()
    }

    pub fn pi(&self) -> u64 {
        self.pi
    }

    pub fn state(&self) -> &LcmState {
        &self.state
    }

    /// Advance to `k + 1`, adding the characteristic value at the new index.
    pub fn step(&mut self) {
        let m = self.state.advance();
        self.pi += char_from_ratio(m, self.state.index()).value();
    }

    /// Step until the accumulator sits at index `k`.
    pub fn advance_to(&mut self, k: u64) {
        while self.state.index() < k {
            self.step();
        }
    }
}

impl Default for PiAccumulator {
    fn default() -> Self {
        Self::new()
    }
}

/// `pi(k)` as the sum of characteristic values over `2..=k`, recomputing
/// every lcm from scratch for every term. `k = 1` is the empty sum.
pub fn pi_fresh(k: u64) -> Result<u64> {
    if k < 1 {
        return Err(Error::DomainTooSmall {
            op: "pi_fresh",
            min: 1,
            got: k,
        });
    }
    let mut sum = 0u64;
    for j in 2..=k {
        sum += char_fn(j)?.value();
    }
    Ok(sum)
}

/// `pi(k)` via the streaming path: one accumulator advanced from 1 to `k`.
pub fn pi_streaming(k: u64) -> Result<u64> {
    if k < 1 {
        return Err(Error::DomainTooSmall {
            op: "pi",
            min: 1,
            got: k,
        });
    }
    let mut acc = PiAccumulator::new();
    acc.advance_to(k);
    Ok(acc.pi())
}

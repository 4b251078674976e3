//! Arbitrary-precision LCM sequence `lcm(1..j)`, its consecutive ratio, and
//! the 0/1 characteristic function of primes built from it.
//!
//! `lcm(1..j)` grows like `e^j` and overflows 64-bit integers near `j = 44`,
//! so values are `BigUint` throughout. Two evaluation paths exist on purpose:
//! [`lcm_fresh`] recomputes from scratch (used by the non-memoized n-th prime
//! variant), while [`LcmState::advance`] is the one-step recurrence.

use num_bigint::BigUint;
use num_traits::One;

use crate::error::{Error, Result};

/// Value of the prime characteristic function at one index: 0 or 1.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct CharValue(u8);

impl CharValue {
    fn from_quotient(q: u64) -> Self {
        debug_assert!(q <= 1, "characteristic quotient out of range: {q}");
        CharValue(q as u8)
    }

    pub fn value(self) -> u64 {
        u64::from(self.0)
    }

    pub fn is_one(self) -> bool {
        self.0 == 1
    }
}

/// Running pair `(j, lcm(1..j))` for the recurrence.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct LcmState {
    j: u64,
    l: BigUint,
}

impl LcmState {
    /// Start of the recurrence: `j = 1`, `lcm(1) = 1`.
    pub fn new() -> Self {
        LcmState {
            j: 1,
            l: BigUint::one(),
        }
    }

    pub fn index(&self) -> u64 {
        self.j
    }

    /// `lcm(1..j)` for the current index.
    pub fn value(&self) -> &BigUint {
        &self.l
    }

    /// Advance from `j` to `j+1` and return the exact multiplier
    /// `lcm(1..j+1) / lcm(1..j)`, which is always 1 or a prime power ratio
    /// fitting in a `u64`.
    pub fn advance(&mut self) -> u64 {
        self.j += 1;
        lcm_step(&mut self.l, self.j)
    }
}

impl Default for LcmState {
    fn default() -> Self {
        Self::new()
    }
}

/// One fold step: replace `l` by `lcm(l, k)` and return the multiplier
/// `lcm(l, k) / l = k / gcd(l, k)`. The gcd is taken first so the big value
/// is only ever multiplied by a small exact factor.
pub(crate) fn lcm_step(l: &mut BigUint, k: u64) -> u64 {
    let g = gcd_u64(rem_by_small(l, k), k);
    let m = k / g;
    if m > 1 {
        *l *= m;
    }
    m
}

/// `lcm(1, 2, ..., j)` computed from scratch by folding pairwise lcm
/// (via gcd) over `1..j`.
pub fn lcm_fresh(j: u64) -> Result<BigUint> {
    if j < 1 {
        return Err(Error::DomainTooSmall {
            op: "lcm_fresh",
            min: 1,
            got: j,
        });
    }
    let mut l = BigUint::one();
    for i in 2..=j {
        lcm_step(&mut l, i);
    }
    Ok(l)
}

/// Exact quotient `lcm(1..j) / lcm(1..j-1)` from two adjacent values.
/// The division must be exact; a remainder signals a corrupted state.
pub fn ratio(after: &LcmState, l_before: &BigUint) -> Result<BigUint> {
    use num_integer::Integer;
    let (q, r) = after.value().div_rem(l_before);
    if !num_traits::Zero::is_zero(&r) {
        return Err(Error::InexactRatio { j: after.index() });
    }
    Ok(q)
}

/// Characteristic function of primes at `j >= 2`:
/// `floor( (lcm(1..j) / lcm(1..j-1)) / j )`, which is 1 exactly when `j`
/// is prime. Fresh evaluation: both lcm values are rebuilt from scratch.
pub fn char_fn(j: u64) -> Result<CharValue> {
    char_with_ratio(j).map(|(c, _)| c)
}

/// Fresh characteristic value together with the exact consecutive-lcm ratio
/// it was derived from.
pub fn char_with_ratio(j: u64) -> Result<(CharValue, BigUint)> {
    if j < 2 {
        return Err(Error::DomainTooSmall {
            op: "char_fn",
            min: 2,
            got: j,
        });
    }
    let prev = lcm_fresh(j - 1)?;
    let mut state = LcmState { j: j - 1, l: prev.clone() };
    state.advance();
    let r = ratio(&state, &prev)?;
    let r64 = num_traits::ToPrimitive::to_u64(&r).ok_or(Error::InexactRatio { j })?;
    Ok((CharValue::from_quotient(r64 / j), r))
}

/// Complement of the characteristic function: 0 at primes, 1 otherwise.
pub fn smarandache_p(j: u64) -> Result<u64> {
    if j < 2 {
        return Err(Error::DomainTooSmall {
            op: "smarandache_p",
            min: 2,
            got: j,
        });
    }
    Ok(1 - char_fn(j)?.value())
}

/// Characteristic value from a step ratio: `floor(ratio / j)`.
/// Used by the streaming prime counter, where the ratio is already known.
pub(crate) fn char_from_ratio(ratio: u64, j: u64) -> CharValue {
    debug_assert!(j >= 2);
    CharValue::from_quotient(ratio / j)
}

fn gcd_u64(mut a: u64, mut b: u64) -> u64 {
    while b != 0 {
        let t = b;
        b = a % b;
        a = t;
    }
    a
}

/// Remainder of a `BigUint` modulo a machine-word divisor.
///
/// For `d < 2^32` (every index this crate ever folds), streams base-2^32
/// chunks most-significant first; each chunk keeps the invariant
/// `x = (r << 32) | chunk < 2^64`, and the division is replaced by a
/// Barrett-style multiply with `m = floor(2^64 / d)`, whose quotient
/// estimate is at most 2 below the true one. Larger divisors take the
/// generic path.
fn rem_by_small(l: &BigUint, d: u64) -> u64 {
    if d == 1 {
        return 0;
    }
    if d >= 1u64 << 32 {
        return num_traits::ToPrimitive::to_u64(&(l % d)).expect("remainder fits in u64");
    }
    let m = ((1u128 << 64) / u128::from(d)) as u64;
    let mut r: u64 = 0;
    for limb in l.iter_u64_digits().rev() {
        for chunk in [limb >> 32, limb & 0xffff_ffff] {
            let x = (r << 32) | chunk;
            let q = ((u128::from(x) * u128::from(m)) >> 64) as u64;
            r = x - q * d;
            while r >= d {
                r -= d;
            }
        }
    }
    r
}

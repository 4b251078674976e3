//! Independent ground truth: sieve of Eratosthenes with a cumulative prime
//! count table, trial-division primality, prime-power decomposition, and the
//! predicted LCM ratio. Shares no code with the lcm module; the agreement
//! tests rely on that separation.

use crate::error::{Error, Result};

/// Sieve of Eratosthenes over `[0, limit]` with derived tables.
#[derive(Debug, Clone)]
pub struct SieveTable {
    limit: u64,
    flags: Vec<bool>,
    pi_table: Vec<u64>,
    primes: Vec<u64>,
}

impl SieveTable {
    pub fn limit(&self) -> u64 {
        self.limit
    }

    /// Primality of `j` for `j <= limit`.
    pub fn is_prime(&self, j: u64) -> bool {
        assert!(j <= self.limit, "sieve lookup {j} beyond limit {}", self.limit);
        self.flags[j as usize]
    }

    /// Number of primes `<= k`, for `k <= limit`.
    pub fn pi(&self, k: u64) -> u64 {
        assert!(k <= self.limit, "sieve lookup {k} beyond limit {}", self.limit);
        self.pi_table[k as usize]
    }

    /// The n-th prime (1-indexed), if it is within the sieved range.
    pub fn nth_prime(&self, n: u64) -> Option<u64> {
        if n == 0 {
            return None;
        }
        self.primes.get(n as usize - 1).copied()
    }

    pub fn primes(&self) -> &[u64] {
        &self.primes
    }
}

/// Build a sieve table over `[2, limit]`.
pub fn sieve(limit: u64) -> Result<SieveTable> {
    if limit < 2 {
        return Err(Error::DomainTooSmall {
            op: "sieve",
            min: 2,
            got: limit,
        });
    }
    let n = limit as usize;
    let mut flags = vec![true; n + 1];
    flags[0] = false;
    flags[1] = false;
    let mut i = 2usize;
    while i * i <= n {
        if flags[i] {
            let mut j = i * i;
            while j <= n {
                flags[j] = false;
                j += i;
            }
        }
        i += 1;
    }
    let mut pi_table = vec![0u64; n + 1];
    let mut primes = Vec::new();
    let mut count = 0u64;
    for (v, &f) in flags.iter().enumerate() {
        if f {
            count += 1;
            primes.push(v as u64);
        }
        pi_table[v] = count;
    }
    Ok(SieveTable {
        limit,
        flags,
        pi_table,
        primes,
    })
}

/// Trial division up to `floor(sqrt(j))`; values below 2 are not prime.
pub fn is_prime(j: u64) -> bool {
    if j < 2 {
        return false;
    }
    let mut d = 2u64;
    while d * d <= j {
        if j.is_multiple_of(d) {
            return false;
        }
        d += 1;
    }
    true
}

/// Decompose `j >= 2` as `p^a` if it is a prime power.
pub fn prime_power_decompose(j: u64) -> Result<Option<(u64, u32)>> {
    if j < 2 {
        return Err(Error::DomainTooSmall {
            op: "prime_power_decompose",
            min: 2,
            got: j,
        });
    }
    let mut p = 2u64;
    while p * p <= j {
        if j.is_multiple_of(p) {
            let mut rest = j;
            let mut a = 0u32;
            while rest.is_multiple_of(p) {
                rest /= p;
                a += 1;
            }
            return Ok(if rest == 1 { Some((p, a)) } else { None });
        }
        p += 1;
    }
    // no divisor up to sqrt(j): j is prime
    Ok(Some((j, 1)))
}

/// Predicted value of `lcm(1..j) / lcm(1..j-1)` without computing any lcm:
/// `p` when `j = p^a` is a prime power, 1 otherwise.
pub fn ratio_law(j: u64) -> Result<u64> {
    if j < 2 {
        return Err(Error::DomainTooSmall {
            op: "ratio_law",
            min: 2,
            got: j,
        });
    }
    Ok(match prime_power_decompose(j)? {
        Some((p, _)) => p,
        None => 1,
    })
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn sieve_examples() {
        let t = sieve(10).unwrap();
        assert_eq!(t.primes(), &[2, 3, 5, 7]);
        assert_eq!(t.pi(10), 4);

        let t = sieve(30).unwrap();
        assert_eq!(t.pi(30), 10);

        let t = sieve(2).unwrap();
        assert_eq!(t.primes(), &[2]);
    }

    #[test]
    fn sieve_rejects_small_limit() {
        assert!(sieve(1).is_err());
        assert!(sieve(0).is_err());
    }

    #[test]
    fn trial_division_examples() {
        assert!(!is_prime(0));
        assert!(!is_prime(1));
        assert!(is_prime(2));
        assert!(!is_prime(91)); // 7 * 13
    }

    #[test]
    fn sieve_agrees_with_trial_division_to_5000() {
        let t = sieve(5000).unwrap();
        for j in 0..=5000u64 {
            if j >= 2 {
                assert_eq!(t.is_prime(j), is_prime(j), "j={j}");
            }
        }
    }

    #[test]
    fn pi_table_is_prefix_sum() {
        let t = sieve(1000).unwrap();
        let mut count = 0;
        for j in 0..=1000u64 {
            if t.is_prime(j) {
                count += 1;
            }
            assert_eq!(t.pi(j), count);
        }
    }

    #[test]
    fn nth_prime_indexing() {
        let t = sieve(100).unwrap();
        assert_eq!(t.nth_prime(0), None);
        assert_eq!(t.nth_prime(1), Some(2));
        assert_eq!(t.nth_prime(10), Some(29));
        assert_eq!(t.nth_prime(26), None); // only 25 primes below 100
    }

    #[test]
    fn prime_power_examples() {
        assert_eq!(prime_power_decompose(8).unwrap(), Some((2, 3)));
        assert_eq!(prime_power_decompose(9).unwrap(), Some((3, 2)));
        assert_eq!(prime_power_decompose(12).unwrap(), None);
        assert_eq!(prime_power_decompose(2).unwrap(), Some((2, 1)));
        assert!(prime_power_decompose(1).is_err());
    }

    #[test]
    fn ratio_law_examples() {
        assert_eq!(ratio_law(7).unwrap(), 7);
        assert_eq!(ratio_law(9).unwrap(), 3);
        assert_eq!(ratio_law(6).unwrap(), 1);
        assert!(ratio_law(1).is_err());
    }

    #[test]
    fn predicted_ratio_quotient_marks_exactly_the_primes() {
        // floor(ratio_law(j)/j) = 1 iff j is prime: the ratio reaches j
        // only when j itself is the prime power p^1
        for j in 2..=5000u64 {
            assert_eq!(ratio_law(j).unwrap() / j == 1, is_prime(j), "j={j}");
        }
    }
}

//! Brute-force reference path: plain Eratosthenes marking and direct tuple
//! scans. Shares no code with the segmented μ/Λ machinery — that
//! independence is the whole point. Single-threaded; it is the trusted
//! slow path.

use crate::error::{Error, Result};
use crate::tuples::OffsetSet;

/// Largest table this module will allocate (bit per integer).
pub const MAX_TABLE_LIMIT: u64 = 1 << 32;

/// Primality bit table for [0, limit].
#[derive(Debug, Clone)]
pub struct PrimeTable {
    limit: u64,
    bits: Vec<u64>,
}

impl PrimeTable {
    pub fn limit(&self) -> u64 {
        self.limit
    }

    /// True iff n is prime. Panics when n exceeds the table.
    #[inline]
    pub fn is_prime(&self, n: u64) -> bool {
        assert!(n <= self.limit, "{n} beyond table limit {}", self.limit);
        self.bits[(n >> 6) as usize] & (1 << (n & 63)) != 0
    }

    pub fn count_primes(&self) -> u64 {
        self.bits.iter().map(|w| w.count_ones() as u64).sum()
    }

    pub fn iter_primes(&self) -> impl Iterator<Item = u64> + '_ {
        (2..=self.limit).filter(move |&n| self.is_prime(n))
    }
}

/// Classic sieve of Eratosthenes up to `limit` (inclusive).
pub fn primes_up_to(limit: u64) -> Result<PrimeTable> {
    if limit < 2 {
        return Err(Error::InvalidRange(format!("limit {limit} is below 2")));
    }
    if limit > MAX_TABLE_LIMIT {
        return Err(Error::Capacity {
            requested: limit,
            maximum: MAX_TABLE_LIMIT,
        });
    }
    let words = (limit / 64 + 1) as usize;
    let mut bits = vec![!0u64; words];
    bits[0] &= !0b11; // 0 and 1
    let clear = |bits: &mut [u64], n: u64| bits[(n >> 6) as usize] &= !(1 << (n & 63));
    let mut p = 2u64;
    while p * p <= limit {
        if bits[(p >> 6) as usize] & (1 << (p & 63)) != 0 {
            let mut m = p * p;
            while m <= limit {
                clear(&mut bits, m);
                m += p;
            }
        }
        p += 1;
    }
    // clear bits above limit in the last word
    let top = limit & 63;
    if top != 63 {
        let last = bits.len() - 1;
        bits[last] &= (1u64 << (top + 1)) - 1;
    }
    Ok(PrimeTable { limit, bits })
}

/// #{n in [2, x] : n+h prime for every h}: the definition, taken literally.
pub fn count_tuples_direct(x: u64, pattern: &OffsetSet, table: &PrimeTable) -> Result<u64> {
    if x < 2 {
        return Err(Error::InvalidRange(format!("x = {x} is below 2")));
    }
    let needed = x
        .checked_add(pattern.max_offset())
        .ok_or_else(|| Error::Overflow(format!("{x} + max offset")))?;
    if table.limit < needed {
        return Err(Error::Coverage {
            needed_lo: 2,
            needed_hi: needed,
            have_lo: 0,
            have_hi: table.limit,
        });
    }
    let mut count = 0u64;
    for n in 2..=x {
        if pattern.offsets().iter().all(|&h| table.is_prime(n + h)) {
            count += 1;
        }
    }
    Ok(count)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn small_tables() {
        let t = primes_up_to(10).unwrap();
        let primes: Vec<u64> = t.iter_primes().collect();
        assert_eq!(primes, vec![2, 3, 5, 7]);
        assert_eq!(primes_up_to(30).unwrap().count_primes(), 10);
    }

    #[test]
    fn known_prime_counts() {
        assert_eq!(primes_up_to(100).unwrap().count_primes(), 25);
        assert_eq!(primes_up_to(1000).unwrap().count_primes(), 168);
        assert_eq!(primes_up_to(100_000).unwrap().count_primes(), 9592);
    }

    #[test]
    fn word_boundary_limits() {
        for limit in [63u64, 64, 65, 127, 128] {
            let t = primes_up_to(limit).unwrap();
            let by_trial = (2..=limit).filter(|&n| crate::tuples::is_prime_u64(n)).count();
            assert_eq!(t.count_primes(), by_trial as u64, "limit {limit}");
        }
    }

    #[test]
    fn rejects_bad_limits() {
        assert!(primes_up_to(1).is_err());
        assert!(matches!(
            primes_up_to(MAX_TABLE_LIMIT + 1),
            Err(Error::Capacity { .. })
        ));
    }

    #[test]
    fn direct_count_examples() {
        let t = primes_up_to(200).unwrap();
        let twin = OffsetSet::parse("0,2").unwrap();
        let one = OffsetSet::parse("0").unwrap();
        let cousin = OffsetSet::parse("0,4").unwrap();
        assert_eq!(count_tuples_direct(10, &twin, &t).unwrap(), 2);
        assert_eq!(count_tuples_direct(10, &one, &t).unwrap(), 4);
        // cousin pairs starting at n <= 100, ending with (97, 101)
        assert_eq!(count_tuples_direct(100, &cousin, &t).unwrap(), 9);
    }

    #[test]
    fn direct_count_needs_coverage() {
        let t = primes_up_to(100).unwrap();
        let twin = OffsetSet::parse("0,2").unwrap();
        assert!(matches!(
            count_tuples_direct(99, &twin, &t),
            Err(Error::Coverage { .. })
        ));
    }
}

//! Segmented sieve producing exact Möbius values and prime-power structure.
//!
//! For every n in a segment the sieve records μ(n) and, when n = p^ν, the
//! pair (p, ν). The quotient Λ(n)/log(n) then collapses to the exact
//! rational 1/ν, so the characteristic value −μ(n)·Λ(n)/log(n) is evaluated
//! in integer arithmetic: it is 1 at primes and 0 everywhere else, with no
//! floating point in the counting path.
//!
//! Marking strategy per segment: one pass over multiples of each base prime
//! p flips the Möbius sign and tracks the first distinct prime divisor, and
//! one pass per higher power p^j zeroes μ and accumulates the exponent. A
//! running product of the marked factors tells which entries still hide a
//! prime factor above √hi (exactly one, to the first power).

use num::rational::Ratio;

use crate::error::{Error, Result};

/// Default segment length (entries) used by scan configurations.
pub const DEFAULT_SEGMENT_LEN: u64 = 1 << 22;

/// Hard ceiling on a single segment's length.
pub const MAX_SEGMENT_LEN: u64 = 1 << 26;

/// Largest n any API accepts; keeps n + offset clear of u64 wrap-around.
pub const MAX_SUPPORTED: u64 = i64::MAX as u64;

/// Sentinel in the scratch base array: more than one distinct prime factor.
const MULTI: u64 = u64::MAX;

/// Exact arithmetic-function values over an inclusive range `[lo, hi]`.
///
/// Immutable once built; safe to share across threads.
#[derive(Debug, Clone)]
pub struct SieveSegment {
    lo: u64,
    hi: u64,
    mu: Vec<i8>,
    /// Base p of n = p^ν, or 0 when n is not a prime power.
    pp_base: Vec<u64>,
    /// Exponent ν of n = p^ν, or 0 when n is not a prime power.
    pp_exp: Vec<u8>,
}

impl SieveSegment {
    pub fn lo(&self) -> u64 {
        self.lo
    }

    pub fn hi(&self) -> u64 {
        self.hi
    }

    pub fn len(&self) -> usize {
        self.mu.len()
    }

    pub fn is_empty(&self) -> bool {
        false // lo <= hi is a construction invariant
    }

    #[inline]
    fn index(&self, n: u64) -> Result<usize> {
        if n < self.lo || n > self.hi {
            return Err(Error::OutOfRange {
                n,
                lo: self.lo,
                hi: self.hi,
            });
        }
        Ok((n - self.lo) as usize)
    }

    /// μ(n): 0 when n has a squared prime factor, else (−1)^(#prime factors).
    pub fn mobius(&self, n: u64) -> Result<i8> {
        Ok(self.mu[self.index(n)?])
    }

    /// `Some((p, ν))` iff n = p^ν.
    pub fn prime_power(&self, n: u64) -> Result<Option<(u64, u32)>> {
        let i = self.index(n)?;
        Ok(self.pair_at(i))
    }

    /// Λ(n)/log(n) as an exact rational: 1/ν when n = p^ν, else 0.
    pub fn von_mangoldt_ratio(&self, n: u64) -> Result<Ratio<u64>> {
        let i = self.index(n)?;
        Ok(match self.pp_exp[i] {
            0 => Ratio::from_integer(0),
            nu => Ratio::new(1, nu as u64),
        })
    }

    /// −μ(n)·Λ(n)/log(n), evaluated exactly; 1 iff n is prime, else 0.
    pub fn prime_indicator(&self, n: u64) -> Result<u64> {
        let i = self.index(n)?;
        Ok(self.indicator_at(i))
    }

    #[inline]
    pub(crate) fn mu_at(&self, i: usize) -> i8 {
        self.mu[i]
    }

    #[inline]
    pub(crate) fn exp_at(&self, i: usize) -> u8 {
        self.pp_exp[i]
    }

    pub(crate) fn pair_at(&self, i: usize) -> Option<(u64, u32)> {
        match self.pp_exp[i] {
            0 => None,
            nu => Some((self.pp_base[i], nu as u32)),
        }
    }

    #[inline]
    pub(crate) fn indicator_at(&self, i: usize) -> u64 {
        // μ(n) ≠ 0 on a prime power forces ν = 1, so −μ(n)·(1/ν) = −μ(n).
        if self.pp_exp[i] != 0 && self.mu[i] != 0 {
            debug_assert_eq!(self.pp_exp[i], 1);
            (-(self.mu[i] as i32)) as u64
        } else {
            0
        }
    }
}

/// Sieves `[lo, hi]`, generating its own base primes up to √hi.
pub fn sieve_segment(lo: u64, hi: u64) -> Result<SieveSegment> {
    let base = base_primes(hi.isqrt());
    sieve_segment_with(lo, hi, &base)
}

/// Sieves `[lo, hi]` with caller-provided base primes covering √hi.
pub(crate) fn sieve_segment_with(lo: u64, hi: u64, base: &[u64]) -> Result<SieveSegment> {
    if lo < 2 || lo > hi {
        return Err(Error::InvalidRange(format!(
            "segment [{lo}, {hi}] must satisfy 2 <= lo <= hi"
        )));
    }
    if hi > MAX_SUPPORTED {
        return Err(Error::InvalidRange(format!(
            "segment end {hi} exceeds supported maximum {MAX_SUPPORTED}"
        )));
    }
    let len = hi - lo + 1;
    if len > MAX_SEGMENT_LEN {
        return Err(Error::Capacity {
            requested: len,
            maximum: MAX_SEGMENT_LEN,
        });
    }
    let len = len as usize;
    let root = hi.isqrt();
    debug_assert!(base.last().copied().unwrap_or(0) >= root || root < 2 || {
        // base must contain every prime <= root
        base_primes(root).last() == base.iter().rev().find(|&&p| p <= root)
    });

    let mut mu = vec![1i8; len];
    let mut pp_base = vec![0u64; len];
    let mut pp_exp = vec![0u8; len];
    // Product of marked prime-power factors; equals n once fully factored.
    let mut marked = vec![1u64; len];

    for &p in base.iter().take_while(|&&p| p <= root) {
        let mut m = first_multiple(lo, p);
        while m <= hi {
            let i = (m - lo) as usize;
            mu[i] = -mu[i];
            marked[i] *= p;
            if pp_base[i] == 0 {
                pp_base[i] = p;
                pp_exp[i] = 1;
            } else if pp_base[i] != p {
                pp_base[i] = MULTI;
            }
            m += p;
        }
        let mut q = match p.checked_mul(p) {
            Some(q) if q <= hi => q,
            _ => continue,
        };
        loop {
            let mut m = first_multiple(lo, q);
            while m <= hi {
                let i = (m - lo) as usize;
                mu[i] = 0;
                marked[i] *= p;
                if pp_base[i] == p {
                    pp_exp[i] += 1;
                }
                m += q;
            }
            q = match q.checked_mul(p) {
                Some(next) if next <= hi => next,
                _ => break,
            };
        }
    }

    // Entries not fully factored keep exactly one prime above √hi, to the
    // first power (its square would exceed hi).
    for i in 0..len {
        let n = lo + i as u64;
        if marked[i] != n {
            mu[i] = -mu[i];
            if pp_base[i] == 0 {
                pp_base[i] = n; // marked[i] == 1, so n itself is prime
                pp_exp[i] = 1;
            } else {
                pp_base[i] = MULTI;
            }
        }
    }
    for i in 0..len {
        if pp_base[i] == MULTI {
            pp_base[i] = 0;
            pp_exp[i] = 0;
        }
    }

    Ok(SieveSegment {
        lo,
        hi,
        mu,
        pp_base,
        pp_exp,
    })
}

#[inline]
fn first_multiple(lo: u64, p: u64) -> u64 {
    lo.div_ceil(p) * p
}

/// All primes up to `limit` (plain Eratosthenes; internal to this crate's
/// sieving and the singular-series product, separate from the oracle path).
pub(crate) fn base_primes(limit: u64) -> Vec<u64> {
    if limit < 2 {
        return Vec::new();
    }
    let n = limit as usize;
    let mut composite = vec![false; n + 1];
    let mut primes = Vec::new();
    for p in 2..=n {
        if !composite[p] {
            primes.push(p as u64);
            let mut m = p * p;
            while m <= n {
                composite[m] = true;
                m += p;
            }
        }
    }
    primes
}

#[cfg(test)]
mod tests {
    use super::*;

    /// Trial-division reference for μ and prime-power structure.
    fn slow_mu_pp(n: u64) -> (i8, Option<(u64, u32)>) {
        let mut m = n;
        let mut mu = 1i8;
        let mut factors: Vec<(u64, u32)> = Vec::new();
        let mut d = 2;
        while d * d <= m {
            if m % d == 0 {
                let mut e = 0;
                while m % d == 0 {
                    m /= d;
                    e += 1;
                }
                factors.push((d, e));
                mu = if e > 1 { 0 } else { -mu };
            }
            d += 1;
        }
        if m > 1 {
            factors.push((m, 1));
            mu = -mu;
        }
        let pp = if factors.len() == 1 {
            Some(factors[0])
        } else {
            None
        };
        (mu, pp)
    }

    #[test]
    fn small_range_mobius_values() {
        let seg = sieve_segment(2, 10).unwrap();
        let expected = [-1, -1, 0, -1, 1, -1, 0, 0, 1];
        for (n, &want) in (2..=10).zip(expected.iter()) {
            assert_eq!(seg.mobius(n).unwrap(), want, "mu({n})");
        }
    }

    #[test]
    fn small_range_prime_powers() {
        let seg = sieve_segment(2, 10).unwrap();
        let expected = [
            (2, Some((2, 1))),
            (3, Some((3, 1))),
            (4, Some((2, 2))),
            (5, Some((5, 1))),
            (6, None),
            (7, Some((7, 1))),
            (8, Some((2, 3))),
            (9, Some((3, 2))),
            (10, None),
        ];
        for (n, want) in expected {
            assert_eq!(seg.prime_power(n).unwrap(), want, "pp({n})");
        }
    }

    #[test]
    fn von_mangoldt_ratio_values() {
        let seg = sieve_segment(2, 10).unwrap();
        assert_eq!(seg.von_mangoldt_ratio(8).unwrap(), Ratio::new(1, 3));
        assert_eq!(seg.von_mangoldt_ratio(6).unwrap(), Ratio::from_integer(0));
        assert_eq!(seg.von_mangoldt_ratio(7).unwrap(), Ratio::from_integer(1));
    }

    #[test]
    fn prime_indicator_values() {
        let seg = sieve_segment(2, 10).unwrap();
        assert_eq!(seg.prime_indicator(2).unwrap(), 1);
        assert_eq!(seg.prime_indicator(4).unwrap(), 0);
        assert_eq!(seg.prime_indicator(9).unwrap(), 0);
    }

    #[test]
    fn out_of_range_lookups_fail() {
        let seg = sieve_segment(10, 20).unwrap();
        assert!(matches!(
            seg.mobius(9),
            Err(Error::OutOfRange { n: 9, .. })
        ));
        assert!(matches!(seg.von_mangoldt_ratio(21), Err(_)));
    }

    #[test]
    fn invalid_ranges_rejected() {
        assert!(sieve_segment(1, 10).is_err());
        assert!(sieve_segment(10, 9).is_err());
    }

    #[test]
    fn matches_trial_division_exhaustively() {
        let seg = sieve_segment(2, 5000).unwrap();
        for n in 2..=5000 {
            let (mu, pp) = slow_mu_pp(n);
            assert_eq!(seg.mobius(n).unwrap(), mu, "mu({n})");
            assert_eq!(seg.prime_power(n).unwrap(), pp, "pp({n})");
        }
    }

    #[test]
    fn segment_boundaries_match_whole_range() {
        let whole = sieve_segment(2, 3000).unwrap();
        for (lo, hi) in [(2, 1000), (1001, 2000), (2001, 3000)] {
            let part = sieve_segment(lo, hi).unwrap();
            for n in lo..=hi {
                assert_eq!(part.mobius(n).unwrap(), whole.mobius(n).unwrap());
                assert_eq!(part.prime_power(n).unwrap(), whole.prime_power(n).unwrap());
            }
        }
    }

    #[test]
    fn high_segment_matches_monolithic() {
        let lo = 1_000_000;
        let hi = 1_100_000;
        let seg = sieve_segment(lo, hi).unwrap();
        let whole = sieve_segment(2, hi).unwrap();
        for n in lo..=hi {
            assert_eq!(seg.mobius(n).unwrap(), whole.mobius(n).unwrap(), "mu({n})");
            assert_eq!(
                seg.prime_power(n).unwrap(),
                whole.prime_power(n).unwrap(),
                "pp({n})"
            );
        }
    }

    #[test]
    fn mobius_nonzero_on_prime_power_forces_exponent_one() {
        let seg = sieve_segment(2, 20000).unwrap();
        for n in 2..=20000u64 {
            if seg.mobius(n).unwrap() != 0 {
                if let Some((p, nu)) = seg.prime_power(n).unwrap() {
                    assert_eq!(nu, 1);
                    assert_eq!(p, n);
                }
            }
            if let Some((p, nu)) = seg.prime_power(n).unwrap() {
                assert_eq!(p.pow(nu), n, "pp({n}) reconstructs n");
            }
        }
    }

    #[test]
    fn base_primes_small() {
        assert_eq!(base_primes(1), vec![]);
        assert_eq!(base_primes(2), vec![2]);
        assert_eq!(
            base_primes(30),
            vec![2, 3, 5, 7, 11, 13, 17, 19, 23, 29]
        );
        assert_eq!(base_primes(100).len(), 25);
    }

    mod props {
        use super::*;
        use proptest::prelude::*;

        proptest! {
            #[test]
            fn random_windows_match_trial_division(lo in 2u64..200_000, span in 0u64..300) {
                let hi = lo + span;
                let seg = sieve_segment(lo, hi).unwrap();
                for n in lo..=hi {
                    let (mu, pp) = slow_mu_pp(n);
                    prop_assert_eq!(seg.mobius(n).unwrap(), mu);
                    prop_assert_eq!(seg.prime_power(n).unwrap(), pp);
                }
            }

            #[test]
            fn characteristic_product_is_zero_or_minus_one(n in 2u64..500_000) {
                let seg = sieve_segment(n, n).unwrap();
                let v = seg.von_mangoldt_ratio(n).unwrap();
                let nu = *v.denom();
                prop_assert!(*v.numer() == 0 || (*v.numer() == 1 && nu >= 1));
                // μ(n)·Λ(n)/log(n) is 0 everywhere except primes, where it is −1
                let mu = seg.mobius(n).unwrap();
                let product_is_minus_one = mu == -1 && v == Ratio::from_integer(1);
                let product_is_zero = mu == 0 || *v.numer() == 0;
                prop_assert!(product_is_minus_one || product_is_zero);
            }
        }
    }
}

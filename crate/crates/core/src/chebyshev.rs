//! Tuple analogs of the Chebyshev functions.
//!
//! With n_(k) the geometric mean of (n, n+h_2, …, n+h_k):
//!
//! * ψ sums the prime-power weight ∏ 1/ν_j times log(n_(k)) over all n
//!   whose tuple members are prime powers;
//! * θ keeps only the n whose members are all prime (the Möbius factor
//!   annihilates the rest), so θ ≤ ψ pointwise.
//!
//! For k = 1 both collapse to the classical ψ(x) and θ(x) exactly, since
//! (1/ν)·log(p^ν) = log p.
//!
//! Floating sums are compensated and folded in fixed segment order; exact
//! quantities (counts, prime-power weights) never touch a float until
//! rendered.

use num::rational::Ratio;
use num::BigRational;

use crate::error::{Error, Result};
use crate::kahan::KahanSum;
use crate::oracle::PrimeTable;
use crate::scan::{self, Depth, ScanConfig};
use crate::sieve::{self, SieveSegment, MAX_SUPPORTED};
use crate::tuples::OffsetSet;

/// θ, ψ and the exact prime-power weight sum at one cut-off.
#[derive(Debug, Clone)]
pub struct ChebyshevResult {
    pub offsets: OffsetSet,
    pub x: u64,
    /// θ_(k)(x) in natural-log units.
    pub theta: f64,
    /// ψ_(k)(x) in natural-log units; always ≥ theta.
    pub psi: f64,
    /// Σ ∏ 1/ν_j over prime-power tuples up to x, kept exact.
    pub pp_weight: BigRational,
}

impl ChebyshevResult {
    pub fn pp_weight_f64(&self) -> f64 {
        use num::ToPrimitive;
        self.pp_weight.to_f64().unwrap_or(f64::NAN)
    }
}

/// The weight ∏_j 1/ν_j when every n+h is a prime power p^ν, else 0.
///
/// `seg` must cover [n, n + max(H)].
pub fn prime_power_weight(n: u64, pattern: &OffsetSet, seg: &SieveSegment) -> Result<Ratio<u64>> {
    if n < 2 {
        return Err(Error::InvalidRange(format!("n = {n} is below 2")));
    }
    let needed_hi = n
        .checked_add(pattern.max_offset())
        .ok_or_else(|| Error::Overflow(format!("{n} + max offset")))?;
    if n < seg.lo() || needed_hi > seg.hi() {
        return Err(Error::Coverage {
            needed_lo: n,
            needed_hi,
            have_lo: seg.lo(),
            have_hi: seg.hi(),
        });
    }
    let v = scan::point_value(seg, (n - seg.lo()) as usize, pattern.offsets())?;
    Ok(match v.weight_denom {
        Some(d) => Ratio::new(1, d),
        None => Ratio::from_integer(0),
    })
}

/// log(n_(k)) = (1/k) Σ_j ln(n + h_j), in double precision.
pub fn log_geometric_mean(n: u64, pattern: &OffsetSet) -> f64 {
    let mut sum = 0.0;
    for &h in pattern.offsets() {
        sum += ((n + h) as f64).ln();
    }
    sum / pattern.k() as f64
}

/// ψ_(k)(x) = Σ_{n=2}^{x} (∏ 1/ν_j) · log(n_(k)) over prime-power tuples.
pub fn psi(x: u64, pattern: &OffsetSet, cfg: &ScanConfig) -> Result<f64> {
    Ok(chebyshev_series(&[x], pattern, cfg)?.pop().unwrap().psi)
}

/// θ_(k)(x) = Σ_{n=2}^{x} χ(n) · log(n_(k)) over prime tuples.
pub fn theta(x: u64, pattern: &OffsetSet, cfg: &ScanConfig) -> Result<f64> {
    Ok(chebyshev_series(&[x], pattern, cfg)?.pop().unwrap().theta)
}

/// Σ_{n=2}^{x} ∏ 1/ν_j as an exact rational (the weighted count of
/// prime-power tuples).
pub fn prime_power_weight_sum(
    x: u64,
    pattern: &OffsetSet,
    cfg: &ScanConfig,
) -> Result<BigRational> {
    Ok(chebyshev_series(&[x], pattern, cfg)?
        .pop()
        .unwrap()
        .pp_weight)
}

/// θ, ψ, tuple count and weight sum at every checkpoint in one pass.
pub fn chebyshev_series(
    checkpoints: &[u64],
    pattern: &OffsetSet,
    cfg: &ScanConfig,
) -> Result<Vec<ChebyshevResult>> {
    let snaps = scan::scan(checkpoints, pattern, cfg, Depth::Chebyshev)?;
    Ok(snaps
        .into_iter()
        .map(|s| ChebyshevResult {
            offsets: pattern.clone(),
            x: s.x,
            theta: s.theta,
            psi: s.psi,
            pp_weight: weight_sum_to_rational(&s.weights),
        })
        .collect())
}

pub(crate) fn weight_sum_to_rational(weights: &[(u64, u64)]) -> BigRational {
    let mut total = BigRational::from_integer(0.into());
    for &(denom, count) in weights {
        total += BigRational::new(count.into(), denom.into());
    }
    total
}

/// θ_(2)(x) by direct enumeration of prime doubles (p, p+2i) against an
/// independent prime table: ½ Σ ln(p(p+2i)).
pub fn theta_double_direct(x: u64, i: u64, table: &PrimeTable) -> Result<f64> {
    if x < 2 {
        return Err(Error::InvalidRange(format!("x = {x} is below 2")));
    }
    if i < 1 {
        return Err(Error::InvalidArgument("i must be >= 1".into()));
    }
    let gap = 2 * i;
    if table.limit() < x + gap {
        return Err(Error::Coverage {
            needed_lo: 2,
            needed_hi: x + gap,
            have_lo: 0,
            have_hi: table.limit(),
        });
    }
    let mut sum = KahanSum::new();
    for p in 2..=x {
        if table.is_prime(p) && table.is_prime(p + gap) {
            sum.add(0.5 * ((p as f64) * ((p + gap) as f64)).ln());
        }
    }
    Ok(sum.value())
}

/// Averaged prime-double functions at one cut-off: the arithmetic means of
/// θ_(2)(x, {0,2i}) and π_(2)(x, {0,2i}) over i = 2 ..= ⌊(x−2)/2⌋.
#[derive(Debug, Clone, Copy)]
pub struct AveragedDoubles {
    pub x: u64,
    /// Mean of θ_(2)(x, {0,2i}) over the index range.
    pub theta_mean: f64,
    /// Mean of π_(2)(x, {0,2i}) over the index range.
    pub count_mean: f64,
}

/// Computes the averaged double functions at each checkpoint (ascending,
/// minimum 8 so the index range is non-empty).
///
/// Summation order is exchanged: for each prime p ≤ x the partners
/// q = p + 2i range over the primes in (p+3, p + 2·i_max], so one pass over
/// the primes up to x + 2·i_max replaces ~x/2 per-pattern scans. The
/// exchange is exact for the counts and reorders only the θ float sum.
pub fn averaged_doubles(checkpoints: &[u64], cfg: &ScanConfig) -> Result<Vec<AveragedDoubles>> {
    if checkpoints.is_empty() {
        return Err(Error::InvalidArgument("no checkpoints given".into()));
    }
    for pair in checkpoints.windows(2) {
        if pair[0] >= pair[1] {
            return Err(Error::InvalidArgument(
                "checkpoints must be strictly ascending".into(),
            ));
        }
    }
    if checkpoints[0] < 8 {
        return Err(Error::InvalidRange(format!(
            "averaging needs x >= 8, got {}",
            checkpoints[0]
        )));
    }
    let x_max = *checkpoints.last().unwrap();
    let i_max_of = |x: u64| (x - 2) / 2;
    let reach = x_max + 2 * i_max_of(x_max);
    if reach > MAX_SUPPORTED {
        return Err(Error::InvalidRange(format!(
            "averaging reach {reach} exceeds supported maximum {MAX_SUPPORTED}"
        )));
    }

    // Primes up to `reach` via the characteristic function, with a
    // compensated prefix of their logarithms.
    let mut primes: Vec<u64> = Vec::new();
    let mut theta_prefix: Vec<f64> = Vec::new();
    let mut acc = KahanSum::new();
    let base = sieve::base_primes(reach.isqrt());
    let seg_len = cfg.segment_size.max(1);
    let mut lo = 2u64;
    while lo <= reach {
        let hi = (lo + seg_len - 1).min(reach);
        let seg = sieve::sieve_segment_with(lo, hi, &base)?;
        for n in lo..=hi {
            if seg.prime_indicator(n)? == 1 {
                acc.add((n as f64).ln());
                primes.push(n);
                theta_prefix.push(acc.value());
            }
        }
        lo = hi + 1;
    }

    // Θ(m) and π(m) over the collected primes.
    let pi_of = |m: u64| primes.partition_point(|&p| p <= m);
    let theta_of = |m: u64| match primes.partition_point(|&p| p <= m) {
        0 => 0.0,
        j => theta_prefix[j - 1],
    };

    let mut out = Vec::with_capacity(checkpoints.len());
    for &x in checkpoints {
        let i_max = i_max_of(x);
        let denominator = (i_max - 1) as f64;
        let mut theta_sum = KahanSum::new();
        let mut count_sum = 0u64;
        // p = 2 pairs only with even q, so odd primes alone contribute.
        for &p in primes.iter().take(pi_of(x)).skip(1) {
            let lo_q = p + 3;
            let hi_q = p + 2 * i_max;
            let c = (pi_of(hi_q) - pi_of(lo_q)) as u64;
            if c > 0 {
                count_sum += c;
                theta_sum.add(c as f64 * (p as f64).ln());
                theta_sum.add(theta_of(hi_q) - theta_of(lo_q));
            }
        }
        out.push(AveragedDoubles {
            x,
            theta_mean: 0.5 * theta_sum.value() / denominator,
            count_mean: count_sum as f64 / denominator,
        });
    }
    Ok(out)
}

/// Mean of θ_(2)(x, {0,2i}) over i = 2 ..= ⌊(x−2)/2⌋; requires x ≥ 8.
pub fn averaged_theta_double(x: u64, cfg: &ScanConfig) -> Result<f64> {
    Ok(averaged_doubles(&[x], cfg)?[0].theta_mean)
}

/// Mean of π_(2)(x, {0,2i}) over the same index range; requires x ≥ 8.
pub fn averaged_pair_count(x: u64, cfg: &ScanConfig) -> Result<f64> {
    Ok(averaged_doubles(&[x], cfg)?[0].count_mean)
}

//! Empirical comparison of π_(k)(x) with c_(k)·x/log^k(x), taking the
//! truncated Hardy–Littlewood singular series as the baseline constant.

use crate::error::{Error, Result};
use crate::scan::ScanConfig;
use crate::sieve;
use crate::summatory;
use crate::tuples::OffsetSet;

/// Truncated Euler product ∏_{p ≤ P} (1 − ν_p(H)/p)·(1 − 1/p)^{−k} with a
/// convergence diagnostic instead of an analytic tail bound.
#[derive(Debug, Clone)]
pub struct SingularSeriesEstimate {
    pub offsets: OffsetSet,
    /// Zero exactly when some prime has all residues covered.
    pub value: f64,
    pub prime_limit: u64,
    /// |value(prime_limit) − value(prime_limit/2)|.
    pub tail_gap: f64,
}

/// Evaluates the singular series for `pattern`, truncated at `prime_limit`.
pub fn singular_series(pattern: &OffsetSet, prime_limit: u64) -> Result<SingularSeriesEstimate> {
    if prime_limit < 2 {
        return Err(Error::InvalidArgument(format!(
            "prime_limit {prime_limit} is below 2"
        )));
    }
    let k = pattern.k() as i32;
    let half = prime_limit / 2;
    let mut value = 1.0f64;
    let mut value_at_half = 1.0f64;
    let mut seen_half = half < 2;
    for p in sieve::base_primes(prime_limit) {
        if !seen_half && p > half {
            value_at_half = value;
            seen_half = true;
        }
        let nu = pattern.residue_coverage_of_prime(p) as u64;
        if nu == p {
            value = 0.0;
            continue;
        }
        let pf = p as f64;
        value *= (1.0 - nu as f64 / pf) * (1.0 - 1.0 / pf).powi(-k);
    }
    if !seen_half {
        value_at_half = value;
    }
    Ok(SingularSeriesEstimate {
        offsets: pattern.clone(),
        value,
        prime_limit,
        tail_gap: (value - value_at_half).abs(),
    })
}

/// π_(k)(x)·(ln x)^k / x — the constant the count implies at finite x.
pub fn empirical_constant(x: u64, pattern: &OffsetSet, cfg: &ScanConfig) -> Result<f64> {
    if x < 3 {
        return Err(Error::InvalidRange(format!("x = {x} is below 3")));
    }
    let count = summatory::count_tuples(x, pattern, cfg)?;
    Ok(empirical_from_count(x, count, pattern.k()))
}

pub(crate) fn empirical_from_count(x: u64, count: u64, k: usize) -> f64 {
    count as f64 * (x as f64).ln().powi(k as i32) / x as f64
}

/// One row of the asymptotic comparison table.
#[derive(Debug, Clone)]
pub struct AsymptoticRow {
    pub x: u64,
    pub count: u64,
    pub empirical: f64,
    pub singular: f64,
    /// empirical / singular; `None` when the singular series vanishes.
    pub ratio: Option<f64>,
}

/// Counts once over the checkpoint ladder and renders the comparison
/// against the truncated singular series.
pub fn asymptotic_report(
    checkpoints: &[u64],
    pattern: &OffsetSet,
    prime_limit: u64,
    cfg: &ScanConfig,
) -> Result<Vec<AsymptoticRow>> {
    if checkpoints.first().is_some_and(|&x| x < 3) {
        return Err(Error::InvalidRange("checkpoints must be >= 3".into()));
    }
    let series = summatory::count_tuples_series(checkpoints, pattern, cfg)?;
    let constant = singular_series(pattern, prime_limit)?;
    Ok(series
        .checkpoints
        .into_iter()
        .map(|(x, count)| {
            let empirical = empirical_from_count(x, count, pattern.k());
            let ratio = (constant.value != 0.0).then(|| empirical / constant.value);
            AsymptoticRow {
                x,
                count,
                empirical,
                singular: constant.value,
                ratio,
            }
        })
        .collect())
}

#[cfg(test)]
mod tests {
    use super::*;

    fn cfg() -> ScanConfig {
        ScanConfig::default()
    }

    #[test]
    fn twin_constant_matches_known_value() {
        let twin = OffsetSet::parse("0,2").unwrap();
        let est = singular_series(&twin, 1_000_000).unwrap();
        // twice the twin-prime constant, 2 * 0.6601618158...
        assert!((est.value - 1.3203236).abs() < 1e-3, "{}", est.value);
        assert!(est.tail_gap < 1e-5);
    }

    #[test]
    fn covered_prime_forces_zero() {
        let h = OffsetSet::parse("0,2,4").unwrap();
        for limit in [3u64, 100, 10_000] {
            let est = singular_series(&h, limit).unwrap();
            assert_eq!(est.value, 0.0);
        }
    }

    #[test]
    fn single_pattern_telescopes_to_one() {
        let one = OffsetSet::parse("0").unwrap();
        let est = singular_series(&one, 100_000).unwrap();
        assert!((est.value - 1.0).abs() < 1e-9, "{}", est.value);
    }

    #[test]
    fn tail_gap_shrinks_as_limit_doubles() {
        let pattern = OffsetSet::parse("0,2,6").unwrap();
        let gaps: Vec<f64> = [1_000u64, 2_000, 4_000, 8_000, 16_000]
            .iter()
            .map(|&l| singular_series(&pattern, l).unwrap().tail_gap)
            .collect();
        for pair in gaps.windows(2) {
            assert!(pair[1] < pair[0], "{gaps:?}");
        }
    }

    #[test]
    fn rejects_tiny_prime_limit() {
        let twin = OffsetSet::parse("0,2").unwrap();
        assert!(singular_series(&twin, 1).is_err());
    }

    #[test]
    fn empirical_constant_round_trips_the_count() {
        let twin = OffsetSet::parse("0,2").unwrap();
        for x in [100u64, 5_000, 100_000] {
            let c = empirical_constant(x, &twin, &cfg()).unwrap();
            let back = c * x as f64 / (x as f64).ln().powi(2);
            let count = summatory::count_tuples(x, &twin, &cfg()).unwrap();
            assert_eq!(back.round() as u64, count);
            assert!((back - count as f64).abs() < 1e-9 * count.max(1) as f64);
        }
    }

    #[test]
    fn empirical_constant_rejects_small_x() {
        let twin = OffsetSet::parse("0,2").unwrap();
        assert!(empirical_constant(2, &twin, &cfg()).is_err());
    }

    #[test]
    fn report_renders_missing_ratio_for_inadmissible_patterns() {
        let h = OffsetSet::parse("0,2,4").unwrap();
        let rows = asymptotic_report(&[100, 1000], &h, 1000, &cfg()).unwrap();
        for row in &rows {
            assert_eq!(row.singular, 0.0);
            assert!(row.ratio.is_none());
            assert_eq!(row.count, 1); // only (3,5,7)
        }
    }

    #[test]
    fn report_rows_are_consistent() {
        let twin = OffsetSet::parse("0,2").unwrap();
        let rows = asymptotic_report(&[1_000, 10_000], &twin, 100_000, &cfg()).unwrap();
        assert_eq!(rows.len(), 2);
        for row in &rows {
            let want = empirical_from_count(row.x, row.count, 2);
            assert_eq!(row.empirical, want);
            let ratio = row.ratio.unwrap();
            assert!((ratio - row.empirical / row.singular).abs() < 1e-15);
        }
    }
}

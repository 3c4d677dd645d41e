//! Exact tuple counting: π_(k)(x) as a sum of characteristic values.
//!
//! The counting convention is the literal sum: the index n runs over
//! [2, x] and tuple members n+h may exceed x, so the sieve must cover
//! [2, x + max(H)]. Everything here is integer arithmetic; the
//! characteristic value is exact, so counts are exact.

use crate::error::{Error, Result};
use crate::scan::{self, Depth, ScanConfig};
use crate::sieve::SieveSegment;
use crate::tuples::OffsetSet;

/// Which n are counted at cut-off x.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum CountConvention {
    /// n ≤ x starts the tuple; members n+h may exceed x.
    StartInRange,
}

/// Checkpointed exact counts for one pattern.
#[derive(Debug, Clone)]
pub struct TupleCountResult {
    pub offsets: OffsetSet,
    /// (x, count) pairs in checkpoint order; counts are non-decreasing.
    pub checkpoints: Vec<(u64, u64)>,
    pub convention: CountConvention,
}

/// The tuple characteristic value at n: (−1)^k ∏ μ(n+h) ∏ Λ(n+h)/log(n+h),
/// evaluated exactly. 1 iff every n+h is prime, else 0.
///
/// `seg` must cover [n, n + max(H)].
pub fn tuple_indicator(n: u64, pattern: &OffsetSet, seg: &SieveSegment) -> Result<u64> {
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
    Ok(v.indicator)
}

/// π_(k)(x): the number of n in [2, x] with every n+h prime.
pub fn count_tuples(x: u64, pattern: &OffsetSet, cfg: &ScanConfig) -> Result<u64> {
    if x < 2 {
        return Err(Error::InvalidRange(format!("x = {x} is below 2")));
    }
    let snaps = scan::scan(&[x], pattern, cfg, Depth::CountOnly)?;
    Ok(snaps[0].count)
}

/// Counts at every checkpoint in one pass over the segments.
///
/// `checkpoints` must be strictly ascending with minimum ≥ 2.
pub fn count_tuples_series(
    checkpoints: &[u64],
    pattern: &OffsetSet,
    cfg: &ScanConfig,
) -> Result<TupleCountResult> {
    let snaps = scan::scan(checkpoints, pattern, cfg, Depth::CountOnly)?;
    Ok(TupleCountResult {
        offsets: pattern.clone(),
        checkpoints: snaps.into_iter().map(|s| (s.x, s.count)).collect(),
        convention: CountConvention::StartInRange,
    })
}

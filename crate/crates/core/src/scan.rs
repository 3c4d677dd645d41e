//! Segment-parallel evaluation of the summatory functions.
//!
//! The index range `[2, x]` is cut into fixed-size segments. Each segment is
//! an independent work unit: it sieves its own (slightly extended) window,
//! walks n in order, and produces an exact partial count, compensated θ/ψ
//! partials, prime-power weight tallies, and snapshots at any checkpoints it
//! contains. Partials are then folded in segment order, so the result is a
//! function of the segment size alone — never of the number of worker
//! threads.

use std::sync::atomic::{AtomicUsize, Ordering};
use std::sync::mpsc;

use crate::chebyshev::log_geometric_mean;
use crate::error::{Error, Result};
use crate::kahan::KahanSum;
use crate::sieve::{self, SieveSegment, DEFAULT_SEGMENT_LEN, MAX_SUPPORTED};
use crate::tuples::OffsetSet;

/// Parallelism and segmentation knobs shared by all scanning entry points.
///
/// The library never decides a thread count on its own; callers own the
/// scheduling policy and pass the degree down.
#[derive(Debug, Clone)]
pub struct ScanConfig {
    /// Entries per segment. The default (2^22) keeps the per-segment tables
    /// cache- and memory-friendly.
    pub segment_size: u64,
    /// Worker threads; 1 means fully sequential.
    pub threads: usize,
}

impl Default for ScanConfig {
    fn default() -> Self {
        Self {
            segment_size: DEFAULT_SEGMENT_LEN,
            threads: 1,
        }
    }
}

impl ScanConfig {
    pub fn with_threads(threads: usize) -> Self {
        Self {
            threads,
            ..Self::default()
        }
    }

    fn validate(&self) -> Result<()> {
        if self.segment_size == 0 {
            return Err(Error::InvalidArgument("segment_size must be >= 1".into()));
        }
        if self.segment_size > sieve::MAX_SEGMENT_LEN {
            return Err(Error::Capacity {
                requested: self.segment_size,
                maximum: sieve::MAX_SEGMENT_LEN,
            });
        }
        if self.threads == 0 {
            return Err(Error::InvalidArgument("threads must be >= 1".into()));
        }
        Ok(())
    }
}

/// How much per-n work a scan performs.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub(crate) enum Depth {
    CountOnly,
    Chebyshev,
}

/// Running totals at one checkpoint.
#[derive(Debug, Clone)]
pub(crate) struct Snapshot {
    pub x: u64,
    pub count: u64,
    pub theta: f64,
    pub psi: f64,
    /// (denominator, multiplicity) pairs: the prime-power weight sum is
    /// Σ multiplicity/denominator, kept exact until rendered.
    pub weights: Vec<(u64, u64)>,
}

/// Sorted (denominator → multiplicity) tally of prime-power tuple weights.
#[derive(Debug, Clone, Default)]
struct WeightBag(Vec<(u64, u64)>);

impl WeightBag {
    #[inline]
    fn bump(&mut self, denom: u64) {
        match self.0.binary_search_by_key(&denom, |e| e.0) {
            Ok(i) => self.0[i].1 += 1,
            Err(i) => self.0.insert(i, (denom, 1)),
        }
    }

    fn merge(&mut self, other: &[(u64, u64)]) {
        for &(d, c) in other {
            match self.0.binary_search_by_key(&d, |e| e.0) {
                Ok(i) => self.0[i].1 += c,
                Err(i) => self.0.insert(i, (d, c)),
            }
        }
    }
}

/// Exact per-point evaluation shared by the public indicator/weight
/// operations and the bulk scanner.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub(crate) struct PointValue {
    /// (−1)^k ∏ μ(n+h) · ∏ 1/ν(n+h): always 0 or 1.
    pub indicator: u64,
    /// ∏ ν(n+h) when every n+h is a prime power (the weight is its
    /// reciprocal), `None` when the weight vanishes.
    pub weight_denom: Option<u64>,
}

/// Evaluates the characteristic product at `n = seg.lo() + i0`.
///
/// The Λ factors restrict to prime powers, so a single missing prime power
/// zeroes both the weight and the indicator; a zero μ zeroes only the
/// indicator.
pub(crate) fn point_value(seg: &SieveSegment, i0: usize, offsets: &[u64]) -> Result<PointValue> {
    let mut sign: i32 = if offsets.len() % 2 == 0 { 1 } else { -1 };
    let mut denom: u64 = 1;
    for &h in offsets {
        let i = i0 + h as usize;
        let nu = seg.exp_at(i);
        if nu == 0 {
            return Ok(PointValue {
                indicator: 0,
                weight_denom: None,
            });
        }
        denom = denom
            .checked_mul(nu as u64)
            .ok_or_else(|| Error::Overflow("prime-power exponent product".into()))?;
        sign *= seg.mu_at(i) as i32;
    }
    let indicator = if sign == 0 {
        0
    } else {
        // all factors are prime powers with μ ≠ 0, hence primes: the signs
        // cancel (−1)^k and every ν is 1
        debug_assert!(sign == 1 && denom == 1);
        1
    };
    Ok(PointValue {
        indicator,
        weight_denom: Some(denom),
    })
}

/// Output of one segment: totals plus snapshots at interior checkpoints.
struct SegmentPartial {
    count: u64,
    theta: KahanSum,
    psi: KahanSum,
    weights: WeightBag,
    marks: Vec<Mark>,
}

struct Mark {
    checkpoint: usize,
    count: u64,
    theta: KahanSum,
    psi: KahanSum,
    weights: Vec<(u64, u64)>,
}

/// Evaluates the summatory functions for `pattern` at every checkpoint.
///
/// `checkpoints` must be strictly ascending with minimum ≥ 2.
pub(crate) fn scan(
    checkpoints: &[u64],
    pattern: &OffsetSet,
    cfg: &ScanConfig,
    depth: Depth,
) -> Result<Vec<Snapshot>> {
    cfg.validate()?;
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
    let x_max = *checkpoints.last().unwrap();
    if checkpoints[0] < 2 {
        return Err(Error::InvalidRange(format!(
            "checkpoint {} is below 2",
            checkpoints[0]
        )));
    }
    let hmax = pattern.max_offset();
    if x_max > MAX_SUPPORTED - hmax {
        return Err(Error::InvalidRange(format!(
            "{x_max} + max offset {hmax} exceeds supported maximum {MAX_SUPPORTED}"
        )));
    }

    let seg_len = cfg.segment_size;
    let n_segments = ((x_max - 2) / seg_len + 1) as usize;
    let base = sieve::base_primes((x_max + hmax).isqrt());
    let bounds = |s: usize| -> (u64, u64) {
        let lo = 2 + s as u64 * seg_len;
        let hi = (lo + seg_len - 1).min(x_max);
        (lo, hi)
    };

    // Checkpoints that fall inside each segment, as (checkpoint index, x).
    let marks_for = |s: usize| -> Vec<(usize, u64)> {
        let (lo, hi) = bounds(s);
        let start = checkpoints.partition_point(|&c| c < lo);
        let end = checkpoints.partition_point(|&c| c <= hi);
        (start..end).map(|i| (i, checkpoints[i])).collect()
    };

    let run_segment = |s: usize| -> Result<SegmentPartial> {
        let (lo, hi) = bounds(s);
        eval_segment(lo, hi, pattern, &base, &marks_for(s), depth)
    };

    let workers = cfg.threads.min(n_segments);
    let partials: Vec<SegmentPartial> = if workers <= 1 {
        let mut v = Vec::with_capacity(n_segments);
        for s in 0..n_segments {
            v.push(run_segment(s)?);
        }
        v
    } else {
        let next = AtomicUsize::new(0);
        let (tx, rx) = mpsc::channel();
        std::thread::scope(|scope| {
            for _ in 0..workers {
                let tx = tx.clone();
                let next = &next;
                let run_segment = &run_segment;
                scope.spawn(move || loop {
                    let s = next.fetch_add(1, Ordering::Relaxed);
                    if s >= n_segments {
                        break;
                    }
                    if tx.send((s, run_segment(s))).is_err() {
                        break;
                    }
                });
            }
        });
        drop(tx);
        let mut slots: Vec<Option<Result<SegmentPartial>>> =
            (0..n_segments).map(|_| None).collect();
        for (s, partial) in rx {
            slots[s] = Some(partial);
        }
        let mut v = Vec::with_capacity(n_segments);
        for slot in slots {
            v.push(slot.expect("every segment index is dispatched exactly once")?);
        }
        v
    };

    // Ordered fold: identical for any worker count.
    let mut running_count = 0u64;
    let mut running_theta = KahanSum::new();
    let mut running_psi = KahanSum::new();
    let mut running_weights = WeightBag::default();
    let mut out: Vec<Snapshot> = Vec::with_capacity(checkpoints.len());
    for partial in partials {
        for mark in &partial.marks {
            let mut theta = running_theta;
            theta.merge(mark.theta);
            let mut psi = running_psi;
            psi.merge(mark.psi);
            let mut weights = running_weights.clone();
            weights.merge(&mark.weights);
            out.push(Snapshot {
                x: checkpoints[mark.checkpoint],
                count: running_count + mark.count,
                theta: theta.value(),
                psi: psi.value(),
                weights: weights.0,
            });
        }
        running_count += partial.count;
        running_theta.merge(partial.theta);
        running_psi.merge(partial.psi);
        running_weights.merge(&partial.weights.0);
    }
    debug_assert_eq!(out.len(), checkpoints.len());
    Ok(out)
}

fn eval_segment(
    lo: u64,
    hi: u64,
    pattern: &OffsetSet,
    base: &[u64],
    marks: &[(usize, u64)],
    depth: Depth,
) -> Result<SegmentPartial> {
    let hmax = pattern.max_offset();
    let seg = sieve::sieve_segment_with(lo, hi + hmax, base)?;
    let offsets = pattern.offsets();

    let mut count = 0u64;
    let mut theta = KahanSum::new();
    let mut psi = KahanSum::new();
    let mut weights = WeightBag::default();
    let mut out_marks = Vec::with_capacity(marks.len());
    let mut next_mark = marks.iter().peekable();

    for n in lo..=hi {
        let v = point_value(&seg, (n - lo) as usize, offsets)?;
        count += v.indicator;
        if depth == Depth::Chebyshev {
            if let Some(denom) = v.weight_denom {
                let logmean = log_geometric_mean(n, pattern);
                psi.add(logmean / denom as f64);
                if v.indicator == 1 {
                    theta.add(logmean);
                }
                weights.bump(denom);
            }
        }
        if let Some(&&(idx, x)) = next_mark.peek() {
            if x == n {
                out_marks.push(Mark {
                    checkpoint: idx,
                    count,
                    theta,
                    psi,
                    weights: weights.0.clone(),
                });
                next_mark.next();
            }
        }
    }
    debug_assert_eq!(out_marks.len(), marks.len());

    Ok(SegmentPartial {
        count,
        theta,
        psi,
        weights,
        marks: out_marks,
    })
}

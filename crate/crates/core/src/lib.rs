//! Exact prime k-tuple counting.
//!
//! The arithmetic function −μ(n)·Λ(n)/log(n) is a characteristic function
//! of the primes, and its product over a shifted pattern {0, h_2, …, h_k}
//! localizes onto prime k-tuples. Because Λ(n)/log(n) is the exact rational
//! 1/ν at prime powers, every counting sum built on it stays in integer
//! arithmetic: π_(k)(x) comes out exact, not approximate.
//!
//! The crate provides:
//!
//! * [`sieve`] — segmented tables of μ(n) and prime-power structure;
//! * [`tuples`] — offset patterns, residue coverage, admissibility;
//! * [`summatory`] — exact tuple counts at one or many checkpoints;
//! * [`chebyshev`] — tuple analogs of ψ and θ, prime-power weight sums,
//!   and averaged prime-double functions;
//! * [`asymptotics`] — truncated singular series vs. empirical constants;
//! * [`oracle`] — an independent brute-force path for verification.
//!
//! Scans are segment-parallel with order-fixed merges: results are
//! identical for any thread count.

pub mod asymptotics;
pub mod chebyshev;
mod error;
mod kahan;
pub mod oracle;
mod scan;
pub mod sieve;
pub mod summatory;
pub mod tuples;

pub use chebyshev::{AveragedDoubles, ChebyshevResult};
pub use error::{Error, Result};
pub use num::BigRational;
pub use oracle::PrimeTable;
pub use scan::ScanConfig;
pub use sieve::{sieve_segment, SieveSegment, DEFAULT_SEGMENT_LEN};
pub use summatory::{CountConvention, TupleCountResult};
pub use tuples::OffsetSet;

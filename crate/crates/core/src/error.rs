use thiserror::Error;

/// Errors shared by every module in the crate.
#[derive(Debug, Error)]
#[non_exhaustive]
pub enum Error {
    /// A range endpoint violates a precondition (below 2, inverted, or so
    /// large that `x + max_offset` would leave the supported u64 window).
    #[error("invalid range: {0}")]
    InvalidRange(String),

    /// A point lookup outside the values a segment holds.
    #[error("{n} is outside the segment [{lo}, {hi}]")]
    OutOfRange { n: u64, lo: u64, hi: u64 },

    /// Offset-pattern text or list that does not form a valid pattern.
    #[error("malformed offsets: {0}")]
    MalformedOffsets(String),

    #[error("invalid argument: {0}")]
    InvalidArgument(String),

    /// Sieve or prime-table data does not cover the values an evaluation needs.
    #[error("coverage gap: need [{needed_lo}, {needed_hi}], have [{have_lo}, {have_hi}]")]
    Coverage {
        needed_lo: u64,
        needed_hi: u64,
        have_lo: u64,
        have_hi: u64,
    },

    /// A table or segment request beyond the configured resource ceiling.
    #[error("capacity exceeded: requested {requested}, maximum {maximum}")]
    Capacity { requested: u64, maximum: u64 },

    /// Exact integer arithmetic left the u64 range. Only reachable with
    /// patterns no feasible input produces; reported rather than wrapped.
    #[error("arithmetic overflow: {0}")]
    Overflow(String),
}

pub type Result<T> = std::result::Result<T, Error>;

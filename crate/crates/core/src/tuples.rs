//! Offset patterns `{0, h_2, …, h_k}` with admissibility metadata.
//!
//! A pattern is kept even when inadmissible: the counting formulas hold
//! unconditionally, so inadmissibility is reported, not rejected. Odd
//! offsets are likewise allowed; mod-2 coverage just makes the family
//! finite.

use std::fmt;
use std::str::FromStr;

use crate::error::{Error, Result};

/// Upper bound on the number of offsets in one pattern.
pub const MAX_OFFSETS: usize = 64;

/// A sorted offset pattern with first element 0.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct OffsetSet {
    offsets: Vec<u64>,
}

impl OffsetSet {
    /// Builds a pattern from raw offsets. Input order is irrelevant;
    /// duplicates and a missing 0 are rejected.
    pub fn new(mut offsets: Vec<u64>) -> Result<Self> {
        if offsets.is_empty() {
            return Err(Error::MalformedOffsets("empty offset list".into()));
        }
        if offsets.len() > MAX_OFFSETS {
            return Err(Error::MalformedOffsets(format!(
                "{} offsets given, maximum is {MAX_OFFSETS}",
                offsets.len()
            )));
        }
        offsets.sort_unstable();
        for pair in offsets.windows(2) {
            if pair[0] == pair[1] {
                return Err(Error::MalformedOffsets(format!(
                    "duplicate offset {}",
                    pair[0]
                )));
            }
        }
        if offsets[0] != 0 {
            return Err(Error::MalformedOffsets(
                "first offset must be 0".into(),
            ));
        }
        Ok(Self { offsets })
    }

    /// Parses a comma-separated offset list such as `"0,2,6"`.
    /// Whitespace around commas is tolerated.
    pub fn parse(text: &str) -> Result<Self> {
        let mut offsets = Vec::new();
        for piece in text.split(',') {
            let piece = piece.trim();
            if piece.is_empty() {
                return Err(Error::MalformedOffsets(format!(
                    "empty entry in {text:?}"
                )));
            }
            let h: u64 = piece.parse().map_err(|_| {
                Error::MalformedOffsets(format!("{piece:?} is not a non-negative integer"))
            })?;
            offsets.push(h);
        }
        Self::new(offsets)
    }

    pub fn offsets(&self) -> &[u64] {
        &self.offsets
    }

    /// Tuple order k.
    pub fn k(&self) -> usize {
        self.offsets.len()
    }

    pub fn max_offset(&self) -> u64 {
        *self.offsets.last().unwrap()
    }

    /// ν_p(H): the number of distinct residues `{h mod p}`.
    /// Errors when `p` is not prime.
    pub fn residue_coverage(&self, p: u64) -> Result<usize> {
        if !is_prime_u64(p) {
            return Err(Error::InvalidArgument(format!("{p} is not prime")));
        }
        Ok(self.residue_coverage_of_prime(p))
    }

    pub(crate) fn residue_coverage_of_prime(&self, p: u64) -> usize {
        let mut residues: Vec<u64> = self.offsets.iter().map(|h| h % p).collect();
        residues.sort_unstable();
        residues.dedup();
        residues.len()
    }

    /// True iff no prime has every residue class covered. Only primes
    /// p ≤ k can be fully covered, so the check is finite.
    pub fn is_admissible(&self) -> bool {
        let k = self.k() as u64;
        (2..=k)
            .filter(|&p| is_prime_u64(p))
            .all(|p| (self.residue_coverage_of_prime(p) as u64) < p)
    }
}

impl FromStr for OffsetSet {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        Self::parse(s)
    }
}

impl fmt::Display for OffsetSet {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        for (i, h) in self.offsets.iter().enumerate() {
            if i > 0 {
                write!(f, ",")?;
            }
            write!(f, "{h}")?;
        }
        Ok(())
    }
}

/// Deterministic trial division; plenty for the small moduli used here.
pub(crate) fn is_prime_u64(n: u64) -> bool {
    if n < 2 {
        return false;
    }
    if n < 4 {
        return true;
    }
    if n % 2 == 0 || n % 3 == 0 {
        return false;
    }
    let mut d = 5;
    while d * d <= n {
        if n % d == 0 || n % (d + 2) == 0 {
            return false;
        }
        d += 6;
    }
    true
}

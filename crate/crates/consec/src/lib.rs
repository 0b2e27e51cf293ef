//! Exact arithmetic for consecutive-k-out-of-n:F systems.
//!
//! A consecutive-k-out-of-n:F system is a chain of `n` independent components
//! with common success probability `p`; the system fails exactly when some `k`
//! adjacent components all fail. Its reliability is a homogeneous polynomial
//!
//! ```text
//! R(k, n; p) = sum_i N(n, k, i) * p^i * q^(n-i),     q = 1 - p,
//! ```
//!
//! where `N(n, k, i)` counts the length-`n` outcome sequences with exactly `i`
//! successes and no failure run of length `k`. This crate computes the
//! `N(n, k, i)` exactly in arbitrary precision, classifies each index by the
//! cheapest applicable closed form, bounds the expensive indices from both
//! sides, and evaluates the polynomial in exact rational or floating-point
//! arithmetic. An independent brute-force/DP oracle is included so every
//! formula can be checked against ground truth.
//!
//! ```
//! use consec::{SystemParams, coefficients, polynomial::{self, ProbabilityValue}};
//!
//! let params = SystemParams::new(16, 3).unwrap();
//! let n5 = coefficients::coefficient_exact(params, 5).unwrap();
//! assert_eq!(n5.to_string(), "6");
//!
//! let p = ProbabilityValue::parse_decimal("0.5").unwrap();
//! let r = polynomial::reliability(params, &p).unwrap();
//! assert!(r.interval.is_none());
//! ```

use std::fmt;

pub mod bounds;
pub mod coefficients;
pub mod oracle;
pub mod pascal;
pub mod polynomial;

pub use coefficients::{CoefficientReport, CoefficientValue, RegionTag};

/// The pair `(n, k)` describing one consecutive-k-out-of-n:F system.
///
/// Construction enforces `1 <= k <= n`; every function in this crate may
/// therefore assume a valid pair.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub struct SystemParams {
    n: usize,
    k: usize,
}

impl SystemParams {
    /// Validates `1 <= k <= n`. Out-of-range pairs are rejected rather than
    /// clamped so that caller bugs surface immediately.
    pub fn new(n: usize, k: usize) -> Result<Self> {
        if k < 1 || k > n {
            return Err(Error::InvalidParams { n, k });
        }
        Ok(Self { n, k })
    }

    /// Component count.
    pub fn n(&self) -> usize {
        self.n
    }

    /// Failure-run length that kills the system.
    pub fn k(&self) -> usize {
        self.k
    }
}

impl fmt::Display for SystemParams {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "(n={}, k={})", self.n, self.k)
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub enum Error {
    /// `k < 1` or `k > n`.
    InvalidParams { n: usize, k: usize },
    /// Coefficient index outside `0..=n`.
    IndexOutOfRange { index: usize, n: usize },
    /// A bound was requested for an index where an exact formula applies.
    OutsideBoundedRange {
        index: usize,
        bounded: Option<(usize, usize)>,
    },
    /// Exhaustive enumeration refused; use the DP oracle instead.
    EnumerationCapacity { n: usize, max: usize },
    /// DP oracle capacity exceeded.
    DpCapacity { n: usize, max: usize },
    /// No special-case reliability formula for this `k`; use `reliability`.
    NoClosedForm { n: usize, k: usize },
    /// Probability outside `[0, 1]` or unparsable.
    InvalidProbability { reason: String },
}

impl fmt::Display for Error {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Self::InvalidParams { n, k } => {
                write!(f, "invalid system parameters (n={n}, k={k}): require 1 <= k <= n")
            }
            Self::IndexOutOfRange { index, n } => {
                write!(f, "coefficient index {index} out of range 0..={n}")
            }
            Self::OutsideBoundedRange { index, bounded } => match bounded {
                Some((lo, hi)) => write!(
                    f,
                    "index {index} outside the bounded range [{lo}, {hi}]: an exact formula applies"
                ),
                None => write!(
                    f,
                    "index {index} has no bounds for these parameters: every index is exact"
                ),
            },
            Self::EnumerationCapacity { n, max } => {
                write!(f, "n={n} exceeds the 2^n enumeration cap (n <= {max}); use oracle_dp")
            }
            Self::DpCapacity { n, max } => {
                write!(f, "n={n} exceeds the DP oracle cap (n <= {max})")
            }
            Self::NoClosedForm { n, k } => {
                write!(
                    f,
                    "no closed-form reliability for k={k}, n={n} (k must be 1, 2, or n); use reliability"
                )
            }
            Self::InvalidProbability { reason } => write!(f, "invalid probability: {reason}"),
        }
    }
}

impl std::error::Error for Error {}

pub type Result<T> = std::result::Result<T, Error>;

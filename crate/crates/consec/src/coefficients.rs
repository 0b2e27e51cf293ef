//! Exact coefficients `N(n, k, i)` and their formula-region classification.
//!
//! Every index `0..=n` falls into exactly one region, each with its own
//! evaluation route, cheapest first:
//!
//! * `Zero` — too few successes to break the failures into short runs.
//! * `FullBinomial` — so many successes that every arrangement survives.
//! * `TwoTerm` / `ThreeTerm` — truncations of the inclusion-exclusion sum
//!   whose higher terms vanish identically on these index ranges.
//! * `GeneralSum` — the full alternating inclusion-exclusion sum.
//!
//! A redundant generating-function route ([`coefficient_via_gp`]) computes
//! the same numbers from capped balls-in-bins rows for cross-validation.

use std::fmt;

use num_bigint::{BigInt, BigUint};
use num_traits::Zero;

use crate::pascal::{binomial, gp_coefficient, CappedBinsSpec};
use crate::{Error, Result, SystemParams};

/// Which closed form applies to a coefficient index.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum RegionTag {
    Zero,
    FullBinomial,
    TwoTerm,
    ThreeTerm,
    GeneralSum,
}

impl RegionTag {
    pub fn as_str(&self) -> &'static str {
        match self {
            Self::Zero => "zero",
            Self::FullBinomial => "full_binomial",
            Self::TwoTerm => "two_term",
            Self::ThreeTerm => "three_term",
            Self::GeneralSum => "general_sum",
        }
    }
}

impl fmt::Display for RegionTag {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.as_str())
    }
}

/// The threshold index `floor((n - k + 1) / k)`.
///
/// Indices at or below it are (with one boundary exception, see
/// [`zero_region_max`]) exactly the vanishing coefficients, and the bounded
/// range of the `bounds` module starts right above it.
pub fn threshold_i(params: SystemParams) -> usize {
    (params.n() - params.k() + 1) / params.k()
}

/// Largest index whose coefficient is zero, i.e. `floor(n / k) - 1`.
///
/// A sequence with `i` successes splits its `n - i` failures into `i + 1`
/// runs of length at most `k - 1`, so the coefficient vanishes iff
/// `n - i > (i + 1)(k - 1)`, i.e. iff `i < (n - k + 1) / k` strictly. This
/// equals [`threshold_i`] except when `k` divides `n + 1`: there the
/// threshold index itself admits exactly one surviving arrangement (every
/// run filled to length `k - 1`), so the zero region ends one index lower.
pub fn zero_region_max(params: SystemParams) -> usize {
    params.n() / params.k() - 1
}

/// Region of index `i`, per the partition described at module level.
pub fn classify(params: SystemParams, i: usize) -> Result<RegionTag> {
    let (n, k) = (params.n(), params.k());
    if i > n {
        return Err(Error::IndexOutOfRange { index: i, n });
    }
    Ok(if i <= zero_region_max(params) {
        RegionTag::Zero
    } else if i + k > n {
        RegionTag::FullBinomial
    } else if i + 2 * k > n {
        RegionTag::TwoTerm
    } else if i + 3 * k > n {
        RegionTag::ThreeTerm
    } else {
        RegionTag::GeneralSum
    })
}

/// `N(n, k, i)` by the cheapest formula for its region.
pub fn coefficient_exact(params: SystemParams, i: usize) -> Result<BigUint> {
    let (n, k) = (params.n() as i64, params.k() as i64);
    let region = classify(params, i)?;
    let i = i as i64;
    let value = match region {
        RegionTag::Zero => BigUint::zero(),
        RegionTag::FullBinomial => binomial(n, i),
        RegionTag::TwoTerm => to_nonnegative(two_term_signed(n, k, i)),
        RegionTag::ThreeTerm => {
            let three = two_term_signed(n, k, i)
                + BigInt::from(binomial(i + 1, 2)) * BigInt::from(binomial(n - 2 * k, i));
            to_nonnegative(three)
        }
        RegionTag::GeneralSum => to_nonnegative(inclusion_exclusion_signed(n, k, i)),
    };
    Ok(value)
}

/// `N(n, k, i)` via the generating function `(1 + z + ... + z^(k-1))^(i+1)`:
/// the failures form `i + 1` runs of length below `k` summing to `n - i`.
pub fn coefficient_via_gp(params: SystemParams, i: usize) -> Result<BigUint> {
    let (n, k) = (params.n(), params.k());
    if i > n {
        return Err(Error::IndexOutOfRange { index: i, n });
    }
    Ok(gp_coefficient(CappedBinsSpec {
        bins: i + 1,
        balls: n - i,
        cap: k - 1,
    }))
}

/// `N(n, k, i)` by the full inclusion-exclusion sum
/// `sum_j (-1)^j C(i+1, j) C(n - j*k, i)`, `j = 0 ..= floor((n-i)/k)`,
/// valid for every index. Used for cross-checking the region dispatch.
pub fn coefficient_via_sum(params: SystemParams, i: usize) -> Result<BigUint> {
    let (n, k) = (params.n(), params.k());
    if i > n {
        return Err(Error::IndexOutOfRange { index: i, n });
    }
    Ok(to_nonnegative(inclusion_exclusion_signed(
        n as i64, k as i64, i as i64,
    )))
}

/// `C(n, i) - (i + 1) C(n - k, i)`, the sum truncated after its second term.
fn two_term_signed(n: i64, k: i64, i: i64) -> BigInt {
    BigInt::from(binomial(n, i)) - BigInt::from(i + 1) * BigInt::from(binomial(n - k, i))
}

fn inclusion_exclusion_signed(n: i64, k: i64, i: i64) -> BigInt {
    let mut acc = BigInt::zero();
    let upper = (n - i) / k;
    for j in 0..=upper {
        let term = BigInt::from(binomial(i + 1, j)) * BigInt::from(binomial(n - j * k, i));
        if j % 2 == 0 {
            acc += term;
        } else {
            acc -= term;
        }
    }
    acc
}

/// Partial sums are signed; the completed sum is a count and must not be.
fn to_nonnegative(value: BigInt) -> BigUint {
    value
        .to_biguint()
        .expect("alternating coefficient sum collapsed to a negative value")
}

/// Exact value, or a `[lower, upper]` envelope, for one coefficient.
#[derive(Debug, Clone, PartialEq, Eq)]
pub enum CoefficientValue {
    Exact(BigUint),
    Interval { lower: BigUint, upper: BigUint },
}

/// One row of a coefficient table: index, region, and value.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct CoefficientReport {
    pub index: usize,
    pub region: RegionTag,
    pub value: CoefficientValue,
}

impl CoefficientReport {
    pub fn exact(index: usize, region: RegionTag, value: BigUint) -> Self {
        Self { index, region, value: CoefficientValue::Exact(value) }
    }

    /// Interval report; enforces `lower <= upper`.
    pub fn bounded(index: usize, region: RegionTag, lower: BigUint, upper: BigUint) -> Self {
        assert!(lower <= upper, "interval bounds out of order at index {index}");
        Self { index, region, value: CoefficientValue::Interval { lower, upper } }
    }
}

/// Exact reports for every index `0..=n`. Interval reports are produced by
/// the `bounds` module on top of this table, never here.
pub fn coefficient_table(params: SystemParams) -> Vec<CoefficientReport> {
    (0..=params.n())
        .map(|i| {
            let region = classify(params, i).expect("index within 0..=n");
            let value = coefficient_exact(params, i).expect("index within 0..=n");
            CoefficientReport::exact(i, region, value)
        })
        .collect()
}

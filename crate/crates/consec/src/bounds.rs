//! Two-sided envelopes for the coefficients that lack a cheap closed form.
//!
//! For `k` small relative to `n`, the indices in `[threshold_i + 1, n - 3k]`
//! only have the full alternating sum. Truncating that sum after its second
//! term underestimates the count, after its third overestimates it, which
//! gives the envelope
//!
//! ```text
//! L = max{0, C(n,i) - (i+1) C(n-k,i)}
//! U = min{C(n,i), C(n,i) - (i+1) C(n-k,i) + C(i+1,2) C(n-2k,i)}
//! ```
//!
//! Outside that range the bound operations refuse to answer — the exact
//! formulas apply there, and [`bounds_table`] is the merged view.

use num_bigint::{BigInt, BigUint};
use num_traits::Zero;

use crate::coefficients::{coefficient_exact, threshold_i};
use crate::pascal::binomial;
use crate::{Error, Result, SystemParams};

/// Lower/upper envelope for one index. When `applicable` is false both
/// values equal the exact coefficient.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct BoundsPair {
    pub index: usize,
    pub lower: BigUint,
    pub upper: BigUint,
    pub applicable: bool,
}

/// The inclusive index interval `[threshold_i + 1, n - 3k]` on which only
/// bounds are provided, or `None` when the endpoints cross (which subsumes
/// the `k >= floor(n/3)` case, including its parity edges).
pub fn bounded_range(params: SystemParams) -> Option<(usize, usize)> {
    let lo = threshold_i(params) + 1;
    let hi = params.n() as i64 - 3 * params.k() as i64;
    if hi >= lo as i64 {
        Some((lo, hi as usize))
    } else {
        None
    }
}

fn require_in_range(params: SystemParams, i: usize) -> Result<()> {
    let bounded = bounded_range(params);
    match bounded {
        Some((lo, hi)) if (lo..=hi).contains(&i) => Ok(()),
        _ => Err(Error::OutsideBoundedRange { index: i, bounded }),
    }
}

/// `L(n, k, i) = max{0, C(n,i) - (i+1) C(n-k,i)}`.
///
/// Errors outside [`bounded_range`]: the exact formula applies there.
pub fn lower_bound(params: SystemParams, i: usize) -> Result<BigUint> {
    require_in_range(params, i)?;
    let two = two_term(params, i);
    Ok(two.to_biguint().unwrap_or_else(BigUint::zero))
}

/// `U(n, k, i) = min{C(n,i), C(n,i) - (i+1) C(n-k,i) + C(i+1,2) C(n-2k,i)}`.
pub fn upper_bound(params: SystemParams, i: usize) -> Result<BigUint> {
    require_in_range(params, i)?;
    let (n, k) = (params.n() as i64, params.k() as i64);
    let three = two_term(params, i)
        + BigInt::from(binomial(i as i64 + 1, 2)) * BigInt::from(binomial(n - 2 * k, i as i64));
    let cap = BigInt::from(binomial(n, i as i64));
    let value = three.min(cap);
    Ok(value
        .to_biguint()
        .expect("upper coefficient bound collapsed to a negative value"))
}

fn two_term(params: SystemParams, i: usize) -> BigInt {
    let (n, k, i) = (params.n() as i64, params.k() as i64, i as i64);
    BigInt::from(binomial(n, i)) - BigInt::from(i + 1) * BigInt::from(binomial(n - k, i))
}

/// One [`BoundsPair`] per index `0..=n`; exact coefficients fill both sides
/// wherever the bounds do not apply.
pub fn bounds_table(params: SystemParams) -> Vec<BoundsPair> {
    let range = bounded_range(params);
    (0..=params.n())
        .map(|i| {
            let applicable = matches!(range, Some((lo, hi)) if (lo..=hi).contains(&i));
            if applicable {
                BoundsPair {
                    index: i,
                    lower: lower_bound(params, i).expect("index within bounded range"),
                    upper: upper_bound(params, i).expect("index within bounded range"),
                    applicable,
                }
            } else {
                let exact = coefficient_exact(params, i).expect("index within 0..=n");
                BoundsPair { index: i, lower: exact.clone(), upper: exact, applicable }
            }
        })
        .collect()
}

//! Binomial and capped balls-in-bins coefficients in arbitrary precision.
//!
//! The capped coefficient is the number of ways to drop `balls` identical
//! balls into `bins` ordered bins with at most `cap` balls per bin, i.e. the
//! coefficient of `z^balls` in `(1 + z + ... + z^cap)^bins`. With `cap = 1`
//! it reduces to the ordinary binomial coefficient.

use std::collections::HashMap;

use num_bigint::BigUint;
use num_traits::{One, Zero};

/// Binomial coefficient `C(m, r)` as a total function: any out-of-range
/// argument (`r < 0`, `m < 0`, or `r > m`) yields 0. Callers that iterate
/// alternating sums rely on this convention instead of guarding each term.
pub fn binomial(m: i64, r: i64) -> BigUint {
    if r < 0 || m < 0 || r > m {
        return BigUint::zero();
    }
    // Evaluate multiplicatively over the shorter side; each intermediate
    // division is exact because C(m, j) is an integer for every prefix.
    let r = r.min(m - r) as u64;
    let m = m as u64;
    let mut acc = BigUint::one();
    for j in 0..r {
        acc = acc * (m - j) / (j + 1);
    }
    acc
}

/// Bins-and-balls problem instance: `balls` into `bins`, at most `cap` each.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub struct CappedBinsSpec {
    pub bins: usize,
    pub balls: usize,
    pub cap: usize,
}

/// Coefficient of `z^balls` in `(1 + z + ... + z^cap)^bins`.
///
/// Computed by the bin-at-a-time recurrence
/// `T(m, a) = sum_{t=0..min(cap, a)} T(m-1, a-t)`, `T(0, 0) = 1`,
/// applied in its telescoped form
/// `T(m, a) = T(m, a-1) + T(m-1, a) - T(m-1, a-cap-1)`
/// so each bin costs O(balls) additions instead of O(balls * cap).
pub fn gp_coefficient(spec: CappedBinsSpec) -> BigUint {
    let CappedBinsSpec { bins, balls, cap } = spec;
    // More balls than total capacity: no filling exists.
    if balls > bins.saturating_mul(cap) {
        return BigUint::zero();
    }
    let row = gp_row_truncated(bins, cap, balls);
    row[balls].clone()
}

/// Full coefficient row of `(1 + z + ... + z^cap)^bins`, indices
/// `0..=bins*cap`. The row is symmetric about its midpoint.
pub fn gp_row(bins: usize, cap: usize) -> Vec<BigUint> {
    gp_row_truncated(bins, cap, bins.saturating_mul(cap))
}

/// Row of coefficients up to degree `max_deg` inclusive.
fn gp_row_truncated(bins: usize, cap: usize, max_deg: usize) -> Vec<BigUint> {
    let mut row = vec![BigUint::zero(); max_deg + 1];
    row[0] = BigUint::one();
    for _ in 0..bins {
        let mut next = Vec::with_capacity(max_deg + 1);
        next.push(row[0].clone());
        for a in 1..=max_deg {
            // T(m, a-1) + T(m-1, a), minus the window term that slid out.
            // The subtrahend is one of the summands of T(m, a-1), so the
            // intermediate value never goes negative.
            let mut v: BigUint = next[a - 1].clone() + &row[a];
            if a > cap {
                v -= &row[a - cap - 1];
            }
            next.push(v);
        }
        row = next;
    }
    row
}

/// Memoized `gp_row` lookups keyed by `(bins, cap)`.
///
/// The cache is a plain owned value: keep one per task, or hand out shared
/// references only after all rows of interest are populated. Entries are
/// never evicted; the cache lives exactly as long as its owner.
#[derive(Debug, Default)]
pub struct GpRowCache {
    rows: HashMap<(usize, usize), Vec<BigUint>>,
}

impl GpRowCache {
    pub fn new() -> Self {
        Self::default()
    }

    /// The coefficient row for `(bins, cap)`, computing it on first use.
    pub fn row(&mut self, bins: usize, cap: usize) -> &[BigUint] {
        self.rows
            .entry((bins, cap))
            .or_insert_with(|| gp_row(bins, cap))
    }

    pub fn len(&self) -> usize {
        self.rows.len()
    }

    pub fn is_empty(&self) -> bool {
        self.rows.is_empty()
    }
}

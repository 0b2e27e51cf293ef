//! Ground-truth coefficient counts, independent of every closed form.
//!
//! Both routes here count surviving trial sequences directly — exhaustive
//! enumeration for small `n`, a run-length dynamic program for moderate `n` —
//! and deliberately share no code with the `pascal`, `coefficients`, or
//! `bounds` modules. An oracle that reused the formulas under test would
//! prove nothing.

use num_bigint::BigUint;
use num_traits::{One, Zero};

use crate::{Error, Result, SystemParams};

/// Largest `n` accepted by [`oracle_enumerate`]; 2^22 sequences keep a full
/// sweep within desk-scale runtime.
pub const MAX_ENUMERATION_N: usize = 22;

/// Largest `n` accepted by [`oracle_dp`].
pub const MAX_DP_N: usize = 4096;

/// Per-success-count survivor tallies for one `(n, k)`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct OracleRow {
    pub params: SystemParams,
    /// `counts[i]` = sequences with exactly `i` successes whose longest
    /// failure run is at most `k - 1`. Length `n + 1`.
    pub counts: Vec<BigUint>,
}

impl OracleRow {
    /// Sum of all survivor counts, i.e. the number of length-`n` binary
    /// strings with no failure run of length `k`.
    pub fn total(&self) -> BigUint {
        self.counts.iter().sum()
    }
}

/// Counts by walking every one of the `2^n` outcome sequences.
pub fn oracle_enumerate(params: SystemParams) -> Result<OracleRow> {
    let (n, k) = (params.n(), params.k());
    if n > MAX_ENUMERATION_N {
        return Err(Error::EnumerationCapacity { n, max: MAX_ENUMERATION_N });
    }
    let mut counts = vec![0u64; n + 1];
    for mask in 0u32..(1u32 << n) {
        // Set bits are successes; count the longest run of clear bits.
        let mut run = 0usize;
        let mut longest = 0usize;
        for bit in 0..n {
            if mask >> bit & 1 == 1 {
                run = 0;
            } else {
                run += 1;
                longest = longest.max(run);
            }
        }
        if longest < k {
            counts[mask.count_ones() as usize] += 1;
        }
    }
    Ok(OracleRow {
        params,
        counts: counts.into_iter().map(BigUint::from).collect(),
    })
}

/// Counts by a dynamic program over (position, trailing failure-run length,
/// successes so far). A failure transition that would complete a run of `k`
/// is simply dropped, so only surviving prefixes are ever represented.
pub fn oracle_dp(params: SystemParams) -> Result<OracleRow> {
    let (n, k) = (params.n(), params.k());
    if n > MAX_DP_N {
        return Err(Error::DpCapacity { n, max: MAX_DP_N });
    }
    // state[r][s]: prefixes with s successes ending in a failure run of r.
    let mut state: Vec<Vec<BigUint>> = vec![vec![BigUint::zero(); n + 1]; k];
    state[0][0] = BigUint::one();
    for pos in 0..n {
        // Success: any state moves to run 0 with one more success.
        let mut after_success = vec![BigUint::zero(); n + 1];
        for s in 0..=pos {
            let mut sum = BigUint::zero();
            for row in state.iter() {
                sum += &row[s];
            }
            after_success[s + 1] = sum;
        }
        // Failure: run r becomes r + 1; the row at r = k - 1 dies. Rotating
        // shifts every row up one and recycles the dead row's storage.
        state.rotate_right(1);
        state[0] = after_success;
    }
    let mut counts = vec![BigUint::zero(); n + 1];
    for row in state.iter() {
        for (s, v) in row.iter().enumerate() {
            counts[s] += v;
        }
    }
    Ok(OracleRow { params, counts })
}

//! Exhaustive formula-vs-oracle sweep behind the `verify` subcommand.

use std::fmt;
use std::io::{self, Write};

use num_bigint::BigUint;

use consec::coefficients::{coefficient_exact, coefficient_via_gp};
use consec::oracle::{oracle_dp, oracle_enumerate, OracleRow, MAX_DP_N, MAX_ENUMERATION_N};
use consec::SystemParams;

/// One disagreement between the formulas and the oracle.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Mismatch {
    pub n: usize,
    pub k: usize,
    pub i: usize,
    pub formula: BigUint,
    pub generating_function: BigUint,
    pub oracle: BigUint,
}

impl fmt::Display for Mismatch {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(
            f,
            "MISMATCH at (n={}, k={}, i={}): formula={}, generating_function={}, oracle={}",
            self.n, self.k, self.i, self.formula, self.generating_function, self.oracle
        )
    }
}

/// Compares every index of one oracle row against both formula routes.
pub fn compare_row(params: SystemParams, oracle: &OracleRow) -> Vec<Mismatch> {
    let (n, k) = (params.n(), params.k());
    let mut out = Vec::new();
    for (i, want) in oracle.counts.iter().enumerate() {
        let formula = coefficient_exact(params, i).expect("index within 0..=n");
        let gp = coefficient_via_gp(params, i).expect("index within 0..=n");
        if &formula != want || &gp != want {
            out.push(Mismatch {
                n,
                k,
                i,
                formula,
                generating_function: gp,
                oracle: want.clone(),
            });
        }
    }
    out
}

/// Sweeps n = 1..=max_n, all k: enumeration oracle up to n = 22 (with a DP
/// cross-check), DP oracle alone beyond. Progress goes to `w`; the returned
/// list is empty exactly when every comparison agreed.
pub fn run(max_n: usize, w: &mut dyn Write) -> io::Result<Vec<Mismatch>> {
    debug_assert!(max_n <= MAX_DP_N);
    let mut triples = 0usize;
    let mut mismatches = Vec::new();
    for n in 1..=max_n {
        let mut row_count = 0usize;
        for k in 1..=n {
            let params = SystemParams::new(n, k).expect("1 <= k <= n");
            let dp = oracle_dp(params).expect("n within DP capacity");
            if n <= MAX_ENUMERATION_N {
                let enumerated = oracle_enumerate(params).expect("n within enumeration capacity");
                if enumerated != dp {
                    // Route disagreement inside the oracle itself; report
                    // every index of the pair.
                    mismatches.extend(compare_row(params, &enumerated));
                    mismatches.extend(compare_row(params, &dp));
                    continue;
                }
                mismatches.extend(compare_row(params, &enumerated));
            } else {
                mismatches.extend(compare_row(params, &dp));
            }
            triples += n + 1;
            row_count += n + 1;
        }
        writeln!(w, "n={n}: {row_count} coefficients checked against the oracle")?;
    }
    for m in &mismatches {
        writeln!(w, "{m}")?;
    }
    if mismatches.is_empty() {
        writeln!(w, "verify: {triples} (n,k,i) triples up to n={max_n}, all formulas agree")?;
    } else {
        writeln!(w, "verify: {} mismatches found", mismatches.len())?;
    }
    Ok(mismatches)
}

#[cfg(test)]
mod tests {
    use super::*;
    use num_traits::One;

    #[test]
    fn clean_rows_produce_no_mismatch() {
        let params = SystemParams::new(8, 3).unwrap();
        let row = oracle_enumerate(params).unwrap();
        assert!(compare_row(params, &row).is_empty());
    }

    #[test]
    fn corrupted_row_identifies_the_triple() {
        let params = SystemParams::new(8, 3).unwrap();
        let mut row = oracle_enumerate(params).unwrap();
        row.counts[4] += BigUint::one();
        let found = compare_row(params, &row);
        assert_eq!(found.len(), 1);
        assert_eq!((found[0].n, found[0].k, found[0].i), (8, 3, 4));
        assert_eq!(found[0].oracle, found[0].formula.clone() + BigUint::one());
        let line = found[0].to_string();
        assert!(line.contains("(n=8, k=3, i=4)"), "{line}");
    }

    #[test]
    fn sweep_reports_totals() {
        let mut sink = Vec::new();
        let mismatches = run(6, &mut sink).unwrap();
        assert!(mismatches.is_empty());
        let text = String::from_utf8(sink).unwrap();
        // sum over n of n*(n+1) triples
        let total: usize = (1..=6).map(|n| n * (n + 1)).sum();
        assert!(
            text.contains(&format!("verify: {total} (n,k,i) triples up to n=6, all formulas agree")),
            "{text}"
        );
    }
}

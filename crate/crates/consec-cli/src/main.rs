//! `consec` — tables of exact coefficients, bounds, reliability curves,
//! relative-error grids, and oracle verification sweeps for
//! consecutive-k-out-of-n:F systems.
//!
//! Exit codes: 0 success, 1 validation error, 2 verification mismatch.

mod tables;
mod verify;

use std::fs::File;
use std::io::{self, BufWriter, Write};
use std::path::PathBuf;

use clap::error::ErrorKind;
use clap::{Parser, Subcommand, ValueEnum};
use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{Signed, Zero};

use consec::bounds::{bounded_range, bounds_table, lower_bound, upper_bound};
use consec::coefficients::{coefficient_exact, coefficient_table, CoefficientValue};
use consec::oracle::MAX_DP_N;
use consec::polynomial::{
    bernstein_eval, parse_decimal_rational, rational_to_f64, ProbabilityValue,
    ReliabilityPolynomial,
};
use consec::SystemParams;
use tables::{Cell, Format, Table};

#[derive(Parser)]
#[command(
    name = "consec",
    version,
    about = "Exact coefficients, bounds, and reliability curves for consecutive-k-out-of-n:F systems"
)]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Exact coefficient table with formula-region tags
    Coeffs {
        /// Component count
        #[arg(long)]
        n: usize,
        /// Fatal failure-run length
        #[arg(long)]
        k: usize,
        #[arg(long, value_enum, default_value_t = FormatArg::Csv)]
        format: FormatArg,
        /// Write to a file instead of standard output
        #[arg(long)]
        out: Option<PathBuf>,
    },
    /// Lower/upper coefficient bounds beside the exact values
    Bounds {
        #[arg(long)]
        n: usize,
        #[arg(long)]
        k: usize,
        #[arg(long, value_enum, default_value_t = FormatArg::Csv)]
        format: FormatArg,
        #[arg(long)]
        out: Option<PathBuf>,
    },
    /// Reliability over a probability grid, exactly and/or as an envelope
    Reliability {
        #[arg(long)]
        n: usize,
        #[arg(long)]
        k: usize,
        /// Single value "0.3", list "0.1,0.5,0.9", or grid "start:step:end"
        #[arg(long)]
        p: String,
        #[arg(long, value_enum, default_value_t = ModeArg::Exact)]
        mode: ModeArg,
        #[arg(long, value_enum, default_value_t = FormatArg::Csv)]
        format: FormatArg,
        #[arg(long)]
        out: Option<PathBuf>,
    },
    /// Relative error of the plotted bound over every (k, i) pair
    Errors {
        #[arg(long)]
        n: usize,
        #[arg(long, value_enum, default_value_t = FormatArg::Csv)]
        format: FormatArg,
        #[arg(long)]
        out: Option<PathBuf>,
    },
    /// Exhaustive formula-vs-oracle verification sweep
    Verify {
        /// Largest n to sweep (enumeration oracle to 22, DP oracle beyond)
        #[arg(long = "max-n", default_value_t = 16)]
        max_n: usize,
        #[arg(long)]
        out: Option<PathBuf>,
    },
}

#[derive(Debug, Clone, Copy, ValueEnum)]
enum FormatArg {
    Csv,
    Json,
}

impl From<FormatArg> for Format {
    fn from(f: FormatArg) -> Self {
        match f {
            FormatArg::Csv => Format::Csv,
            FormatArg::Json => Format::Json,
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
enum ModeArg {
    Exact,
    Interval,
    Both,
}

#[derive(Debug)]
enum CliError {
    Validation(String),
    Mismatch(usize),
    Io(io::Error),
}

impl From<io::Error> for CliError {
    fn from(e: io::Error) -> Self {
        Self::Io(e)
    }
}

impl From<consec::Error> for CliError {
    fn from(e: consec::Error) -> Self {
        Self::Validation(e.to_string())
    }
}

fn main() {
    let cli = match Cli::try_parse() {
        Ok(cli) => cli,
        Err(e) => {
            let code = match e.kind() {
                ErrorKind::DisplayHelp | ErrorKind::DisplayVersion => 0,
                _ => 1,
            };
            let _ = e.print();
            std::process::exit(code);
        }
    };
    let code = match run(cli) {
        Ok(()) => 0,
        Err(CliError::Validation(msg)) => {
            eprintln!("error: {msg}");
            1
        }
        Err(CliError::Io(e)) => {
            eprintln!("error: {e}");
            1
        }
        Err(CliError::Mismatch(count)) => {
            eprintln!("error: {count} verification mismatches");
            2
        }
    };
    std::process::exit(code);
}

fn run(cli: Cli) -> Result<(), CliError> {
    match cli.command {
        Command::Coeffs { n, k, format, out } => {
            let table = coeffs_table(n, k)?;
            write_table(&table, format.into(), &out)
        }
        Command::Bounds { n, k, format, out } => {
            let table = bounds_output_table(n, k)?;
            write_table(&table, format.into(), &out)
        }
        Command::Reliability { n, k, p, mode, format, out } => {
            let table = reliability_table(n, k, &p, mode)?;
            write_table(&table, format.into(), &out)
        }
        Command::Errors { n, format, out } => {
            let table = errors_table(n)?;
            write_table(&table, format.into(), &out)?;
            report_bounded_counts(n);
            Ok(())
        }
        Command::Verify { max_n, out } => run_verify(max_n, &out),
    }
}

fn write_table(table: &Table, format: Format, out: &Option<PathBuf>) -> Result<(), CliError> {
    with_sink(out, |w| table.write(format, w).map_err(CliError::from))
}

fn with_sink(
    out: &Option<PathBuf>,
    body: impl FnOnce(&mut dyn Write) -> Result<(), CliError>,
) -> Result<(), CliError> {
    match out {
        Some(path) => {
            let mut w = BufWriter::new(File::create(path)?);
            body(&mut w)?;
            w.flush()?;
        }
        None => {
            let stdout = io::stdout();
            let mut w = BufWriter::new(stdout.lock());
            body(&mut w)?;
            w.flush()?;
        }
    }
    Ok(())
}

fn system(n: usize, k: usize) -> Result<SystemParams, CliError> {
    SystemParams::new(n, k).map_err(CliError::from)
}

fn coeffs_table(n: usize, k: usize) -> Result<Table, CliError> {
    let params = system(n, k)?;
    let mut table = Table::new(vec!["n", "k", "i", "region", "value"]);
    for report in coefficient_table(params) {
        let value = match report.value {
            CoefficientValue::Exact(v) => v.to_string(),
            CoefficientValue::Interval { .. } => unreachable!("coefficient_table is exact"),
        };
        table.push(vec![
            Cell::Index(n),
            Cell::Index(k),
            Cell::Index(report.index),
            Cell::Text(report.region.to_string()),
            Cell::Text(value),
        ]);
    }
    Ok(table)
}

fn bounds_output_table(n: usize, k: usize) -> Result<Table, CliError> {
    let params = system(n, k)?;
    let mut table = Table::new(vec!["n", "k", "i", "applicable", "lower", "upper", "exact"]);
    for pair in bounds_table(params) {
        let exact = coefficient_exact(params, pair.index).expect("index within 0..=n");
        table.push(vec![
            Cell::Index(n),
            Cell::Index(k),
            Cell::Index(pair.index),
            Cell::Bool(pair.applicable),
            Cell::Text(pair.lower.to_string()),
            Cell::Text(pair.upper.to_string()),
            Cell::Text(exact.to_string()),
        ]);
    }
    Ok(table)
}

fn reliability_table(n: usize, k: usize, p_spec: &str, mode: ModeArg) -> Result<Table, CliError> {
    let params = system(n, k)?;
    let points = parse_p_grid(p_spec).map_err(CliError::Validation)?;
    let poly = ReliabilityPolynomial::new(params);
    let envelope_rows = if mode != ModeArg::Exact {
        let mut lower_row = Vec::with_capacity(n + 1);
        let mut upper_row = Vec::with_capacity(n + 1);
        for pair in bounds_table(params) {
            lower_row.push(pair.lower);
            upper_row.push(pair.upper);
        }
        Some((lower_row, upper_row))
    } else {
        None
    };
    let columns = match mode {
        ModeArg::Exact => vec!["n", "k", "p", "r"],
        ModeArg::Interval => vec!["n", "k", "p", "r_lower", "r_upper"],
        ModeArg::Both => vec!["n", "k", "p", "r", "r_lower", "r_upper"],
    };
    let mut table = Table::new(columns);
    for point in points {
        let p = ProbabilityValue::Rational(point.clone());
        let mut row = vec![
            Cell::Index(n),
            Cell::Index(k),
            Cell::Float(rational_to_f64(&point)),
        ];
        if mode != ModeArg::Interval {
            let r = poly.eval(&p)?;
            row.push(Cell::Float(r.to_f64()));
        }
        if let Some((lower_row, upper_row)) = &envelope_rows {
            row.push(Cell::Float(bernstein_eval(lower_row, &p)?.to_f64()));
            row.push(Cell::Float(bernstein_eval(upper_row, &p)?.to_f64()));
        }
        table.push(row);
    }
    Ok(table)
}

/// Which bound's relative error an `errors` row reports for a given k.
#[derive(Clone, Copy, PartialEq)]
enum Band {
    Lower,
    Upper,
    None,
}

fn errors_table(n: usize) -> Result<Table, CliError> {
    if n < 1 {
        return Err(CliError::Validation("n must be at least 1".into()));
    }
    let mut table = Table::new(vec!["n", "k", "i", "bound", "rel_error"]);
    for k in 1..=n {
        let params = SystemParams::new(n, k).expect("1 <= k <= n");
        let range = bounded_range(params);
        // k = 1, 2, and n have exact closed forms for every coefficient, so
        // those bands report zero error even where generic bounds exist.
        let band = if k <= 2 {
            Band::None
        } else if k >= n / 2 || k < n / 3 {
            Band::Lower
        } else {
            Band::Upper
        };
        for i in 0..=n {
            let in_range = matches!(range, Some((lo, hi)) if (lo..=hi).contains(&i));
            let (bound, err) = if band == Band::None || !in_range {
                (Cell::Text("exact".into()), Cell::Float(0.0))
            } else {
                let exact = coefficient_exact(params, i).expect("index within 0..=n");
                let (tag, bound_value) = match band {
                    Band::Lower => ("lower", lower_bound(params, i).expect("in bounded range")),
                    Band::Upper => ("upper", upper_bound(params, i).expect("in bounded range")),
                    Band::None => unreachable!(),
                };
                if exact.is_zero() {
                    eprintln!(
                        "warning: zero coefficient inside the bounded range at (n={n}, k={k}, i={i})"
                    );
                    (Cell::Text(tag.into()), Cell::Text("nan".into()))
                } else {
                    // 1 - bound/N, exactly, then rounded once for output.
                    let rel = BigRational::new(
                        BigInt::from(exact.clone()) - BigInt::from(bound_value),
                        BigInt::from(exact),
                    );
                    (Cell::Text(tag.into()), Cell::Float(rational_to_f64(&rel)))
                }
            };
            table.push(vec![Cell::Index(n), Cell::Index(k), Cell::Index(i), bound, err]);
        }
    }
    Ok(table)
}

/// Stderr note with the bounded-pair tally: the grand total and the per-k
/// interval sizes. All remaining (k, i) pairs are computed exactly.
fn report_bounded_counts(n: usize) {
    let mut per_k = Vec::new();
    let mut total = 0usize;
    for k in 1..=n {
        let params = SystemParams::new(n, k).expect("1 <= k <= n");
        if let Some((lo, hi)) = bounded_range(params) {
            let size = hi - lo + 1;
            per_k.push(format!("k={k}: {size}"));
            total += size;
        }
    }
    if per_k.is_empty() {
        eprintln!("note: n={n}: no (k, i) pair has a bounded range; every coefficient is exact");
    } else {
        eprintln!(
            "note: n={n}: bounded ranges cover {total} (k, i) pairs ({})",
            per_k.join(", ")
        );
    }
}

fn run_verify(max_n: usize, out: &Option<PathBuf>) -> Result<(), CliError> {
    if !(1..=MAX_DP_N).contains(&max_n) {
        return Err(CliError::Validation(format!(
            "--max-n must be between 1 and {MAX_DP_N}, got {max_n}"
        )));
    }
    let mut mismatches = 0usize;
    with_sink(out, |w| {
        mismatches = verify::run(max_n, w)?.len();
        Ok(())
    })?;
    if mismatches > 0 {
        return Err(CliError::Mismatch(mismatches));
    }
    Ok(())
}

/// Probability grid syntax: a bare decimal, a comma list, or an inclusive
/// arithmetic progression "start:step:end".
fn parse_p_grid(spec: &str) -> Result<Vec<BigRational>, String> {
    const MAX_POINTS: usize = 100_000;
    if spec.contains(':') {
        let parts: Vec<&str> = spec.split(':').collect();
        let [start, step, end] = parts.as_slice() else {
            return Err(format!("grid '{spec}' must have the form start:step:end"));
        };
        let start = probability(start)?;
        let end = probability(end)?;
        let step = parse_decimal_rational(step.trim()).map_err(|e| e.to_string())?;
        if !step.is_positive() {
            return Err("grid step must be positive".into());
        }
        if start > end {
            return Err("grid start exceeds its end".into());
        }
        let mut points = Vec::new();
        let mut p = start;
        while p <= end {
            points.push(p.clone());
            if points.len() > MAX_POINTS {
                return Err(format!("grid has more than {MAX_POINTS} points"));
            }
            p += &step;
        }
        Ok(points)
    } else if spec.contains(',') {
        spec.split(',').map(probability).collect()
    } else {
        Ok(vec![probability(spec)?])
    }
}

fn probability(s: &str) -> Result<BigRational, String> {
    match ProbabilityValue::parse_decimal(s.trim()) {
        Ok(ProbabilityValue::Rational(r)) => Ok(r),
        Ok(ProbabilityValue::Float(_)) => unreachable!("parse_decimal yields rationals"),
        Err(e) => Err(e.to_string()),
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn ratio(num: i64, den: i64) -> BigRational {
        BigRational::new(BigInt::from(num), BigInt::from(den))
    }

    #[test]
    fn grid_forms() {
        assert_eq!(parse_p_grid("0.5").unwrap(), vec![ratio(1, 2)]);
        assert_eq!(
            parse_p_grid("0.1,0.9").unwrap(),
            vec![ratio(1, 10), ratio(9, 10)]
        );
        let grid = parse_p_grid("0:0.01:1").unwrap();
        assert_eq!(grid.len(), 101);
        assert_eq!(grid[0], ratio(0, 1));
        assert_eq!(grid[100], ratio(1, 1));
        // End not on the lattice: stop below it.
        let grid = parse_p_grid("0:0.4:1").unwrap();
        assert_eq!(grid, vec![ratio(0, 1), ratio(2, 5), ratio(4, 5)]);
    }

    #[test]
    fn grid_rejects_bad_specs() {
        assert!(parse_p_grid("0:0:1").is_err());
        assert!(parse_p_grid("0.9:0.1:0.2").is_err());
        assert!(parse_p_grid("0:0.1").is_err());
        assert!(parse_p_grid("1.5").is_err());
        assert!(parse_p_grid("-0.5").is_err());
        assert!(parse_p_grid("0,x").is_err());
    }

    #[test]
    fn coeffs_rows_match_known_table() {
        let table = coeffs_table(3, 2).unwrap();
        let values: Vec<String> = table
            .rows
            .iter()
            .map(|row| match &row[4] {
                Cell::Text(s) => s.clone(),
                _ => unreachable!(),
            })
            .collect();
        assert_eq!(values, vec!["0", "1", "3", "1"]);
    }

    #[test]
    fn errors_bands_for_n32() {
        let table = errors_table(32).unwrap();
        // Nonzero errors appear only for 2 < k < 10, inside bounded ranges.
        for row in &table.rows {
            let (k, err) = match (&row[1], &row[4]) {
                (Cell::Index(k), Cell::Float(e)) => (*k, *e),
                _ => unreachable!(),
            };
            if !(3..10).contains(&k) {
                assert_eq!(err, 0.0, "unexpected error outside the bounded bands");
            }
        }
        let nonzero = table
            .rows
            .iter()
            .any(|row| matches!(&row[4], Cell::Float(e) if *e != 0.0));
        assert!(nonzero, "bounded bands must report nonzero errors");
    }
}

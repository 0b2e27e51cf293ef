//! Reliability polynomial assembly and evaluation.
//!
//! `R(k, n; p) = sum_i N(n, k, i) p^i q^(n-i)` with `q = 1 - p`. Evaluation
//! is exact when `p` is rational (the result is a reduced rational) and
//! floating-point otherwise. Float summation runs over a fixed order, from
//! `i = n` down to `i = 0`, so results are reproducible bit for bit.
//! `q` is always derived as `1 - p` in the same arithmetic as `p`.

use num_bigint::{BigInt, BigUint};
use num_rational::BigRational;
use num_traits::{One, Signed, ToPrimitive, Zero};

use crate::bounds::{bounded_range, bounds_table};
use crate::coefficients::coefficient_exact;
use crate::pascal::binomial;
use crate::{Error, Result, SystemParams};

/// Component success probability, exact or floating.
///
/// Decimal strings should go through [`ProbabilityValue::parse_decimal`],
/// which keeps them exact ("0.3" becomes 3/10, not the nearest double).
#[derive(Debug, Clone, PartialEq)]
pub enum ProbabilityValue {
    Rational(BigRational),
    Float(f64),
}

impl ProbabilityValue {
    pub fn from_rational(r: BigRational) -> Result<Self> {
        let p = Self::Rational(r);
        p.validate()?;
        Ok(p)
    }

    pub fn from_f64(x: f64) -> Result<Self> {
        let p = Self::Float(x);
        p.validate()?;
        Ok(p)
    }

    /// Exact rational from a plain decimal string: digits with at most one
    /// decimal point ("0.25", ".5", "1"). No signs, no exponents.
    pub fn parse_decimal(s: &str) -> Result<Self> {
        Self::from_rational(parse_decimal_rational(s)?)
    }

    pub fn to_f64(&self) -> f64 {
        match self {
            Self::Rational(r) => rational_to_f64(r),
            Self::Float(x) => *x,
        }
    }

    fn validate(&self) -> Result<()> {
        let ok = match self {
            Self::Rational(r) => !r.is_negative() && *r <= BigRational::one(),
            Self::Float(x) => x.is_finite() && (0.0..=1.0).contains(x),
        };
        if ok {
            Ok(())
        } else {
            Err(Error::InvalidProbability {
                reason: format!("{} outside [0, 1]", self.describe()),
            })
        }
    }

    fn describe(&self) -> String {
        match self {
            Self::Rational(r) => r.to_string(),
            Self::Float(x) => x.to_string(),
        }
    }
}

/// An evaluated reliability, in the same arithmetic as the input `p`.
#[derive(Debug, Clone, PartialEq)]
pub enum ReliabilityValue {
    Rational(BigRational),
    Float(f64),
}

impl ReliabilityValue {
    pub fn to_f64(&self) -> f64 {
        match self {
            Self::Rational(r) => rational_to_f64(r),
            Self::Float(x) => *x,
        }
    }

    fn clamp_unit(self) -> Self {
        match self {
            Self::Float(x) => Self::Float(x.clamp(0.0, 1.0)),
            exact => exact,
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum EvalMode {
    Exact,
    Bounded,
}

/// Outcome of a reliability evaluation. `value` is present whenever the
/// exact polynomial was evaluated; `interval` whenever any coefficient was
/// replaced by its bounds (collapsing to the exact value when none were).
#[derive(Debug, Clone, PartialEq)]
pub struct ReliabilityResult {
    pub value: Option<ReliabilityValue>,
    pub interval: Option<(ReliabilityValue, ReliabilityValue)>,
    pub mode: EvalMode,
}

/// Exact coefficient row for one `(n, k)`, reusable across many `p`.
///
/// The row is immutable after construction, so a shared reference can be
/// evaluated from any number of threads.
#[derive(Debug, Clone)]
pub struct ReliabilityPolynomial {
    params: SystemParams,
    coefficients: Vec<BigUint>,
}

impl ReliabilityPolynomial {
    pub fn new(params: SystemParams) -> Self {
        let coefficients = (0..=params.n())
            .map(|i| coefficient_exact(params, i).expect("index within 0..=n"))
            .collect();
        Self { params, coefficients }
    }

    pub fn params(&self) -> SystemParams {
        self.params
    }

    pub fn coefficients(&self) -> &[BigUint] {
        &self.coefficients
    }

    pub fn eval(&self, p: &ProbabilityValue) -> Result<ReliabilityValue> {
        Ok(bernstein_eval(&self.coefficients, p)?.clamp_unit())
    }
}

/// Raw evaluation of `sum_i values[i] p^i q^(n-i)` with `n = values.len()-1`.
///
/// Rational `p` yields the exact reduced rational; float `p` accumulates in
/// descending `i` with iterated-product powers.
pub fn bernstein_eval(values: &[BigUint], p: &ProbabilityValue) -> Result<ReliabilityValue> {
    assert!(!values.is_empty(), "empty coefficient row");
    p.validate()?;
    let n = values.len() - 1;
    match p {
        ProbabilityValue::Rational(r) => {
            // p = a/b reduced, q = (b-a)/b: sum c_i a^i (b-a)^(n-i) over b^n.
            let a = r.numer().clone();
            let b = r.denom().clone();
            let c = &b - &a;
            let a_pows = power_table(&a, n);
            let c_pows = power_table(&c, n);
            let mut acc = BigInt::zero();
            for i in (0..=n).rev() {
                acc += BigInt::from(values[i].clone()) * &a_pows[i] * &c_pows[n - i];
            }
            Ok(ReliabilityValue::Rational(BigRational::new(acc, big_pow(&b, n))))
        }
        ProbabilityValue::Float(x) => {
            let q = 1.0 - x;
            let mut p_pows = vec![1.0f64; n + 1];
            let mut q_pows = vec![1.0f64; n + 1];
            for j in 1..=n {
                p_pows[j] = p_pows[j - 1] * x;
                q_pows[j] = q_pows[j - 1] * q;
            }
            let mut acc = 0.0f64;
            for i in (0..=n).rev() {
                let c = values[i].to_f64().unwrap_or(f64::INFINITY);
                acc += c * p_pows[i] * q_pows[n - i];
            }
            Ok(ReliabilityValue::Float(acc))
        }
    }
}

/// Exact reliability `R(k, n; p)`.
pub fn reliability(params: SystemParams, p: &ProbabilityValue) -> Result<ReliabilityResult> {
    let value = ReliabilityPolynomial::new(params).eval(p)?;
    Ok(ReliabilityResult { value: Some(value), interval: None, mode: EvalMode::Exact })
}

/// Reliability envelope `[R_L, R_U]` from the coefficient bounds: bounded
/// indices contribute their lower (resp. upper) bound, all others their
/// exact value. When no index is bounded the interval collapses onto the
/// exact reliability.
pub fn reliability_interval(params: SystemParams, p: &ProbabilityValue) -> Result<ReliabilityResult> {
    let table = bounds_table(params);
    if bounded_range(params).is_none() {
        let row: Vec<BigUint> = table.into_iter().map(|b| b.lower).collect();
        let value = bernstein_eval(&row, p)?.clamp_unit();
        return Ok(ReliabilityResult {
            value: Some(value.clone()),
            interval: Some((value.clone(), value)),
            mode: EvalMode::Exact,
        });
    }
    let mut lower_row = Vec::with_capacity(table.len());
    let mut upper_row = Vec::with_capacity(table.len());
    for pair in table {
        lower_row.push(pair.lower);
        upper_row.push(pair.upper);
    }
    let lo = bernstein_eval(&lower_row, p)?.clamp_unit();
    let hi = bernstein_eval(&upper_row, p)?.clamp_unit();
    Ok(ReliabilityResult { value: None, interval: Some((lo, hi)), mode: EvalMode::Bounded })
}

/// Special-case reliability for `k` in `{1, 2, n}`:
///
/// * `k = 1`: only the all-success sequence survives, `R = p^n`.
/// * `k = 2`: `N(n, 2, i) = C(i+1, n-i)`.
/// * `k = n`: everything but the all-failure sequence, `R = 1 - q^n`.
///
/// Evaluates through the shared Bernstein routine, so it agrees with
/// [`reliability`] bit for bit in float mode too.
pub fn reliability_closed_form(
    params: SystemParams,
    p: &ProbabilityValue,
) -> Result<ReliabilityResult> {
    let (n, k) = (params.n(), params.k());
    let row: Vec<BigUint> = if k == 1 {
        let mut row = vec![BigUint::zero(); n + 1];
        row[n] = BigUint::one();
        row
    } else if k == 2 {
        (0..=n)
            .map(|i| binomial(i as i64 + 1, (n - i) as i64))
            .collect()
    } else if k == n {
        (0..=n)
            .map(|i| if i == 0 { BigUint::zero() } else { binomial(n as i64, i as i64) })
            .collect()
    } else {
        return Err(Error::NoClosedForm { n, k });
    };
    let value = bernstein_eval(&row, p)?.clamp_unit();
    Ok(ReliabilityResult { value: Some(value), interval: None, mode: EvalMode::Exact })
}

/// Plain decimal string ("0.25", ".5", "1") to an exact rational. No signs,
/// no exponents, no range restriction.
pub fn parse_decimal_rational(s: &str) -> Result<BigRational> {
    let reject = |reason: String| Error::InvalidProbability { reason };
    let (int_part, frac_part) = match s.split_once('.') {
        Some((a, b)) => (a, b),
        None => (s, ""),
    };
    if int_part.is_empty() && frac_part.is_empty() {
        return Err(reject(format!("'{s}' has no digits")));
    }
    if !int_part.bytes().all(|b| b.is_ascii_digit())
        || !frac_part.bytes().all(|b| b.is_ascii_digit())
    {
        return Err(reject(format!("'{s}' is not a plain decimal number")));
    }
    let digits: String = [int_part, frac_part].concat();
    let numer: BigInt = digits.parse().expect("digit string");
    let denom = big_pow(&BigInt::from(10), frac_part.len());
    Ok(BigRational::new(numer, denom))
}

/// Nearest double to an arbitrary-precision rational, safe for numerators
/// and denominators far beyond the double range.
pub fn rational_to_f64(r: &BigRational) -> f64 {
    if r.is_zero() {
        return 0.0;
    }
    let num = r.numer().magnitude();
    let den = r.denom().magnitude();
    // Scale the integer quotient to carry ~80 significant bits, convert,
    // then undo the scaling with exact powers of two.
    let shift = 80 + den.bits() as i64 - num.bits() as i64;
    let quotient: BigUint = if shift >= 0 {
        (num << shift as u64) / den
    } else {
        num / (den << (-shift) as u64)
    };
    let magnitude = scale_by_pow2(quotient.to_f64().unwrap_or(f64::INFINITY), -shift);
    if r.is_negative() {
        -magnitude
    } else {
        magnitude
    }
}

fn scale_by_pow2(x: f64, e: i64) -> f64 {
    if (-1022..=1023).contains(&e) {
        x * pow2(e)
    } else if e < 0 {
        // Two steps so sub-normal magnitudes survive the scaling.
        x * pow2(-1022) * pow2(e + 1022)
    } else {
        x * pow2(1023) * pow2(e - 1023)
    }
}

fn pow2(e: i64) -> f64 {
    match e {
        e if e > 1023 => f64::INFINITY,
        e if e >= -1022 => f64::from_bits(((e + 1023) as u64) << 52),
        e if e >= -1074 => f64::from_bits(1u64 << (e + 1074)),
        _ => 0.0,
    }
}

fn power_table(base: &BigInt, n: usize) -> Vec<BigInt> {
    let mut pows = Vec::with_capacity(n + 1);
    pows.push(BigInt::one());
    for j in 1..=n {
        let next = &pows[j - 1] * base;
        pows.push(next);
    }
    pows
}

fn big_pow(base: &BigInt, exp: usize) -> BigInt {
    num_traits::pow(base.clone(), exp)
}

//! Working-precision policy for all arithmetic.
//!
//! Everything downstream computes at `decimal_digits + guard_digits` decimal
//! digits and reports at `decimal_digits`. Stop indices and tail bounds come
//! from analytic estimates, never from "looks converged" heuristics, so the
//! guard digits only have to absorb rounding, not truncation.

use crate::error::{Error, Result};
use rug::{Complex, Float, Rational};

/// Smallest accepted output precision.
pub const MIN_DECIMAL_DIGITS: u32 = 30;

const LOG2_10: f64 = 3.321928094887362;

/// Output accuracy plus guard digits; owns the binary working precision.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct PrecisionContext {
    decimal_digits: u32,
    guard_digits: u32,
    bits: u32,
}

impl PrecisionContext {
    pub fn new(decimal_digits: u32, guard_digits: u32) -> Result<Self> {
        if decimal_digits < MIN_DECIMAL_DIGITS {
            return Err(Error::InvalidParameter(format!(
                "decimal_digits must be >= {MIN_DECIMAL_DIGITS}, got {decimal_digits}"
            )));
        }
        if guard_digits == 0 {
            return Err(Error::InvalidParameter(
                "guard_digits must be positive".into(),
            ));
        }
        let working = decimal_digits + guard_digits;
        let bits = (f64::from(working) * LOG2_10).ceil() as u32 + 8;
        Ok(Self {
            decimal_digits,
            guard_digits,
            bits,
        })
    }

    pub fn decimal_digits(&self) -> u32 {
        self.decimal_digits
    }

    pub fn guard_digits(&self) -> u32 {
        self.guard_digits
    }

    pub fn working_digits(&self) -> u32 {
        self.decimal_digits + self.guard_digits
    }

    /// Binary precision used for every Float and Complex.
    pub fn bits(&self) -> u32 {
        self.bits
    }

    /// A context with the same requested digits but `factor`-times the bits,
    /// for escalation inside iterative kernels.
    pub(crate) fn escalated(&self, factor: u32) -> Self {
        Self {
            decimal_digits: self.decimal_digits,
            guard_digits: self.guard_digits,
            bits: self.bits * factor,
        }
    }

    pub fn float_from_f64(&self, v: f64) -> Float {
        Float::with_val(self.bits, v)
    }

    pub fn float_from_u64(&self, v: u64) -> Float {
        Float::with_val(self.bits, v)
    }

    pub fn float_from_i64(&self, v: i64) -> Float {
        Float::with_val(self.bits, v)
    }

    pub fn zero(&self) -> Float {
        Float::new(self.bits)
    }

    pub fn one(&self) -> Float {
        Float::with_val(self.bits, 1)
    }

    /// 10^e at working precision.
    pub fn ten_pow(&self, e: i64) -> Float {
        let ten = Float::with_val(self.bits, 10);
        Float::with_val(self.bits, rug::ops::Pow::pow(&ten, e as i32))
    }

    /// 10^(-decimal_digits): the reporting accuracy.
    pub fn report_eps(&self) -> Float {
        self.ten_pow(-i64::from(self.decimal_digits))
    }

    /// Parse a decimal string ("0.25", "1e-30", "3/4") at working precision.
    pub fn parse(&self, s: &str) -> Result<Float> {
        if let Some((num, den)) = s.split_once('/') {
            let n = self.parse(num.trim())?;
            let d = self.parse(den.trim())?;
            if d.is_zero() {
                return Err(Error::Parse(format!("zero denominator in {s:?}")));
            }
            return Ok(Float::with_val(self.bits, &n / &d));
        }
        let inc = Float::parse(s).map_err(|e| Error::Parse(format!("{s:?}: {e}")))?;
        Ok(Float::with_val(self.bits, inc))
    }

    pub fn complex(&self, re: Float, im: Float) -> Complex {
        Complex::with_val(self.bits, (re, im))
    }

    pub fn complex_from_real(&self, re: &Float) -> Complex {
        Complex::with_val(self.bits, (re, &Float::new(self.bits)))
    }

    pub fn complex_zero(&self) -> Complex {
        Complex::new(self.bits)
    }
}

impl Default for PrecisionContext {
    fn default() -> Self {
        Self::new(50, 20).expect("default context is valid")
    }
}

/// Parse a decimal string into an exact rational ("0.25" -> 1/4, "3/4" -> 3/4).
pub fn parse_decimal_rational(s: &str) -> Result<Rational> {
    let s = s.trim();
    if let Some((num, den)) = s.split_once('/') {
        let n = parse_decimal_rational(num)?;
        let d = parse_decimal_rational(den)?;
        if d == 0 {
            return Err(Error::Parse(format!("zero denominator in {s:?}")));
        }
        return Ok(n / d);
    }
    let (mantissa, exp10) = match s.split_once(['e', 'E']) {
        Some((m, e)) => {
            let e: i64 = e
                .parse()
                .map_err(|_| Error::Parse(format!("bad exponent in {s:?}")))?;
            (m, e)
        }
        None => (s, 0),
    };
    let (int_part, frac_part) = match mantissa.split_once('.') {
        Some((i, f)) => (i, f),
        None => (mantissa, ""),
    };
    let digits: String = format!("{int_part}{frac_part}");
    if digits.is_empty() || digits == "-" || digits == "+" {
        return Err(Error::Parse(format!("empty number {s:?}")));
    }
    let numer = rug::Integer::parse(&digits)
        .map_err(|e| Error::Parse(format!("{s:?}: {e}")))?;
    let numer = rug::Integer::from(numer);
    let shift = exp10 - frac_part.len() as i64;
    let mut r = Rational::from(numer);
    let ten = Rational::from(10);
    if shift >= 0 {
        for _ in 0..shift {
            r *= &ten;
        }
    } else {
        for _ in 0..(-shift) {
            r /= &ten;
        }
    }
    Ok(r)
}

//! q-calculus kernels: q-Pochhammer symbols, rising factorials, Gaussian
//! binomial coefficients.
//!
//! The infinite product (a;q)_inf is stopped from the analytic bound
//! |log prod_{j>=J} (1 - a q^j)| <= 2|a| q^J / (1 - q), valid once
//! |a| q^J <= 1/2, so the truncation error is provable rather than guessed.

use crate::error::{Error, Result};
use crate::precision::PrecisionContext;
use rug::ops::Pow;
use rug::{Complex, Float, Rational};

/// The base q, validated to lie strictly inside (0, 1).
#[derive(Clone, Debug, PartialEq)]
pub struct QParameter {
    q: Float,
}

impl QParameter {
    pub fn new(q: Float) -> Result<Self> {
        if !(q > 0u32 && q < 1u32) {
            return Err(Error::InvalidParameter(format!(
                "q must satisfy 0 < q < 1, got {q}"
            )));
        }
        Ok(Self { q })
    }

    pub fn from_str(s: &str, ctx: &PrecisionContext) -> Result<Self> {
        Self::new(ctx.parse(s)?)
    }

    pub fn from_f64(q: f64, ctx: &PrecisionContext) -> Result<Self> {
        Self::new(ctx.float_from_f64(q))
    }

    pub fn value(&self) -> &Float {
        &self.q
    }
}

/// |z| via hypot, at the context precision.
pub(crate) fn cabs(z: &Complex, ctx: &PrecisionContext) -> Float {
    let re = Float::with_val(ctx.bits(), z.real());
    re.hypot(z.imag())
}

/// (a;q)_k = prod_{j=0}^{k-1} (1 - a q^j), complex a.
pub fn qpochhammer_finite(a: &Complex, q: &QParameter, k: usize, ctx: &PrecisionContext) -> Complex {
    let bits = ctx.bits();
    let mut prod = Complex::with_val(bits, (1, 0));
    let mut aq = a.clone();
    for _ in 0..k {
        let factor = Complex::with_val(bits, 1u32 - &aq);
        prod *= factor;
        aq *= q.value();
    }
    prod
}

/// Real-argument variant of [`qpochhammer_finite`].
pub fn qpochhammer_finite_real(a: &Float, q: &QParameter, k: usize, ctx: &PrecisionContext) -> Float {
    let bits = ctx.bits();
    let mut prod = Float::with_val(bits, 1);
    let mut aq = a.clone();
    for _ in 0..k {
        prod *= Float::with_val(bits, 1u32 - &aq);
        aq *= q.value();
    }
    prod
}

/// (a;q)_inf with absolute error at most eps.
///
/// Returns exactly 0 when some factor vanishes (a q^j = 1). Errors with
/// `DivergentInput` if |a q^j| = 1 without the factor vanishing, since the
/// logarithm bound used for the stop index does not apply there.
pub fn qpochhammer_infinite(
    a: &Complex,
    q: &QParameter,
    eps: &Float,
    ctx: &PrecisionContext,
) -> Result<Complex> {
    if !(eps.is_sign_positive() && !eps.is_zero()) {
        return Err(Error::InvalidParameter("eps must be positive".into()));
    }
    let bits = ctx.bits();
    let one_minus_q = Float::with_val(bits, 1u32 - q.value());
    let mut prod = Complex::with_val(bits, (1, 0));
    let mut aq = a.clone();
    // Factor magnitudes shrink geometrically, so the j cap is generous.
    for _ in 0..100_000u32 {
        let mag = cabs(&aq, ctx);
        if mag == 1u32 {
            if aq.real() == &1u32 && aq.imag().is_zero() {
                return Ok(ctx.complex_zero());
            }
            return Err(Error::DivergentInput(
                "|a q^j| = 1 with nonvanishing factor".into(),
            ));
        }
        if mag <= 0.5 {
            // |log of remaining product| <= 2 |a q^j| / (1 - q)
            let delta = Float::with_val(bits, 2 * &mag) / &one_minus_q;
            let err = Float::with_val(bits, delta.exp_ref()) - 1u32;
            let bound = cabs(&prod, ctx) * err;
            if bound <= *eps {
                return Ok(prod);
            }
        }
        let factor = Complex::with_val(bits, 1u32 - &aq);
        if factor.real().is_zero() && factor.imag().is_zero() {
            return Ok(ctx.complex_zero());
        }
        prod *= factor;
        aq *= q.value();
    }
    Err(Error::NoConvergence(100_000))
}

/// Real-argument variant of [`qpochhammer_infinite`].
pub fn qpochhammer_infinite_real(
    a: &Float,
    q: &QParameter,
    eps: &Float,
    ctx: &PrecisionContext,
) -> Result<Float> {
    let z = ctx.complex_from_real(a);
    let p = qpochhammer_infinite(&z, q, eps, ctx)?;
    Ok(Float::with_val(ctx.bits(), p.real()))
}

/// (a)_k = a (a+1) ... (a+k-1), with (a)_0 = 1.
pub fn rising_factorial(a: &Float, k: usize, ctx: &PrecisionContext) -> Float {
    let bits = ctx.bits();
    let mut prod = Float::with_val(bits, 1);
    for j in 0..k {
        prod *= Float::with_val(bits, a + j as u32);
    }
    prod
}

/// Gaussian binomial [n choose k]_q = (q;q)_n / ((q;q)_k (q;q)_{n-k}).
pub fn gauss_binomial(n: usize, k: usize, q: &QParameter, ctx: &PrecisionContext) -> Result<Float> {
    if k > n {
        return Err(Error::OutOfRange(format!("k = {k} exceeds n = {n}")));
    }
    let table = qq_table(q, n, ctx);
    Ok(Float::with_val(
        ctx.bits(),
        &table[n] / &(Float::with_val(ctx.bits(), &table[k] * &table[n - k])),
    ))
}

/// Exact-rational Gaussian binomial for rational q.
pub fn gauss_binomial_exact(n: usize, k: usize, q: &Rational) -> Result<Rational> {
    if k > n {
        return Err(Error::OutOfRange(format!("k = {k} exceeds n = {n}")));
    }
    let pochhammer = |m: usize| -> Rational {
        let mut prod = Rational::from(1);
        let mut qj = q.clone();
        for _ in 0..m {
            prod *= Rational::from(1 - &qj);
            qj *= q;
        }
        prod
    };
    Ok(pochhammer(n) / (pochhammer(k) * pochhammer(n - k)))
}

/// Table of (q;q)_i for i = 0..=n.
pub(crate) fn qq_table(q: &QParameter, n: usize, ctx: &PrecisionContext) -> Vec<Float> {
    let bits = ctx.bits();
    let mut table = Vec::with_capacity(n + 1);
    table.push(Float::with_val(bits, 1));
    let mut qj = q.value().clone();
    for i in 1..=n {
        let prev = &table[i - 1];
        table.push(Float::with_val(bits, prev * &Float::with_val(bits, 1u32 - &qj)));
        qj *= q.value();
    }
    table
}

/// q^e for real e, at working precision.
pub(crate) fn q_pow(q: &QParameter, e: &Float, ctx: &PrecisionContext) -> Float {
    Float::with_val(ctx.bits(), q.value().pow(e))
}

#[cfg(test)]
mod tests {
    use super::*;

    fn ctx() -> PrecisionContext {
        PrecisionContext::default()
    }

    fn qp(s: &str, ctx: &PrecisionContext) -> QParameter {
        QParameter::from_str(s, ctx).unwrap()
    }

    #[test]
    fn q_parameter_rejects_out_of_range() {
        let c = ctx();
        assert!(QParameter::from_f64(0.0, &c).is_err());
        assert!(QParameter::from_f64(1.0, &c).is_err());
        assert!(QParameter::from_f64(-0.5, &c).is_err());
        assert!(QParameter::from_f64(0.5, &c).is_ok());
    }

    #[test]
    fn finite_pochhammer_empty_product() {
        let c = ctx();
        let a = c.complex(c.parse("0.7").unwrap(), c.zero());
        let p = qpochhammer_finite(&a, &qp("0.5", &c), 0, &c);
        assert_eq!(p, 1u32);
    }

    #[test]
    fn finite_pochhammer_single_factor() {
        let c = ctx();
        let a = c.parse("0.7").unwrap();
        let p = qpochhammer_finite_real(&a, &qp("0.5", &c), 1, &c);
        let diff = Float::with_val(c.bits(), &p - &c.parse("0.3").unwrap());
        assert!(diff.abs() < c.ten_pow(-60));
    }

    #[test]
    fn finite_pochhammer_three_factors() {
        // Direct product oracle at double precision:
        // (1 - 0.7)(1 - 0.35)(1 - 0.175) = 0.160875 exactly (= 1287/8000).
        let oracle: f64 = (1.0 - 0.7) * (1.0 - 0.7 * 0.5) * (1.0 - 0.7 * 0.25);
        assert!((oracle - 0.160875).abs() < 1e-15);
        let c = ctx();
        let a = c.parse("0.7").unwrap();
        let p = qpochhammer_finite_real(&a, &qp("0.5", &c), 3, &c);
        let diff = Float::with_val(c.bits(), &p - &c.parse("0.160875").unwrap());
        assert!(diff.abs() < c.ten_pow(-60));
    }

    #[test]
    fn infinite_pochhammer_all_factors_one() {
        let c = ctx();
        let a = c.complex_zero();
        let p = qpochhammer_infinite(&a, &qp("0.5", &c), &c.ten_pow(-40), &c).unwrap();
        assert_eq!(p, 1u32);
    }

    #[test]
    fn infinite_pochhammer_zero_factor() {
        let c = ctx();
        let a = c.complex(c.one(), c.zero());
        let p = qpochhammer_infinite(&a, &qp("0.5", &c), &c.ten_pow(-40), &c).unwrap();
        assert!(p.real().is_zero() && p.imag().is_zero());
    }

    #[test]
    fn infinite_pochhammer_half() {
        // Oracle: direct product until the factor deviates from 1 by < 1e-30,
        // computed independently of the stop-index machinery.
        let c = ctx();
        let bits = c.bits();
        let q = c.parse("0.5").unwrap();
        let mut oracle = Float::with_val(bits, 1);
        let mut qj = q.clone();
        while qj > c.ten_pow(-31) {
            oracle *= Float::with_val(bits, 1u32 - &qj);
            qj *= &q;
        }
        // Spec-printed digits.
        let printed = c.parse("0.2887880951").unwrap();
        let dd = Float::with_val(bits, &oracle - &printed);
        assert!(dd.abs() < c.ten_pow(-9));

        let a = c.complex(q.clone(), c.zero());
        let p = qpochhammer_infinite(&a, &qp("0.5", &c), &c.ten_pow(-40), &c).unwrap();
        let diff = Float::with_val(bits, p.real() - &oracle);
        assert!(diff.abs() < c.ten_pow(-29));
    }

    #[test]
    fn infinite_pochhammer_divergent_input() {
        // a q = -1 exactly: |a q^1| = 1 but the factor is 2, not 0.
        let c = ctx();
        let a = c.complex(c.float_from_i64(-2), c.zero());
        let err = qpochhammer_infinite(&a, &qp("0.5", &c), &c.ten_pow(-40), &c);
        assert!(matches!(err, Err(Error::DivergentInput(_))));
    }

    #[test]
    fn rising_factorial_values() {
        let c = ctx();
        assert_eq!(rising_factorial(&c.float_from_u64(3), 0, &c), 1u32);
        assert_eq!(rising_factorial(&c.float_from_u64(3), 4, &c), 360u32);
        let half = c.parse("0.5").unwrap();
        let v = rising_factorial(&half, 2, &c);
        assert_eq!(v, 0.75);
    }

    #[test]
    fn gauss_binomial_values() {
        let c = ctx();
        let q = qp("0.3", &c);
        assert_eq!(gauss_binomial(5, 0, &q, &c).unwrap(), 1u32);
        let v = gauss_binomial(2, 1, &q, &c).unwrap();
        let diff = Float::with_val(c.bits(), &v - &c.parse("1.3").unwrap());
        assert!(diff.abs() < c.ten_pow(-60));
        assert!(matches!(
            gauss_binomial(3, 4, &q, &c),
            Err(Error::OutOfRange(_))
        ));
    }

    #[test]
    fn gauss_binomial_4_2_expansion_oracle() {
        // Oracle: expand [4 choose 2]_q = 1 + q + 2q^2 + q^3 + q^4 at q = 0.5.
        let q64: f64 = 0.5;
        let oracle = 1.0 + q64 + 2.0 * q64.powi(2) + q64.powi(3) + q64.powi(4);
        assert!((oracle - 2.1875).abs() < 1e-15);
        let c = ctx();
        let v = gauss_binomial(4, 2, &qp("0.5", &c), &c).unwrap();
        let diff = Float::with_val(c.bits(), &v - &c.parse("2.1875").unwrap());
        assert!(diff.abs() < c.ten_pow(-60));
    }

    #[test]
    fn gauss_binomial_exact_symmetry() {
        let q = Rational::from((3, 10));
        for n in 0..=12usize {
            for k in 0..=n {
                let lhs = gauss_binomial_exact(n, k, &q).unwrap();
                let rhs = gauss_binomial_exact(n, n - k, &q).unwrap();
                assert_eq!(lhs, rhs);
            }
        }
    }

    #[test]
    fn pochhammer_recurrence() {
        // (a;q)_{k+1} = (a;q)_k (1 - a q^k)
        let c = ctx();
        let q = qp("0.37", &c);
        let a = c.parse("-1.25").unwrap();
        for k in 0..20usize {
            let lhs = qpochhammer_finite_real(&a, &q, k + 1, &c);
            let qk = Float::with_val(c.bits(), rug::ops::Pow::pow(q.value(), k as u32));
            let factor = Float::with_val(c.bits(), 1u32 - &Float::with_val(c.bits(), &a * &qk));
            let rhs = qpochhammer_finite_real(&a, &q, k, &c) * factor;
            let diff = Float::with_val(c.bits(), &lhs - &rhs);
            assert!(diff.abs() < c.ten_pow(-60));
        }
    }

    #[test]
    fn pascal_type_recurrence() {
        // [n k]_q = [n-1 k-1]_q + q^k [n-1 k]_q for n <= 30
        let c = ctx();
        let q = qp("0.62", &c);
        for n in 1..=30usize {
            for k in 1..n {
                let lhs = gauss_binomial(n, k, &q, &c).unwrap();
                let qk = Float::with_val(c.bits(), rug::ops::Pow::pow(q.value(), k as u32));
                let rhs = gauss_binomial(n - 1, k - 1, &q, &c).unwrap()
                    + qk * gauss_binomial(n - 1, k, &q, &c).unwrap();
                let diff = Float::with_val(c.bits(), &lhs - &rhs);
                assert!(diff.abs() < c.ten_pow(-55));
            }
        }
    }

    #[test]
    fn infinite_agrees_with_long_finite() {
        let c = ctx();
        let q = qp("0.5", &c);
        let a = c.complex(c.parse("0.3").unwrap(), c.parse("0.1").unwrap());
        let eps = c.ten_pow(-35);
        let inf = qpochhammer_infinite(&a, &q, &eps, &c).unwrap();
        let fin = qpochhammer_finite(&a, &q, 200, &c);
        let diff = Complex::with_val(c.bits(), &inf - &fin);
        assert!(cabs(&diff, &c) < eps);
    }
}

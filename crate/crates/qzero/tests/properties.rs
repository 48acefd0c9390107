//! Property tests for the arithmetic kernels and the PF oracles.

use proptest::prelude::*;
use qzero::precision::PrecisionContext;
use qzero::qcore::{
    gauss_binomial, qpochhammer_finite, qpochhammer_finite_real, qpochhammer_infinite,
    QParameter,
};
use qzero::series::{evaluate, rogers_szego, CoefficientFamily};
use qzero::totalpos::{is_pf_window, is_pf_window_exact, pf_via_roots, scale_sequence};
use rug::{Complex, Float, Rational};

fn ctx() -> PrecisionContext {
    PrecisionContext::default()
}

fn tol(c: &PrecisionContext, digits: i64) -> Float {
    c.ten_pow(-digits)
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(48))]

    #[test]
    fn pochhammer_recurrence_holds(a in -3.0f64..3.0, qv in 0.05f64..0.95, k in 0usize..25) {
        let c = ctx();
        let q = QParameter::from_f64(qv, &c).unwrap();
        let af = c.float_from_f64(a);
        let lhs = qpochhammer_finite_real(&af, &q, k + 1, &c);
        let qk = Float::with_val(c.bits(), rug::ops::Pow::pow(q.value(), k as u32));
        let factor = Float::with_val(c.bits(), 1u32 - &Float::with_val(c.bits(), &af * &qk));
        let rhs = qpochhammer_finite_real(&af, &q, k, &c) * factor;
        let diff = Float::with_val(c.bits(), &lhs - &rhs).abs();
        // relative to the product magnitude
        let scale = Float::with_val(c.bits(), lhs.abs_ref()) + 1u32;
        prop_assert!(diff < scale * tol(&c, 55));
    }

    #[test]
    fn gauss_binomial_symmetry(n in 0usize..24, qv in 0.05f64..0.95, k_seed in 0usize..24) {
        let c = ctx();
        let k = k_seed % (n + 1);
        let q = QParameter::from_f64(qv, &c).unwrap();
        let lhs = gauss_binomial(n, k, &q, &c).unwrap();
        let rhs = gauss_binomial(n, n - k, &q, &c).unwrap();
        let diff = Float::with_val(c.bits(), &lhs - &rhs).abs();
        let scale = Float::with_val(c.bits(), lhs.abs_ref()) + 1u32;
        prop_assert!(diff < scale * tol(&c, 50));
    }

    #[test]
    fn infinite_matches_deep_finite(re in -2.0f64..2.0, im in -2.0f64..2.0, qv in 0.1f64..0.8) {
        let c = ctx();
        let q = QParameter::from_f64(qv, &c).unwrap();
        let a = c.complex(c.float_from_f64(re), c.float_from_f64(im));
        let eps = c.ten_pow(-35);
        // |a q^j| = 1 exactly does not occur for these grids
        let inf = qpochhammer_infinite(&a, &q, &eps, &c).unwrap();
        let deep = qpochhammer_finite(&a, &q, 600, &c);
        let diff = Complex::with_val(c.bits(), &inf - &deep);
        let m = Float::with_val(c.bits(), diff.real().clone().hypot(diff.imag()));
        prop_assert!(m < eps);
    }

    #[test]
    fn rogers_szego_symmetric_in_x_y(x in -2.0f64..2.0, y in -2.0f64..2.0, qv in 0.1f64..0.9, n in 0usize..16) {
        let c = ctx();
        let q = QParameter::from_f64(qv, &c).unwrap();
        let xf = c.float_from_f64(x);
        let yf = c.float_from_f64(y);
        let lhs = rogers_szego(n, &xf, &yf, &q, &c);
        let rhs = rogers_szego(n, &yf, &xf, &q, &c);
        let diff = Float::with_val(c.bits(), &lhs - &rhs).abs();
        let scale = Float::with_val(c.bits(), lhs.abs_ref()) + 1u32;
        prop_assert!(diff < scale * tol(&c, 50));
    }

    #[test]
    fn evaluate_agrees_across_eps(zre in -3.0f64..3.0, zim in -3.0f64..3.0, qv in 0.2f64..0.8, av in -1.5f64..1.5) {
        let c = ctx();
        let q = QParameter::from_f64(qv, &c).unwrap();
        let fam = CoefficientFamily::aq_alpha(c.one(), c.float_from_f64(av), q).unwrap();
        let z = c.complex(c.float_from_f64(zre), c.float_from_f64(zim));
        let v20 = evaluate(&fam, &z, &c.ten_pow(-20), &c).unwrap();
        let v40 = evaluate(&fam, &z, &c.ten_pow(-40), &c).unwrap();
        let diff = Complex::with_val(c.bits(), &v20 - &v40);
        let m = Float::with_val(c.bits(), diff.real().clone().hypot(diff.imag()));
        prop_assert!(m < Float::with_val(c.bits(), 2u32 * &c.ten_pow(-20)));
    }
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(40))]

    #[test]
    fn minor_oracle_matches_root_oracle(numers in prop::collection::vec(0i64..=48, 1..=5)) {
        prop_assume!(numers.iter().any(|&n| n > 0));
        let c = ctx();
        let rationals: Vec<Rational> = numers.iter().map(|&n| Rational::from((n, 12))).collect();
        let floats: Vec<Float> = rationals.iter().map(|r| Float::with_val(c.bits(), r)).collect();
        let window = numers.len() + 2;
        let minors = is_pf_window_exact(&rationals, window, window, &c).unwrap();
        let roots = pf_via_roots(&floats, &c).unwrap();
        prop_assert_eq!(minors.is_pf, roots);
    }

    #[test]
    fn scaling_preserves_verdict(numers in prop::collection::vec(0i64..=48, 1..=5), scale_pow in -2i32..=2) {
        prop_assume!(numers.iter().any(|&n| n > 0));
        let c = ctx();
        let floats: Vec<Float> = numers.iter().map(|&n| {
            Float::with_val(c.bits(), n) / Float::with_val(c.bits(), 12)
        }).collect();
        let window = numers.len() + 2;
        let t = c.ten_pow(-40);
        let base = is_pf_window(&floats, window, window, &t, &c).unwrap().is_pf;
        let factor = Float::with_val(c.bits(), rug::ops::Pow::pow(&Float::with_val(c.bits(), 3), scale_pow));
        let scaled = scale_sequence(&floats, &factor, &c).unwrap();
        let v = is_pf_window(&scaled, window, window, &t, &c).unwrap();
        prop_assert_eq!(v.is_pf, base);
    }
}

#[test]
fn partial_sum_roots_stable_between_truncations() {
    // roots of the degree-N truncation of AqAlpha(1, q^2, q=0.5) inside
    // |z| <= 5 move by < 1e-10 between N = 60 and N = 80
    let c = ctx();
    let q = QParameter::from_str("0.5", &c).unwrap();
    let fam = CoefficientFamily::aq_alpha(c.one(), c.parse("0.25").unwrap(), q).unwrap();
    let coeffs = fam.coefficients_upto(80, &c);
    let poly = |n: usize| -> Vec<Complex> {
        coeffs[..=n].iter().map(|v| c.complex_from_real(v)).collect()
    };
    let r60 = qzero::zeros::poly_roots(&poly(60), &c).unwrap();
    let r80 = qzero::zeros::poly_roots(&poly(80), &c).unwrap();
    let five = c.float_from_u64(5);
    let in5 = |roots: &[Complex]| -> Vec<Complex> {
        roots
            .iter()
            .filter(|z| Float::with_val(c.bits(), z.real().clone().hypot(z.imag())) < five)
            .cloned()
            .collect()
    };
    let a = in5(&r60);
    let b = in5(&r80);
    assert_eq!(a.len(), b.len());
    assert!(!a.is_empty());
    for (x, y) in a.iter().zip(b.iter()) {
        let d = Complex::with_val(c.bits(), x - y);
        let m = Float::with_val(c.bits(), d.real().clone().hypot(d.imag()));
        assert!(m < c.ten_pow(-10));
    }
}

//! Acceptance suite: one test per criterion, each printing a pass/fail line.
//! Run with `cargo test --test acceptance -- --nocapture` to see the lines.

use qzero::precision::PrecisionContext;
use qzero::qcore::QParameter;
use qzero::series::CoefficientFamily;
use qzero::suites::{self, SuiteReport};
use rug::{Complex, Float};
use std::time::Instant;

fn ctx() -> PrecisionContext {
    PrecisionContext::default()
}

fn report_criterion(n: usize, label: &str, pass: bool, detail: &str) {
    println!(
        "criterion {n} ({label}): {} — {detail}",
        if pass { "PASS" } else { "FAIL" }
    );
    assert!(pass, "criterion {n} ({label}) failed: {detail}");
}

fn suite_detail(s: &SuiteReport) -> String {
    let failing: Vec<&str> = s
        .checks
        .iter()
        .filter(|c| !c.pass)
        .map(|c| c.name.as_str())
        .collect();
    if failing.is_empty() {
        format!("{} checks passed", s.checks.len())
    } else {
        format!("failing: {}", failing.join(" | "))
    }
}

#[test]
fn criterion_01_theorem1_i_desk_check() {
    let c = ctx();
    let mut all = true;
    let mut details = Vec::new();
    for (l, alpha, q) in [(2u32, "1", "0.5"), (3, "1", "0.5"), (2, "0.5", "0.3")] {
        let alpha_f = c.parse(alpha).unwrap();
        let qp = QParameter::from_str(q, &c).unwrap();
        let started = Instant::now();
        let (checks, _) = suites::theorem1_i(l, &alpha_f, &qp, 8, &c).unwrap();
        let elapsed = started.elapsed();
        let ok = checks.iter().all(|ch| ch.pass) && elapsed.as_secs() < 60;
        all &= ok;
        details.push(format!(
            "(l={l}, alpha={alpha}, q={q}): {} in {:.2?}",
            if ok { "ok" } else { "failed" },
            elapsed
        ));
    }
    report_criterion(
        1,
        "theorem 1(i): first 8 zeros negative-real, confined, < 60 s each",
        all,
        &details.join("; "),
    );
}

#[test]
fn criterion_02_theorem1_ii_iii_desk_checks() {
    let c = ctx();
    let s2 = suites::suite_t1ii(&c).unwrap();
    let s3 = suites::suite_t1iii(&c).unwrap();
    let pass = s2.pass() && s3.pass();
    report_criterion(
        2,
        "theorem 1(ii)/(iii): first 5 zeros negative-real",
        pass,
        &format!("{}; {}", suite_detail(&s2), suite_detail(&s3)),
    );
}

#[test]
fn criterion_03_theorem_tt1_rs_and_sw() {
    let c = ctx();
    let rs = suites::suite_tt1_rs(&c).unwrap();
    let sw = suites::suite_tt1_sw(&c).unwrap();
    let pass = rs.pass() && sw.pass();
    report_criterion(
        3,
        "theorem tt1: RS zeros negative-real, SW zeros positive-real",
        pass,
        &format!("{}; {}", suite_detail(&rs), suite_detail(&sw)),
    );
}

#[test]
fn criterion_04_theorem2_k0_and_zeros() {
    let c = ctx();
    let s = suites::suite_t2(&c).unwrap();
    report_criterion(
        4,
        "theorem 2: certified K0, 6 negative-real zeros, order < 0.05",
        s.pass(),
        &suite_detail(&s),
    );
}

#[test]
fn criterion_05_klv_threshold_consistency() {
    let c = ctx();
    let s = suites::suite_klv_threshold(&c.one(), &c).unwrap();
    report_criterion(
        5,
        "KLV threshold: all real at q=0.50, conjugate pair at q=0.60",
        s.pass(),
        &suite_detail(&s),
    );
}

#[test]
fn criterion_06_order_formula_bands() {
    let c = ctx();
    let s = suites::suite_order_all(&c).unwrap();
    report_criterion(
        6,
        "order formula: 1/(k!)^2 in [0.45,0.55], 1/(k!)^4 in [0.20,0.30]",
        s.pass(),
        &suite_detail(&s),
    );
}

#[test]
fn criterion_07_identity_suite() {
    let c = ctx();
    let s = suites::suite_identities_all(&c).unwrap();
    report_criterion(
        7,
        "identity suite: residuals < 1e-30 across 100-draw grids",
        s.pass(),
        &suite_detail(&s),
    );
}

#[test]
fn criterion_08_pf_suite() {
    let c = ctx();
    let s = suites::suite_pf_all(&c).unwrap();
    report_criterion(
        8,
        "PF suite: minor batteries pass; root and minor oracles agree on 500 sequences",
        s.pass(),
        &suite_detail(&s),
    );
}

#[test]
fn criterion_09_hurwitz_stability() {
    let c = ctx();
    let q = QParameter::from_str("0.5", &c).unwrap();
    let fam = CoefficientFamily::aq_alpha(c.one(), c.parse("0.25").unwrap(), q).unwrap();
    let coeffs = fam.coefficients_upto(80, &c);
    let poly = |n: usize| -> Vec<Complex> {
        coeffs[..=n]
            .iter()
            .map(|v| c.complex_from_real(v))
            .collect()
    };
    let r60 = qzero::zeros::poly_roots(&poly(60), &c).unwrap();
    let r80 = qzero::zeros::poly_roots(&poly(80), &c).unwrap();
    // a fixed disk holding the first 8 zeros
    let disk = c.float_from_u64(100_000);
    let modulus =
        |z: &Complex| -> Float { Float::with_val(c.bits(), z.real().clone().hypot(z.imag())) };
    let in60: Vec<&Complex> = r60.iter().filter(|z| modulus(z) < disk).collect();
    let in80: Vec<&Complex> = r80.iter().filter(|z| modulus(z) < disk).collect();
    let mut pass = in60.len() == in80.len() && in60.len() >= 8;
    let mut worst = c.zero();
    for (a, b) in in60.iter().zip(in80.iter()) {
        let d = Complex::with_val(c.bits(), *a - *b);
        let m = modulus(&d);
        if m > worst {
            worst = m;
        }
    }
    pass &= worst < c.ten_pow(-10);
    report_criterion(
        9,
        "Hurwitz stability: zeros agree within 1e-10 between N=60 and N=80",
        pass,
        &format!(
            "{} zeros in disk, worst drift {}",
            in60.len(),
            qzero::report::float_dec(&worst, 4)
        ),
    );
}

#[test]
fn criterion_10_special_case_reduction() {
    let c = ctx();
    let (line, found) = suites::special_case_consistency(&c).unwrap();
    report_criterion(
        10,
        "special-case reduction: one globally consistent (s, convention) pair",
        line.pass,
        &format!("{} [{}]", line.detail, found.map(|m| m.to_string()).unwrap_or_default()),
    );
}

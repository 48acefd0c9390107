//! Polya-frequency testing: totally positive Toeplitz minor enumeration and
//! the nonpositive-root oracle.
//!
//! Minors of the Toeplitz matrix (a_{j-i}) are invariant under shifting rows
//! and columns together, so enumeration only visits representatives with
//! min(rows[0], cols[0]) = 0; the skipped minors are bit-identical repeats.
//! Rational input goes through fraction-free integer elimination, float input
//! through pivoted elimination at working precision.

use crate::error::{Error, Result};
use crate::precision::PrecisionContext;
use crate::poly::poly_roots;
use itertools::Itertools;
use rug::ops::Pow;
use rug::{Float, Integer, Rational};

/// Witness of a failed total-positivity test: a negative minor.
#[derive(Clone, Debug)]
pub struct MinorWitness {
    pub rows: Vec<usize>,
    pub cols: Vec<usize>,
    pub value: Float,
}

/// Result of a windowed total-positivity test.
#[derive(Clone, Debug)]
pub struct PfVerdict {
    pub is_pf: bool,
    pub order_tested: usize,
    pub window_tested: usize,
    pub witness: Option<MinorWitness>,
}

fn toeplitz_entry<'a>(seq: &'a [Float], i: usize, j: usize, zero: &'a Float) -> &'a Float {
    if j < i {
        return zero;
    }
    seq.get(j - i).unwrap_or(zero)
}

/// Pivoted Gaussian elimination determinant at working precision.
fn det_float(mut m: Vec<Vec<Float>>, ctx: &PrecisionContext) -> Float {
    let bits = ctx.bits();
    let n = m.len();
    let mut det = Float::with_val(bits, 1);
    let mut negate = false;
    for col in 0..n {
        let mut pivot = col;
        let mut best = Float::with_val(bits, m[col][col].abs_ref());
        for (r, row) in m.iter().enumerate().skip(col + 1) {
            let cand = Float::with_val(bits, row[col].abs_ref());
            if cand > best {
                best = cand;
                pivot = r;
            }
        }
        if best.is_zero() {
            return ctx.zero();
        }
        if pivot != col {
            m.swap(pivot, col);
            negate = !negate;
        }
        det *= &m[col][col];
        for r in col + 1..n {
            let factor = Float::with_val(bits, &m[r][col] / &m[col][col]);
            for c in col..n {
                let sub = Float::with_val(bits, &factor * &m[col][c]);
                m[r][c] -= sub;
            }
        }
    }
    if negate {
        -det
    } else {
        det
    }
}

/// Bareiss fraction-free determinant over integers.
fn det_bareiss(mut m: Vec<Vec<Integer>>) -> Integer {
    let n = m.len();
    if n == 0 {
        return Integer::from(1);
    }
    let mut negate = false;
    let mut prev = Integer::from(1);
    for k in 0..n - 1 {
        if m[k][k] == 0 {
            let swap = (k + 1..n).find(|&r| m[r][k] != 0);
            match swap {
                Some(r) => {
                    m.swap(k, r);
                    negate = !negate;
                }
                None => return Integer::from(0),
            }
        }
        for i in k + 1..n {
            for j in k + 1..n {
                let t = Integer::from(&m[k][k] * &m[i][j]) - Integer::from(&m[i][k] * &m[k][j]);
                let (q, r) = t.div_rem(prev.clone());
                debug_assert!(r == 0, "Bareiss division must be exact");
                m[i][j] = q;
            }
        }
        prev = m[k][k].clone();
    }
    let det = m[n - 1][n - 1].clone();
    if negate {
        -det
    } else {
        det
    }
}

fn validate_window(window: usize, order: usize) -> Result<()> {
    if window == 0 {
        return Err(Error::InvalidParameter("window must be positive".into()));
    }
    if order == 0 {
        return Err(Error::InvalidParameter("order must be positive".into()));
    }
    Ok(())
}

/// Enumerate all minors of the window x window Toeplitz matrix (a_{j-i}) up
/// to the given order; entries beyond the finite sequence are zero.
///
/// A verdict of `is_pf = false` carries the first negative minor found, in
/// deterministic (order, rows, cols) enumeration order.
pub fn is_pf_window(
    seq: &[Float],
    window: usize,
    order: usize,
    tol: &Float,
    ctx: &PrecisionContext,
) -> Result<PfVerdict> {
    validate_window(window, order)?;
    if seq.is_empty() {
        return Err(Error::InvalidParameter("sequence must be nonempty".into()));
    }
    if tol.is_sign_negative() {
        return Err(Error::InvalidParameter("tol must be nonnegative".into()));
    }
    let zero = ctx.zero();
    let order = order.min(window);
    let neg_tol = Float::with_val(ctx.bits(), -tol.clone());
    for p in 1..=order {
        for rows in (0..window).combinations(p) {
            for cols in (0..window).combinations(p) {
                if rows[0] > 0 && cols[0] > 0 {
                    continue; // shift-equivalent to a representative already seen
                }
                let m: Vec<Vec<Float>> = rows
                    .iter()
                    .map(|&i| {
                        cols.iter()
                            .map(|&j| toeplitz_entry(seq, i, j, &zero).clone())
                            .collect()
                    })
                    .collect();
                let d = det_float(m, ctx);
                if d < neg_tol {
                    return Ok(PfVerdict {
                        is_pf: false,
                        order_tested: order,
                        window_tested: window,
                        witness: Some(MinorWitness {
                            rows,
                            cols,
                            value: d,
                        }),
                    });
                }
            }
        }
    }
    Ok(PfVerdict {
        is_pf: true,
        order_tested: order,
        window_tested: window,
        witness: None,
    })
}

/// Like [`is_pf_window`], but for a truncated infinite sequence: errors with
/// `WindowTooLarge` instead of zero-padding when terms are missing.
pub fn is_pf_window_strict(
    seq: &[Float],
    window: usize,
    order: usize,
    tol: &Float,
    ctx: &PrecisionContext,
) -> Result<PfVerdict> {
    if window > seq.len() {
        return Err(Error::WindowTooLarge {
            window,
            available: seq.len(),
        });
    }
    is_pf_window(seq, window, order, tol, ctx)
}

/// Exact total-positivity test for rational sequences. All minors are
/// evaluated by fraction-free integer elimination, so the verdict carries no
/// tolerance at all.
pub fn is_pf_window_exact(
    seq: &[Rational],
    window: usize,
    order: usize,
    ctx: &PrecisionContext,
) -> Result<PfVerdict> {
    validate_window(window, order)?;
    if seq.is_empty() {
        return Err(Error::InvalidParameter("sequence must be nonempty".into()));
    }
    // Common denominator once: scaling a row*column-selected minor of the
    // scaled matrix multiplies its determinant by den^p > 0.
    let mut den = Integer::from(1);
    for r in seq {
        den.lcm_mut(r.denom());
    }
    let scaled: Vec<Integer> = seq
        .iter()
        .map(|r| {
            let v = Rational::from(r * Rational::from(&den));
            debug_assert!(v.denom() == &1);
            v.numer().clone()
        })
        .collect();
    let zero = Integer::from(0);
    let entry = |i: usize, j: usize| -> Integer {
        if j < i {
            zero.clone()
        } else {
            scaled.get(j - i).cloned().unwrap_or_else(|| zero.clone())
        }
    };
    let order = order.min(window);
    for p in 1..=order {
        for rows in (0..window).combinations(p) {
            for cols in (0..window).combinations(p) {
                if rows[0] > 0 && cols[0] > 0 {
                    continue;
                }
                let m: Vec<Vec<Integer>> = rows
                    .iter()
                    .map(|&i| cols.iter().map(|&j| entry(i, j)).collect())
                    .collect();
                let d = det_bareiss(m);
                if d < 0 {
                    // report the unscaled minor value d / den^p
                    let denp = Rational::from(&den).pow(p as u32);
                    let exact = Rational::from(d) / denp;
                    let value = Float::with_val(ctx.bits(), &exact);
                    return Ok(PfVerdict {
                        is_pf: false,
                        order_tested: order,
                        window_tested: window,
                        witness: Some(MinorWitness {
                            rows,
                            cols,
                            value,
                        }),
                    });
                }
            }
        }
    }
    Ok(PfVerdict {
        is_pf: true,
        order_tested: order,
        window_tested: window,
        witness: None,
    })
}

/// Lemma-2.2(i) oracle: a finite nonnegative sequence is PF iff its
/// generating polynomial has only nonpositive zeros. Leading zero entries
/// are stripped first (they contribute a z^m factor with zeros at 0).
pub fn pf_via_roots(seq: &[Float], ctx: &PrecisionContext) -> Result<bool> {
    if seq.iter().any(|v| v.is_sign_negative() && !v.is_zero()) {
        return Err(Error::InvalidParameter(
            "root oracle requires nonnegative entries".into(),
        ));
    }
    let lead = seq.iter().position(|v| !v.is_zero());
    let Some(lead) = lead else {
        return Err(Error::DegenerateAllZero);
    };
    let mut hi = seq.len();
    while hi > lead && seq[hi - 1].is_zero() {
        hi -= 1;
    }
    let poly = &seq[lead..hi];
    if poly.len() == 1 {
        return Ok(true);
    }
    let coeffs: Vec<rug::Complex> = poly.iter().map(|c| ctx.complex_from_real(c)).collect();
    let roots = poly_roots(&coeffs, ctx)?;
    let tol_base = ctx.ten_pow(-10);
    for root in &roots {
        let modulus = crate::qcore::cabs(root, ctx);
        let tol = Float::with_val(ctx.bits(), &tol_base * &Float::with_val(ctx.bits(), 1u32 + &modulus));
        let im = Float::with_val(ctx.bits(), root.imag().abs_ref());
        if im > tol || *root.real() > tol {
            return Ok(false);
        }
    }
    Ok(true)
}

/// Geometric rescaling a_k -> c^k a_k.
pub fn scale_sequence(seq: &[Float], c: &Float, ctx: &PrecisionContext) -> Result<Vec<Float>> {
    if !(c.is_sign_positive() && !c.is_zero()) {
        return Err(Error::InvalidParameter("scale factor must be positive".into()));
    }
    let bits = ctx.bits();
    let mut ck = Float::with_val(bits, 1);
    Ok(seq
        .iter()
        .map(|a| {
            let v = Float::with_val(bits, a * &ck);
            ck *= c;
            v
        })
        .collect())
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::precision::parse_decimal_rational;
    use crate::qcore::{qpochhammer_finite_real, QParameter};
    use rug::ops::Pow;

    fn ctx() -> PrecisionContext {
        PrecisionContext::default()
    }

    fn floats(vals: &[f64], c: &PrecisionContext) -> Vec<Float> {
        vals.iter().map(|v| c.float_from_f64(*v)).collect()
    }

    fn default_tol(c: &PrecisionContext) -> Float {
        c.ten_pow(-(c.decimal_digits() as i64 - 10))
    }

    #[test]
    fn binomial_squared_is_pf() {
        let c = ctx();
        let v = is_pf_window(&floats(&[1.0, 2.0, 1.0], &c), 4, 4, &default_tol(&c), &c).unwrap();
        assert!(v.is_pf);
        assert!(v.witness.is_none());
    }

    #[test]
    fn gap_sequence_witness() {
        // {1,0,1}: rows {0,1} x cols {1,2} gives det [[0,1],[1,0]] = -1.
        // Hand enumeration of all 2x2 minors confirms this is the first
        // negative one in lexicographic order.
        let c = ctx();
        let v = is_pf_window(&floats(&[1.0, 0.0, 1.0], &c), 3, 2, &default_tol(&c), &c).unwrap();
        assert!(!v.is_pf);
        let w = v.witness.expect("failing verdict carries a witness");
        assert_eq!(w.rows, vec![0, 1]);
        assert_eq!(w.cols, vec![1, 2]);
        assert_eq!(w.value, -1);
    }

    #[test]
    fn gaussian_over_factorial_is_pf() {
        // {q^{k^2}/k!} at q = 0.5, k = 0..9
        let c = ctx();
        let q = c.parse("0.5").unwrap();
        let seq: Vec<Float> = (0..10u32)
            .map(|k| {
                let qk2 = Float::with_val(c.bits(), (&q).pow(k * k));
                qk2 / Float::with_val(c.bits(), Float::factorial(k))
            })
            .collect();
        let v = is_pf_window_strict(&seq, 10, 4, &c.ten_pow(-40), &c).unwrap();
        assert!(v.is_pf, "witness: {:?}", v.witness);
    }

    #[test]
    fn strict_window_errors_when_short() {
        let c = ctx();
        let seq = floats(&[1.0, 1.0], &c);
        let r = is_pf_window_strict(&seq, 5, 2, &default_tol(&c), &c);
        assert!(matches!(r, Err(Error::WindowTooLarge { window: 5, available: 2 })));
    }

    #[test]
    fn exact_matches_float_on_gap_sequence() {
        let c = ctx();
        let seq: Vec<Rational> = ["1", "0", "1"]
            .iter()
            .map(|s| parse_decimal_rational(s).unwrap())
            .collect();
        let v = is_pf_window_exact(&seq, 3, 2, &c).unwrap();
        assert!(!v.is_pf);
        let w = v.witness.unwrap();
        assert_eq!((w.rows, w.cols), (vec![0, 1], vec![1, 2]));
        assert_eq!(w.value, -1);
    }

    #[test]
    fn root_oracle_basic() {
        let c = ctx();
        assert!(pf_via_roots(&floats(&[1.0, 1.0], &c), &c).unwrap());
        assert!(!pf_via_roots(&floats(&[1.0, 0.0, 1.0], &c), &c).unwrap());
        assert!(pf_via_roots(&floats(&[1.0, 3.0, 3.0, 1.0], &c), &c).unwrap());
        assert!(matches!(
            pf_via_roots(&floats(&[0.0, 0.0], &c), &c),
            Err(Error::DegenerateAllZero)
        ));
    }

    #[test]
    fn root_oracle_strips_leading_zeros() {
        let c = ctx();
        assert!(pf_via_roots(&floats(&[0.0, 1.0, 2.0, 1.0], &c), &c).unwrap());
    }

    #[test]
    fn scale_sequence_values() {
        let c = ctx();
        let seq = floats(&[1.0, 2.0, 1.0], &c);
        let same = scale_sequence(&seq, &c.one(), &c).unwrap();
        assert_eq!(same[1], 2);
        let doubled = scale_sequence(&seq, &c.float_from_u64(2), &c).unwrap();
        assert_eq!(doubled[0], 1);
        assert_eq!(doubled[1], 4);
        assert_eq!(doubled[2], 4);
        assert!(scale_sequence(&seq, &c.zero(), &c).is_err());
    }

    #[test]
    fn scaling_leaves_verdict_invariant() {
        let c = ctx();
        let tol = default_tol(&c);
        let corpus: Vec<Vec<Float>> = vec![
            floats(&[1.0, 2.0, 1.0], &c),
            floats(&[1.0, 0.0, 1.0], &c),
            floats(&[2.0, 3.0, 1.0, 0.1], &c),
            floats(&[1.0, 1.0, 1.0, 1.0], &c),
        ];
        for seq in corpus {
            let base = is_pf_window(&seq, seq.len() + 2, seq.len() + 2, &tol, &c)
                .unwrap()
                .is_pf;
            for cval in ["0.1", "1", "7"] {
                let cf = c.parse(cval).unwrap();
                let scaled = scale_sequence(&seq, &cf, &c).unwrap();
                let v = is_pf_window(&scaled, seq.len() + 2, seq.len() + 2, &tol, &c).unwrap();
                assert_eq!(v.is_pf, base, "scale {cval} changed the verdict");
            }
        }
    }

    #[test]
    fn paper_rescaling_collapses_ql_sequence() {
        // {q^{-lk} (q^l;q)_k/(q;q)_k} scaled by c = q^l equals {(q^l;q)_k/(q;q)_k}
        let c = ctx();
        let q = QParameter::from_str("0.5", &c).unwrap();
        let l = 2u32;
        let ql = Float::with_val(c.bits(), q.value().pow(l));
        let seq: Vec<Float> = (0..8usize)
            .map(|k| {
                let top = qpochhammer_finite_real(&ql, &q, k, &c);
                let bottom = qpochhammer_finite_real(q.value(), &q, k, &c);
                let shift = Float::with_val(c.bits(), q.value().pow(-((l as i32) * (k as i32))));
                Float::with_val(c.bits(), &top / &bottom) * shift
            })
            .collect();
        let scaled = scale_sequence(&seq, &ql, &c).unwrap();
        for (k, v) in scaled.iter().enumerate() {
            let top = qpochhammer_finite_real(&ql, &q, k, &c);
            let bottom = qpochhammer_finite_real(q.value(), &q, k, &c);
            let want = Float::with_val(c.bits(), &top / &bottom);
            let diff = Float::with_val(c.bits(), v - &want);
            assert!(diff.abs() < c.ten_pow(-55));
        }
    }

    #[test]
    fn product_closure_lemma() {
        // PF x PF stays PF elementwise, with and without the k! weight
        let c = ctx();
        let tol = default_tol(&c);
        let a = floats(&[1.0, 2.0, 1.0], &c); // (1+z)^2
        let b = floats(&[1.0, 3.0, 3.0, 1.0], &c); // (1+z)^3
        let n = a.len().min(b.len());
        let mut prod = Vec::new();
        let mut prod_fact = Vec::new();
        for k in 0..n {
            let p = Float::with_val(c.bits(), &a[k] * &b[k]);
            let f = Float::with_val(c.bits(), Float::factorial(k as u32));
            prod_fact.push(Float::with_val(c.bits(), &p * &f));
            prod.push(p);
        }
        assert!(is_pf_window(&prod, 8, 3, &tol, &c).unwrap().is_pf);
        assert!(is_pf_window(&prod_fact, 8, 3, &tol, &c).unwrap().is_pf);
    }

    #[test]
    fn zhang_sequence_is_pf() {
        // {1/(q, q^{nu+1}; q)_k} for (nu, q) in {(-0.5, 0.3), (0, 0.5), (2, 0.7)}
        let c = ctx();
        for (nu, qs) in [("-0.5", "0.3"), ("0", "0.5"), ("2", "0.7")] {
            let q = QParameter::from_str(qs, &c).unwrap();
            let nu = c.parse(nu).unwrap();
            let e = Float::with_val(c.bits(), &nu + 1u32);
            let qnu = Float::with_val(c.bits(), q.value().pow(&e));
            let seq: Vec<Float> = (0..10usize)
                .map(|k| {
                    let d1 = qpochhammer_finite_real(q.value(), &q, k, &c);
                    let d2 = qpochhammer_finite_real(&qnu, &q, k, &c);
                    Float::with_val(c.bits(), 1u32 / &Float::with_val(c.bits(), &d1 * &d2))
                })
                .collect();
            let v = is_pf_window_strict(&seq, 10, 4, &c.ten_pow(-40), &c).unwrap();
            assert!(v.is_pf, "(nu,q)=({nu},{qs}) witness {:?}", v.witness);
        }
    }

    #[test]
    fn theorem1_composite_sequence_is_pf() {
        // {(q^l;q)_k q^{alpha k^2}/(q;q)_k} for (l,alpha,q) = (2,1,0.5), (3,0.5,0.3)
        let c = ctx();
        for (l, alpha, qs) in [(2u32, "1", "0.5"), (3u32, "0.5", "0.3")] {
            let q = QParameter::from_str(qs, &c).unwrap();
            let alpha = c.parse(alpha).unwrap();
            let ql = Float::with_val(c.bits(), q.value().pow(l));
            let seq: Vec<Float> = (0..10usize)
                .map(|k| {
                    let top = qpochhammer_finite_real(&ql, &q, k, &c);
                    let bottom = qpochhammer_finite_real(q.value(), &q, k, &c);
                    let e = Float::with_val(c.bits(), &alpha * &Float::with_val(c.bits(), (k * k) as u64));
                    let w = Float::with_val(c.bits(), q.value().pow(&e));
                    Float::with_val(c.bits(), &top / &bottom) * w
                })
                .collect();
            let v = is_pf_window_strict(&seq, 10, 4, &c.ten_pow(-40), &c).unwrap();
            assert!(v.is_pf, "(l,alpha,q)=({l},{alpha},{qs}) witness {:?}", v.witness);
        }
    }
}

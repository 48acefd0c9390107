//! Numerical verification of the identities, bounds, and limits the proofs
//! rely on. Left-hand sides are summed from the series definitions, right-hand
//! sides come from the q-Pochhammer product kernels, so agreement is evidence
//! rather than self-confirmation.

use crate::error::{Error, Result};
use crate::precision::PrecisionContext;
use crate::qcore::{
    self, cabs, qpochhammer_finite, qpochhammer_finite_real, qpochhammer_infinite,
    qpochhammer_infinite_real, rising_factorial, QParameter,
};
use crate::series::{self, CoefficientFamily, SwConvention};
use rug::ops::Pow;
use rug::{Complex, Float};

/// Outcome of one identity check.
#[derive(Clone, Debug)]
pub struct IdentityReport {
    pub name: String,
    pub lhs: Complex,
    pub rhs: Complex,
    pub abs_residual: Float,
    pub pass: bool,
    pub detail: String,
}

fn report(
    name: &str,
    lhs: Complex,
    rhs: Complex,
    eps: &Float,
    detail: String,
    ctx: &PrecisionContext,
) -> IdentityReport {
    let diff = Complex::with_val(ctx.bits(), &lhs - &rhs);
    let abs_residual = cabs(&diff, ctx);
    let pass = abs_residual <= *eps;
    IdentityReport {
        name: name.to_string(),
        lhs,
        rhs,
        abs_residual,
        pass,
        detail,
    }
}

fn inequality_report(
    name: &str,
    lhs: Complex,
    rhs: Complex,
    violation: Float,
    eps: &Float,
    detail: String,
) -> IdentityReport {
    let pass = violation <= *eps;
    IdentityReport {
        name: name.to_string(),
        lhs,
        rhs,
        abs_residual: violation,
        pass,
        detail,
    }
}

/// Absolute error target for the infinite products on the right-hand sides:
/// far below any eps the checks use, so the residual is dominated by the
/// series side.
fn product_eps(ctx: &PrecisionContext) -> Float {
    ctx.ten_pow(-(i64::from(ctx.working_digits()) - 8))
}

/// q-binomial theorem: sum (a;q)_k x^k/(q;q)_k = (ax;q)_inf / (x;q)_inf.
pub fn q_binomial_identity(
    a: &Complex,
    x: &Complex,
    q: &QParameter,
    eps: &Float,
    ctx: &PrecisionContext,
) -> Result<IdentityReport> {
    let bits = ctx.bits();
    let ax = cabs(x, ctx);
    if ax >= 1u32 {
        return Err(Error::DomainViolation("|x| must be below 1".into()));
    }
    // LHS: term recurrence t_{k+1} = t_k (1 - a q^k) x / (1 - q^{k+1});
    // the term magnitude is multiplicative, so the envelope
    // (1 + |a| q^k)|x|/(1 - q^{k+1}) (nonincreasing) certifies the tail.
    let r_target = Float::with_val(bits, 1u32 + &ax) / 2u32;
    let abs_a = cabs(a, ctx);
    let mut sum = Complex::new(bits);
    let mut term = Complex::with_val(bits, (1, 0));
    let mut qk = Float::with_val(bits, 1);
    let mut k = 0usize;
    loop {
        sum += &term;
        let next_qk = Float::with_val(bits, &qk * q.value());
        let aqk = Complex::with_val(bits, a * &qk);
        let numer = Complex::with_val(bits, 1u32 - &aqk);
        let denom = Float::with_val(bits, 1u32 - &next_qk);
        term *= Complex::with_val(bits, &numer * x);
        term /= &denom;
        let envelope = Float::with_val(
            bits,
            &Float::with_val(bits, 1u32 + &Float::with_val(bits, &abs_a * &next_qk)) * &ax,
        ) / Float::with_val(bits, 1u32 - &Float::with_val(bits, &next_qk * q.value()));
        let tm = cabs(&term, ctx);
        if envelope <= r_target {
            let tail = Float::with_val(bits, &tm / &Float::with_val(bits, 1u32 - &envelope));
            if tail <= Float::with_val(bits, eps / 2u32) {
                break;
            }
        }
        qk = next_qk;
        k += 1;
        if k > 1_000_000 {
            return Err(Error::NoConvergence(1_000_000));
        }
    }
    let peps = product_eps(ctx);
    let axq = Complex::with_val(bits, a * x);
    let num = qpochhammer_infinite(&axq, q, &peps, ctx)?;
    let den = qpochhammer_infinite(x, q, &peps, ctx)?;
    let rhs = Complex::with_val(bits, &num / &den);
    Ok(report(
        "q-binomial",
        sum,
        rhs,
        eps,
        String::new(),
        ctx,
    ))
}

/// Collapse of the q-binomial theorem at a = q^l, x = z q^{-l}:
/// sum (q^l;q)_k q^{-lk} z^k/(q;q)_k = 1/(z q^{-l}; q)_l.
pub fn collapse_check(
    l: u32,
    z: &Complex,
    q: &QParameter,
    eps: &Float,
    ctx: &PrecisionContext,
) -> Result<IdentityReport> {
    if l < 2 {
        return Err(Error::InvalidParameter("l must be >= 2".into()));
    }
    let bits = ctx.bits();
    let shift = Float::with_val(bits, q.value().pow(-(l as i32)));
    let x = Complex::with_val(bits, z * &shift);
    if cabs(&x, ctx) >= 1u32 {
        return Err(Error::DomainViolation("|z q^{-l}| must be below 1".into()));
    }
    let ql = Float::with_val(bits, q.value().pow(l));
    let a = ctx.complex_from_real(&ql);
    let inner = q_binomial_identity(&a, &x, q, eps, ctx)?;
    let fin = qpochhammer_finite(&x, q, l as usize, ctx);
    let rhs = Complex::with_val(bits, 1u32 / &fin);
    Ok(report(
        "collapse",
        inner.lhs,
        rhs,
        eps,
        format!("l={l}"),
        ctx,
    ))
}

/// Rogers-Szego generating function:
/// sum h_n(x,y|q) t^n/(q;q)_n = 1/((xt;q)_inf (yt;q)_inf).
pub fn rs_generating_function(
    x: &Float,
    y: &Float,
    q: &QParameter,
    t: &Float,
    eps: &Float,
    ctx: &PrecisionContext,
) -> Result<IdentityReport> {
    let bits = ctx.bits();
    let xt = Float::with_val(bits, x * t);
    let yt = Float::with_val(bits, y * t);
    let u = Float::with_val(bits, xt.abs_ref()).max(&Float::with_val(bits, yt.abs_ref()));
    if u >= 1u32 {
        return Err(Error::DomainViolation(
            "max(|xt|, |yt|) must be below 1".into(),
        ));
    }
    // majorant for |h_n t^n / (q;q)_n|: (n+1) u^n / (q;q)_inf^2
    let peps = product_eps(ctx);
    let qq_inf = qpochhammer_infinite_real(q.value(), q, &peps, ctx)? - &peps;
    let qq_inf2 = Float::with_val(bits, qq_inf.square_ref());
    let r_target = Float::with_val(bits, 1u32 + &u) / 2u32;
    let lhs = sum_with_majorant(
        eps,
        ctx,
        |n, c| {
            let hs = series::rogers_szego(n, x, y, q, c);
            let qq = qpochhammer_finite_real(q.value(), q, n, c);
            let tn = Float::with_val(c.bits(), t.pow(n as u32));
            Float::with_val(c.bits(), &hs * &tn) / qq
        },
        |n, c| {
            // M(n)
            Float::with_val(c.bits(), (n + 1) as u32)
                * Float::with_val(c.bits(), (&u).pow(n as u32))
                / &qq_inf2
        },
        |n, c| {
            // envelope M(n+1)/M(n)
            Float::with_val(c.bits(), (n + 2) as u32) * &u
                / Float::with_val(c.bits(), (n + 1) as u32)
        },
        &r_target,
    )?;
    let p1 = qpochhammer_infinite_real(&xt, q, &peps, ctx)?;
    let p2 = qpochhammer_infinite_real(&yt, q, &peps, ctx)?;
    let rhs = Float::with_val(bits, 1u32 / &Float::with_val(bits, &p1 * &p2));
    Ok(report(
        "rs-generating-function",
        ctx.complex_from_real(&lhs),
        ctx.complex_from_real(&rhs),
        eps,
        String::new(),
        ctx,
    ))
}

/// Alternating Stieltjes-Wigert generating function
/// sum (-1)^n g_n(x,y|q) q^{C(n,2)} t^n/(q;q)_n, compared against BOTH
/// candidate right-hand sides (xt,yt;q)_inf and the printed t-free
/// (x,y;q)_inf. `detail` records which matched.
pub fn sw_generating_function(
    x: &Float,
    y: &Float,
    q: &QParameter,
    t: &Float,
    eps: &Float,
    ctx: &PrecisionContext,
) -> Result<IdentityReport> {
    let bits = ctx.bits();
    let peps = product_eps(ctx);
    let qq_inf = qpochhammer_infinite_real(q.value(), q, &peps, ctx)? - &peps;
    let qq_inf2 = Float::with_val(bits, qq_inf.square_ref());
    let mut big = Float::with_val(bits, 1);
    for v in [x, y] {
        let av = Float::with_val(bits, v.abs_ref());
        if av > big {
            big = av;
        }
    }
    let abs_t = Float::with_val(bits, t.abs_ref());
    let base = Float::with_val(bits, &big * &abs_t);
    let r_target = Float::with_val(bits, 0.5f64);
    let quarter = Float::with_val(bits, 0.25f64);
    let lhs = sum_with_majorant(
        eps,
        ctx,
        |n, c| {
            let gs = series::stieltjes_wigert_gn(n, x, y, q, c);
            let qq = qpochhammer_finite_real(q.value(), q, n, c);
            let e = ((n * n) as i64 - n as i64) / 2;
            let qc = Float::with_val(c.bits(), q.value().pow(e as i32));
            let tn = Float::with_val(c.bits(), t.pow(n as u32));
            let sign = if n % 2 == 0 { 1i32 } else { -1i32 };
            Float::with_val(c.bits(), &gs * &qc) * tn * Float::with_val(c.bits(), sign) / qq
        },
        |n, c| {
            // M(n) = (n+1) (X|t|)^n q^{n^2/4 - n/2} / (q;q)_inf^2
            let e = Float::with_val(c.bits(), (n * n) as f64 / 4.0 - n as f64 / 2.0);
            Float::with_val(c.bits(), (n + 1) as u32)
                * Float::with_val(c.bits(), (&base).pow(n as u32))
                * qcore::q_pow(q, &e, c)
                / &qq_inf2
        },
        |n, c| {
            let e = Float::with_val(c.bits(), &quarter * &Float::with_val(c.bits(), 2 * n as u32));
            let e = Float::with_val(c.bits(), &e - &quarter);
            Float::with_val(c.bits(), (n + 2) as u32) * &base * qcore::q_pow(q, &e, c)
                / Float::with_val(c.bits(), (n + 1) as u32)
        },
        &r_target,
    )?;
    let xt = Float::with_val(bits, x * t);
    let yt = Float::with_val(bits, y * t);
    let variant_t = Float::with_val(
        bits,
        &qpochhammer_infinite_real(&xt, q, &peps, ctx)?
            * &qpochhammer_infinite_real(&yt, q, &peps, ctx)?,
    );
    let variant_printed = Float::with_val(
        bits,
        &qpochhammer_infinite_real(x, q, &peps, ctx)?
            * &qpochhammer_infinite_real(y, q, &peps, ctx)?,
    );
    let res_t = Float::with_val(bits, &lhs - &variant_t).abs();
    let res_printed = Float::with_val(bits, &lhs - &variant_printed).abs();
    let (detail, rhs, residual) = if res_t <= *eps && res_printed <= *eps {
        (
            "matches both (xt,yt;q)_inf and (x,y;q)_inf".to_string(),
            variant_t,
            res_t,
        )
    } else if res_t <= *eps {
        ("matches (xt,yt;q)_inf".to_string(), variant_t, res_t)
    } else if res_printed <= *eps {
        (
            "matches printed (x,y;q)_inf".to_string(),
            variant_printed,
            res_printed,
        )
    } else {
        (
            "matches neither candidate".to_string(),
            variant_t,
            res_t.clone().min(&res_printed),
        )
    };
    let pass = residual <= *eps;
    Ok(IdentityReport {
        name: "sw-generating-function".to_string(),
        lhs: ctx.complex_from_real(&lhs),
        rhs: ctx.complex_from_real(&rhs),
        abs_residual: residual,
        pass,
        detail,
    })
}

/// Which (shift, convention) pair matched in the special-case reduction.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct SwMatch {
    /// numerator of the shift s in halves: +1 for s = 1/2, -1 for s = -1/2
    pub s_half: i32,
    pub convention: SwConvention,
}

impl std::fmt::Display for SwMatch {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        let s = if self.s_half > 0 { "1/2" } else { "-1/2" };
        write!(f, "s={s}, e(k)={}", self.convention)
    }
}

/// Special-case reductions of A_q^(alpha):
/// (a) A_q^(1)(0;z) against an independent direct summation;
/// (b) A_q^(1/2)(q^{-n};z) against (q;q)_n S_n(z q^{s-n};q) over
///     s in {1/2, -1/2} and both exponent conventions.
pub fn aq_special_cases(
    n: usize,
    z: &Float,
    q: &QParameter,
    eps: &Float,
    ctx: &PrecisionContext,
) -> Result<(IdentityReport, Vec<SwMatch>)> {
    let bits = ctx.bits();
    // (a) series-module evaluation vs a local direct sum of q^{k^2} z^k/(q;q)_k
    let lhs_a = {
        let fam = CoefficientFamily::aq_alpha(ctx.one(), ctx.zero(), q.clone())?;
        series::evaluate_real(&fam, z, eps, ctx)?
    };
    let direct_a = {
        let az = Float::with_val(bits, z.abs_ref());
        let mut sum = Float::new(bits);
        let mut term = Float::with_val(bits, 1);
        let mut k = 0usize;
        loop {
            sum += &term;
            // t_{k+1} = t_k q^{2k+1} z / (1 - q^{k+1})
            let e = Float::with_val(bits, 2 * k as u32 + 1);
            let step = qcore::q_pow(q, &e, ctx);
            let denom = Float::with_val(bits, 1u32 - &Float::with_val(bits, q.value().pow(k as u32 + 1)));
            term *= Float::with_val(bits, &step * z) / denom;
            let env = Float::with_val(
                bits,
                &qcore::q_pow(q, &Float::with_val(bits, 2 * k as u32 + 3), ctx) * &az,
            ) / Float::with_val(bits, 1u32 - q.value());
            if env <= 0.5f64 {
                let tm = Float::with_val(bits, term.abs_ref());
                let tail = Float::with_val(bits, 2u32 * &tm);
                if tail <= Float::with_val(bits, eps / 2u32) {
                    break;
                }
            }
            k += 1;
            if k > 1_000_000 {
                return Err(Error::NoConvergence(1_000_000));
            }
        }
        sum
    };
    let res_a = Float::with_val(bits, &lhs_a - &direct_a).abs();

    // (b) four-way evaluation
    let a_param = Float::with_val(bits, q.value().pow(-(n as i32)));
    let fam_b = crate::series::CoefficientFamily::aq_alpha(
        ctx.parse("0.5")?,
        a_param,
        q.clone(),
    )?;
    let lhs_b = series::evaluate_real(&fam_b, z, eps, ctx)?;
    let qqn = qpochhammer_finite_real(q.value(), q, n, ctx);
    let mut matches = Vec::new();
    let mut best_residual: Option<Float> = None;
    for s_half in [1i32, -1i32] {
        for convention in [SwConvention::KSquared, SwConvention::KSquaredPlusK] {
            let e = Float::with_val(bits, s_half as f64 / 2.0 - n as f64);
            let argument = Float::with_val(bits, z * &qcore::q_pow(q, &e, ctx));
            let s_n = series::sw_classical(n, &argument, q, convention, ctx);
            let rhs = Float::with_val(bits, &qqn * &s_n);
            let res = Float::with_val(bits, &lhs_b - &rhs).abs();
            if res <= *eps {
                matches.push(SwMatch { s_half, convention });
            }
            best_residual = Some(match best_residual {
                Some(prev) if prev <= res => prev,
                _ => res,
            });
        }
    }
    let best_residual = best_residual.expect("four candidates evaluated");
    let residual = if res_a > best_residual {
        res_a.clone()
    } else {
        best_residual.clone()
    };
    let pass = res_a <= *eps && !matches.is_empty();
    let detail = if matches.is_empty() {
        "no (s, convention) pair matches".to_string()
    } else {
        matches
            .iter()
            .map(|m| m.to_string())
            .collect::<Vec<_>>()
            .join("; ")
    };
    let report = IdentityReport {
        name: "aq-special-cases".to_string(),
        lhs: ctx.complex_from_real(&lhs_b),
        rhs: ctx.complex_from_real(&lhs_a),
        abs_residual: residual,
        pass,
        detail,
    };
    Ok((report, matches))
}



/// Hopital limits at q_j = 1 - 2^{-j}: both finite-q expressions must
/// approach their q -> 1 limits at first order, i.e. the deltas shrink by a
/// factor >= 1.8 from j to j+1.
pub fn hopital_limits(
    l: u32,
    nu: &Float,
    k: usize,
    j: u32,
    ctx: &PrecisionContext,
) -> Result<IdentityReport> {
    if l < 2 {
        return Err(Error::InvalidParameter("l must be >= 2".into()));
    }
    if *nu < 0u32 {
        return Err(Error::InvalidParameter("nu must be >= 0".into()));
    }
    if j == 0 || j + 1 > 40 {
        return Err(Error::InvalidParameter("need 1 <= j and j+1 <= 40".into()));
    }
    let bits = ctx.bits();
    let deltas = |jj: u32| -> Result<(Float, Float)> {
        let mut qv = Float::with_val(bits, 1);
        qv >>= jj; // exact 2^{-jj}
        let qv = Float::with_val(bits, 1u32 - &qv);
        let q = QParameter::new(qv)?;
        let ql = Float::with_val(bits, q.value().pow(l));
        let lhs1 = Float::with_val(
            bits,
            &qpochhammer_finite_real(&ql, &q, k, ctx)
                / &qpochhammer_finite_real(q.value(), &q, k, ctx),
        );
        let lf = Float::with_val(bits, l);
        let rhs1 = rising_factorial(&lf, k, ctx)
            / Float::with_val(bits, Float::factorial(k as u32));
        let d1 = Float::with_val(bits, &lhs1 - &rhs1).abs();

        let one_minus_q = Float::with_val(bits, 1u32 - q.value());
        let numer = Float::with_val(bits, one_minus_q.pow(2 * k as u32));
        let e = Float::with_val(bits, nu + 1u32);
        let qnu = qcore::q_pow(&q, &e, ctx);
        let denom = Float::with_val(
            bits,
            &qpochhammer_finite_real(q.value(), &q, k, ctx)
                * &qpochhammer_finite_real(&qnu, &q, k, ctx),
        );
        let lhs2 = Float::with_val(bits, &numer / &denom);
        let nup1 = Float::with_val(bits, nu + 1u32);
        let rhs2 = Float::with_val(
            bits,
            1u32 / &Float::with_val(
                bits,
                &Float::with_val(bits, Float::factorial(k as u32))
                    * &rising_factorial(&nup1, k, ctx),
            ),
        );
        let d2 = Float::with_val(bits, &lhs2 - &rhs2).abs();
        Ok((d1, d2))
    };
    let (d1j, d2j) = deltas(j)?;
    let (d1j1, d2j1) = deltas(j + 1)?;
    let tiny = ctx.ten_pow(-(i64::from(ctx.working_digits()) - 10));
    let ratio = |top: &Float, bottom: &Float| -> Float {
        if bottom < &tiny && top < &tiny {
            // both deltas vanish (k = 0): treat as converged
            Float::with_val(bits, 1000)
        } else if bottom.is_zero() {
            Float::with_val(bits, 1000)
        } else {
            Float::with_val(bits, top / bottom)
        }
    };
    let r1 = ratio(&d1j, &d1j1);
    let r2 = ratio(&d2j, &d2j1);
    let threshold = Float::with_val(bits, 1.8f64);
    let rmin = r1.clone().min(&r2);
    let violation = if rmin >= threshold {
        ctx.zero()
    } else {
        Float::with_val(bits, &threshold - &rmin)
    };
    let eps = ctx.zero();
    let pass = violation <= eps;
    Ok(IdentityReport {
        name: "hopital-limits".to_string(),
        lhs: ctx.complex_from_real(&r1),
        rhs: ctx.complex_from_real(&r2),
        abs_residual: violation,
        pass,
        detail: format!("delta1 shrink {r1:.4}, delta2 shrink {r2:.4} (need >= 1.8)"),
    })
}

/// The factorial sandwich l! q^{C(l,2)} <= (q;q)_l/(1-q)^l <= l! and its
/// consequence (1-q)^l/(q;q)_l <= q^{-l^2/2}/l!.
pub fn pochhammer_inequality(
    l: u32,
    q: &QParameter,
    ctx: &PrecisionContext,
) -> Result<IdentityReport> {
    if l < 1 {
        return Err(Error::InvalidParameter("l must be >= 1".into()));
    }
    let bits = ctx.bits();
    let fact = Float::with_val(bits, Float::factorial(l));
    let binom2 = (l as u64) * (l as u64 - 1) / 2;
    let lower = Float::with_val(bits, &fact * &Float::with_val(bits, q.value().pow(binom2 as u32)));
    let one_minus_q = Float::with_val(bits, 1u32 - q.value());
    let mid = qpochhammer_finite_real(q.value(), q, l as usize, ctx)
        / Float::with_val(bits, one_minus_q.pow(l));
    let upper = fact.clone();
    // consequence
    let recip_mid = Float::with_val(bits, 1u32 / &mid);
    let e = Float::with_val(bits, -((l as f64) * (l as f64)) / 2.0);
    let bound = qcore::q_pow(q, &e, ctx) / &fact;
    let mut violation = ctx.zero();
    for (a, b) in [(&lower, &mid), (&mid, &upper), (&recip_mid, &bound)] {
        let gap = Float::with_val(bits, a - b);
        if gap > violation {
            violation = gap;
        }
    }
    // tiny rounding slack on exact-equality chains (l = 1)
    let eps = ctx.ten_pow(-(i64::from(ctx.working_digits()) - 8));
    Ok(inequality_report(
        "pochhammer-inequality",
        ctx.complex_from_real(&mid),
        ctx.complex_from_real(&upper),
        violation,
        &eps,
        format!("l={l}"),
    ))
}

/// Case-split growth bound |h_n(x,y|q)| <= a^n/(q;q)_inf for n <= n_max.
pub fn hn_bound_check(
    x: &Float,
    y: &Float,
    q: &QParameter,
    n_max: usize,
    ctx: &PrecisionContext,
) -> Result<IdentityReport> {
    if n_max > 200 {
        return Err(Error::InvalidParameter("n_max must be <= 200".into()));
    }
    let bits = ctx.bits();
    let a = series::rs_growth_base(x, y, q, ctx);
    let peps = product_eps(ctx);
    let qq_inf = qpochhammer_infinite_real(q.value(), q, &peps, ctx)? - &peps;
    let mut violation = ctx.zero();
    let mut worst_lhs = ctx.zero();
    let mut worst_rhs = ctx.one();
    let mut an = Float::with_val(bits, 1);
    for n in 0..=n_max {
        let hn = Float::with_val(bits, series::rogers_szego(n, x, y, q, ctx).abs_ref());
        let bound = Float::with_val(bits, &an / &qq_inf);
        let gap = Float::with_val(bits, &hn - &bound);
        if gap > violation {
            violation = gap;
            worst_lhs = hn;
            worst_rhs = bound;
        }
        an *= &a;
        let _ = n;
    }
    let eps = ctx.ten_pow(-(i64::from(ctx.working_digits()) - 8));
    Ok(inequality_report(
        "hn-bound",
        ctx.complex_from_real(&worst_lhs),
        ctx.complex_from_real(&worst_rhs),
        violation,
        &eps,
        format!("a = {}", crate::report::float_dec(&a, 12)),
    ))
}

/// Certified summation of sum_n term(n) given a majorant M with
/// |term(n)| <= M(n), M(n+1) = M(n) envelope(n), envelope nonincreasing.
fn sum_with_majorant(
    eps: &Float,
    ctx: &PrecisionContext,
    term: impl Fn(usize, &PrecisionContext) -> Float,
    majorant: impl Fn(usize, &PrecisionContext) -> Float,
    envelope: impl Fn(usize, &PrecisionContext) -> Float,
    r_target: &Float,
) -> Result<Float> {
    let bits = ctx.bits();
    let mut sum = Float::new(bits);
    let mut n = 0usize;
    loop {
        sum += term(n, ctx);
        let env_next = envelope(n + 1, ctx);
        if env_next <= *r_target {
            let m_next = majorant(n + 1, ctx);
            let tail =
                Float::with_val(bits, &m_next / &Float::with_val(bits, 1u32 - &env_next));
            if tail <= Float::with_val(bits, eps / 2u32) {
                return Ok(sum);
            }
        }
        n += 1;
        if n > 1_000_000 {
            return Err(Error::NoConvergence(1_000_000));
        }
    }
}

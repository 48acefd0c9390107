//! Polynomial root finding: Aberth-Ehrlich simultaneous iteration with
//! Newton-polygon initial guesses and a Newton polish.
//!
//! Initial moduli come from the upper convex hull of (k, log|c_k|), which
//! places each starting point near its own dominant-balance circle. That
//! matters here because the truncation polynomials have coefficients spanning
//! hundreds of orders of magnitude and root moduli growing geometrically.

use crate::error::{Error, Result};
use crate::precision::PrecisionContext;
use crate::qcore::cabs;
use rug::{Complex, Float};

fn is_zero(z: &Complex) -> bool {
    z.real().is_zero() && z.imag().is_zero()
}

/// All complex roots of sum_k coeffs[k] z^k, multiplicities by repetition,
/// sorted by modulus then argument.
///
/// Residual contract: every returned root satisfies
/// |p(z)| <= 10^(5 - decimal_digits) * max(max_k |c_k|, sum_k |c_k||z|^k),
/// checked after polishing; precision escalates twice before giving up with
/// `IllConditioned`.
pub fn poly_roots(coeffs: &[Complex], ctx: &PrecisionContext) -> Result<Vec<Complex>> {
    let mut hi = coeffs.len();
    while hi > 0 && is_zero(&coeffs[hi - 1]) {
        hi -= 1;
    }
    if hi == 0 {
        return Err(Error::InvalidParameter(
            "all coefficients are zero".into(),
        ));
    }
    if hi - 1 > 10_000 {
        return Err(Error::InvalidParameter("degree exceeds 10^4".into()));
    }
    let mut lo = 0;
    while is_zero(&coeffs[lo]) {
        lo += 1;
    }
    let mut roots: Vec<Complex> = (0..lo).map(|_| ctx.complex_zero()).collect();
    let work = &coeffs[lo..hi];
    if work.len() > 1 {
        let mut guesses = initial_guesses(work, ctx);
        let mut attempt_ctx = ctx.clone();
        let mut solved = None;
        for _ in 0..3 {
            let lifted: Vec<Complex> = guesses
                .iter()
                .map(|g| Complex::with_val(attempt_ctx.bits(), g))
                .collect();
            let coeffs_lifted: Vec<Complex> = work
                .iter()
                .map(|c| Complex::with_val(attempt_ctx.bits(), c))
                .collect();
            let found = aberth(&coeffs_lifted, lifted, &attempt_ctx);
            let found = newton_polish(&coeffs_lifted, found, &attempt_ctx);
            if residuals_ok(&coeffs_lifted, &found, ctx, &attempt_ctx) {
                solved = Some(found);
                break;
            }
            guesses = found;
            attempt_ctx = attempt_ctx.escalated(2);
        }
        let found = solved.ok_or(Error::IllConditioned)?;
        roots.extend(found.iter().map(|r| Complex::with_val(ctx.bits(), r)));
    }
    sort_roots(&mut roots, ctx);
    Ok(roots)
}

fn sort_roots(roots: &mut [Complex], ctx: &PrecisionContext) {
    roots.sort_by(|a, b| {
        let ma = cabs(a, ctx);
        let mb = cabs(b, ctx);
        match ma.partial_cmp(&mb) {
            Some(std::cmp::Ordering::Equal) | None => {
                let aa = arg(a, ctx);
                let ab = arg(b, ctx);
                aa.partial_cmp(&ab).unwrap_or(std::cmp::Ordering::Equal)
            }
            Some(o) => o,
        }
    });
}

pub(crate) fn arg(z: &Complex, ctx: &PrecisionContext) -> Float {
    let im = Float::with_val(ctx.bits(), z.imag());
    im.atan2(z.real())
}

/// Starting points from the Newton polygon of (k, log|c_k|).
fn initial_guesses(coeffs: &[Complex], ctx: &PrecisionContext) -> Vec<Complex> {
    let d = coeffs.len() - 1;
    // (k, ln|c_k|) for nonzero coefficients, in f64 (ln keeps the range tame)
    let pts: Vec<(usize, f64)> = coeffs
        .iter()
        .enumerate()
        .filter(|(_, c)| !is_zero(c))
        .map(|(k, c)| {
            let m = cabs(c, ctx);
            let l = Float::with_val(ctx.bits(), m.ln_ref());
            (k, l.to_f64())
        })
        .collect();
    // upper convex hull (monotone chain over increasing k)
    let mut hull: Vec<(usize, f64)> = Vec::new();
    for &p in &pts {
        while hull.len() >= 2 {
            let a = hull[hull.len() - 2];
            let b = hull[hull.len() - 1];
            let cross = (b.0 as f64 - a.0 as f64) * (p.1 - a.1)
                - (p.0 as f64 - a.0 as f64) * (b.1 - a.1);
            if cross >= 0.0 {
                hull.pop();
            } else {
                break;
            }
        }
        hull.push(p);
    }
    let bits = ctx.bits();
    let mut guesses = Vec::with_capacity(d);
    let mut angle_seed = 0.9371f64;
    for edge in hull.windows(2) {
        let (k1, y1) = edge[0];
        let (k2, y2) = edge[1];
        let mult = k2 - k1;
        let log_r = (y1 - y2) / mult as f64;
        // keep the radius representable; the iteration corrects the rest
        let r = Float::with_val(bits, log_r.clamp(-700.0, 700.0)).exp();
        for i in 0..mult {
            let theta = 2.0 * std::f64::consts::PI * (i as f64 + 0.5) / mult as f64 + angle_seed;
            let t = Float::with_val(bits, theta);
            let (sin, cos) = t.sin_cos(Float::new(bits));
            let re = Float::with_val(bits, &r * &cos);
            let im = Float::with_val(bits, &r * &sin);
            guesses.push(Complex::with_val(bits, (re, im)));
        }
        angle_seed += 0.4119;
    }
    debug_assert_eq!(guesses.len(), d);
    guesses
}

fn horner(coeffs: &[Complex], z: &Complex, bits: u32) -> Complex {
    let mut acc = Complex::new(bits);
    for c in coeffs.iter().rev() {
        acc *= z;
        acc += c;
    }
    acc
}

fn horner_derivative(coeffs: &[Complex], z: &Complex, bits: u32) -> Complex {
    let mut acc = Complex::new(bits);
    for (k, c) in coeffs.iter().enumerate().skip(1).rev() {
        acc *= z;
        acc += Complex::with_val(bits, c * &Float::with_val(bits, k as u32));
    }
    acc
}

fn aberth(coeffs: &[Complex], mut z: Vec<Complex>, ctx: &PrecisionContext) -> Vec<Complex> {
    let bits = ctx.bits();
    let d = z.len();
    // 2^-(bits-8) relative movement threshold
    let mut stop = Float::with_val(bits, 1);
    stop >>= bits - 8;
    let max_sweeps = 400;
    for _ in 0..max_sweeps {
        let mut max_rel = Float::new(bits);
        for j in 0..d {
            let pe = horner(coeffs, &z[j], bits);
            if is_zero(&pe) {
                continue;
            }
            let pd = horner_derivative(coeffs, &z[j], bits);
            let w = if is_zero(&pd) {
                // sit exactly on a critical point: nudge off it
                let m = cabs(&z[j], ctx);
                let nudge = Float::with_val(bits, &m * &stop) + &stop;
                z[j] += Complex::with_val(bits, (nudge.clone(), nudge));
                continue;
            } else {
                Complex::with_val(bits, &pe / &pd)
            };
            let mut s = Complex::new(bits);
            for (k, zk) in z.iter().enumerate() {
                if k == j {
                    continue;
                }
                let diff = Complex::with_val(bits, &z[j] - zk);
                if is_zero(&diff) {
                    continue;
                }
                s += Complex::with_val(bits, 1u32 / &diff);
            }
            let denom = Complex::with_val(bits, 1u32 - &Complex::with_val(bits, &w * &s));
            let delta = if is_zero(&denom) {
                w
            } else {
                Complex::with_val(bits, &w / &denom)
            };
            let dm = cabs(&delta, ctx);
            let zm = cabs(&z[j], ctx);
            let rel = if zm.is_zero() {
                dm.clone()
            } else {
                Float::with_val(bits, &dm / &zm)
            };
            if rel > max_rel {
                max_rel = rel;
            }
            z[j] -= delta;
        }
        if max_rel < stop {
            break;
        }
    }
    z
}

fn newton_polish(coeffs: &[Complex], mut z: Vec<Complex>, ctx: &PrecisionContext) -> Vec<Complex> {
    let bits = ctx.bits();
    for zj in z.iter_mut() {
        for _ in 0..4 {
            let pe = horner(coeffs, zj, bits);
            if is_zero(&pe) {
                break;
            }
            let pd = horner_derivative(coeffs, zj, bits);
            if is_zero(&pd) {
                break;
            }
            *zj -= Complex::with_val(bits, &pe / &pd);
        }
    }
    z
}

fn residuals_ok(
    coeffs: &[Complex],
    roots: &[Complex],
    ctx: &PrecisionContext,
    work_ctx: &PrecisionContext,
) -> bool {
    let bits = work_ctx.bits();
    let tol = ctx.ten_pow(5 - i64::from(ctx.decimal_digits()));
    let mut max_c = Float::new(bits);
    for c in coeffs {
        let m = cabs(c, work_ctx);
        if m > max_c {
            max_c = m;
        }
    }
    for root in roots {
        let pe = cabs(&horner(coeffs, root, bits), work_ctx);
        // evaluation magnitude sum |c_k| |z|^k
        let az = cabs(root, work_ctx);
        let mut scale = Float::new(bits);
        for c in coeffs.iter().rev() {
            scale *= &az;
            scale += cabs(c, work_ctx);
        }
        if scale < max_c {
            scale = max_c.clone();
        }
        let target = Float::with_val(bits, &tol * &scale);
        if pe > target {
            return false;
        }
    }
    true
}

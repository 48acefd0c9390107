//! Zero localization and certification: argument-principle winding counts
//! with truncation certificates, real-axis bracketing, axis-confinement
//! verdicts, and the Theorem-2 start index.
//!
//! Rigor chain for a disk: the truncation certificate bounds the series tail
//! on the disk; if the sampled minimum of |p_N| on the contour exceeds twice
//! (tail + derivative-bound * arc step), then p_N and the entire function
//! have the same zero count inside (Rouche), adjacent phase steps stay below
//! pi/2, and the sampled winding number is exact.

use crate::error::{Error, Result};
use crate::poly::arg;
use crate::precision::PrecisionContext;
use crate::qcore::cabs;
use crate::series::{CoefficientFamily, SeriesTruncation, TruncatedSeries};
use rug::{Complex, Float};

pub use crate::poly::poly_roots;

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum HalfAxis {
    Negative,
    Positive,
}

impl HalfAxis {
    pub fn as_str(self) -> &'static str {
        match self {
            HalfAxis::Negative => "negative",
            HalfAxis::Positive => "positive",
        }
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Certificate {
    Rigorous,
    Heuristic,
}

impl Certificate {
    pub fn as_str(self) -> &'static str {
        match self {
            Certificate::Rigorous => "rigorous",
            Certificate::Heuristic => "heuristic",
        }
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum ZeroClass {
    NegativeReal,
    PositiveReal,
    ComplexPair,
}

impl ZeroClass {
    pub fn as_str(self) -> &'static str {
        match self {
            ZeroClass::NegativeReal => "negative-real",
            ZeroClass::PositiveReal => "positive-real",
            ZeroClass::ComplexPair => "complex-pair",
        }
    }
}

/// One certified zero: location, enclosure radius, classification.
#[derive(Clone, Debug)]
pub struct CertifiedZero {
    pub location: Complex,
    pub enclosure_radius: Float,
    pub classification: ZeroClass,
}

/// Zero census of a disk. `winding_count` counts nonzero-modulus zeros (a
/// RatioQuad origin zero of multiplicity K is factored out first), so
/// `zeros.len() == winding_count` whenever the certificate is rigorous.
#[derive(Clone, Debug)]
pub struct ZeroReport {
    pub family: CoefficientFamily,
    pub disk_radius: Float,
    pub winding_count: usize,
    pub zeros: Vec<CertifiedZero>,
    pub certificate: Certificate,
    pub truncation: SeriesTruncation,
    pub half_axis: Option<HalfAxis>,
    pub confined: Option<bool>,
    /// max |Im z| / |z| over the complex cross-check roots
    pub cross_im_ratio: Option<Float>,
}

/// "negative real" tolerance: |Im z| <= max(1e-25, 10^-(digits-15)) |z|.
pub fn im_tolerance_ratio(ctx: &PrecisionContext) -> Float {
    let a = ctx.ten_pow(-25);
    let b = ctx.ten_pow(-(i64::from(ctx.decimal_digits()) - 15));
    if a > b {
        a
    } else {
        b
    }
}

fn classify(root: &Complex, ctx: &PrecisionContext) -> ZeroClass {
    let modulus = cabs(root, ctx);
    let tol = Float::with_val(ctx.bits(), &im_tolerance_ratio(ctx) * &modulus);
    let im = Float::with_val(ctx.bits(), root.imag().abs_ref());
    if im <= tol {
        if *root.real() < 0u32 {
            ZeroClass::NegativeReal
        } else {
            ZeroClass::PositiveReal
        }
    } else {
        ZeroClass::ComplexPair
    }
}

/// Winding number of the image of |z - center| = radius under a certified
/// truncation. The series must have been built on a disk that contains the
/// contour with a little margin (radius * 1.01 fits).
pub fn winding_count_series(
    ts: &TruncatedSeries,
    center: &Complex,
    radius: &Float,
    ctx: &PrecisionContext,
) -> Result<(usize, Certificate)> {
    let bits = ctx.bits();
    let dbound = ts.derivative_bound(ctx);
    let rounding = {
        let mut r = ts.eval_scale(&ts.radius, ctx);
        r >>= bits - 12;
        r
    };
    let two_pi = {
        let mut pi = Float::with_val(bits, rug::float::Constant::Pi);
        pi *= 2u32;
        pi
    };
    for pert in [1.0f64, 1.005, 0.995, 1.0025, 0.9975] {
        let r = Float::with_val(bits, radius * &Float::with_val(bits, pert));
        let contour_max = Float::with_val(bits, cabs(center, ctx) + &r);
        if contour_max > ts.radius {
            continue;
        }
        let mut m = 512usize;
        while m <= 1 << 16 {
            let mut samples = Vec::with_capacity(m);
            let mut minmod: Option<Float> = None;
            for i in 0..m {
                let theta = Float::with_val(bits, &two_pi * &Float::with_val(bits, i as u32))
                    / Float::with_val(bits, m as u32);
                let (sin, cos) = theta.sin_cos(Float::new(bits));
                let point = Complex::with_val(
                    bits,
                    (
                        Float::with_val(bits, center.real() + &Float::with_val(bits, &r * &cos)),
                        Float::with_val(bits, center.imag() + &Float::with_val(bits, &r * &sin)),
                    ),
                );
                let v = ts.eval_complex(&point, ctx);
                let vm = cabs(&v, ctx);
                minmod = Some(match minmod {
                    Some(prev) if prev <= vm => prev,
                    _ => vm,
                });
                samples.push(v);
            }
            let minmod = minmod.expect("contour has samples");
            let arc = Float::with_val(bits, &two_pi * &r) / Float::with_val(bits, m as u32);
            let slack = Float::with_val(bits, &dbound * &arc) + &rounding;
            let gate = Float::with_val(bits, &ts.tail_bound + &slack);
            let gate = Float::with_val(bits, 2u32 * &gate);
            if std::env::var("QZERO_TRACE_WINDING").is_ok() {
                eprintln!(
                    "winding trace: r={} m={m} minmod={} slack={} tail={} gate={}",
                    r.to_f64(),
                    minmod.to_f64(),
                    slack.to_f64(),
                    ts.tail_bound.to_f64(),
                    gate.to_f64()
                );
            }
            if minmod > gate {
                let mut total = Float::new(bits);
                for i in 0..m {
                    let a = &samples[i];
                    let b = &samples[(i + 1) % m];
                    // arg(b / a) via b * conj(a)
                    let prod = Complex::with_val(bits, b * &Complex::with_val(bits, a.conj_ref()));
                    total += arg(&prod, ctx);
                }
                total /= &two_pi;
                let rounded = total.to_f64().round();
                let drift = Float::with_val(bits, &total - &Float::with_val(bits, rounded));
                if drift.abs() < 0.25 && rounded >= 0.0 {
                    return Ok((rounded as usize, Certificate::Rigorous));
                }
            }
            m *= 2;
        }
    }
    Err(Error::ZeroOnContour)
}

/// Number of zeros of the family's entire function inside the circle
/// |z - center| = radius, including any origin multiplicity.
pub fn winding_count(
    fam: &CoefficientFamily,
    center: &Complex,
    radius: &Float,
    eps: &Float,
    ctx: &PrecisionContext,
) -> Result<(usize, Certificate)> {
    let bits = ctx.bits();
    let disk = Float::with_val(bits, cabs(center, ctx) + radius) * Float::with_val(bits, 1.02);
    let ts = TruncatedSeries::build(fam, &disk, eps, ctx)?;
    winding_count_series(&ts, center, radius, ctx)
}

/// Scanner state for sign-change bracketing along one half-axis of the
/// deflated series (origin zeros factored out).
struct RealScanner<'a> {
    fam: &'a CoefficientFamily,
    ctx: &'a PrecisionContext,
    eps: Float,
    ts: TruncatedSeries,
}

impl<'a> RealScanner<'a> {
    fn new(fam: &'a CoefficientFamily, eps: &Float, ctx: &'a PrecisionContext) -> Result<Self> {
        let r0 = ctx.float_from_u64(4);
        let ts = Self::build(fam, &r0, eps, ctx)?;
        Ok(Self {
            fam,
            ctx,
            eps: eps.clone(),
            ts,
        })
    }

    fn build(
        fam: &CoefficientFamily,
        radius: &Float,
        eps: &Float,
        ctx: &PrecisionContext,
    ) -> Result<TruncatedSeries> {
        let full = TruncatedSeries::build(fam, radius, eps, ctx)?;
        Ok(full.deflated(fam.origin_multiplicity(), ctx))
    }

    fn ensure_radius(&mut self, x: &Float) -> Result<()> {
        let ax = Float::with_val(self.ctx.bits(), x.abs_ref());
        if ax > self.ts.radius {
            let r = Float::with_val(self.ctx.bits(), &ax * &Float::with_val(self.ctx.bits(), 4));
            self.ts = Self::build(self.fam, &r, &self.eps, self.ctx)?;
        }
        Ok(())
    }

    fn value(&mut self, x: &Float) -> Result<Float> {
        self.ensure_radius(x)?;
        Ok(self.ts.eval_real(x, self.ctx))
    }

    /// Certified sign: +1/-1 when |f(x)| clears the tail + rounding gate,
    /// 0 when x is numerically on a zero even at the smallest usable eps.
    fn sign_at(&mut self, x: &Float) -> Result<i32> {
        let bits = self.ctx.bits();
        let floor = self.ctx.ten_pow(-2 * i64::from(self.ctx.working_digits()));
        loop {
            let v = self.value(x)?;
            let mut rounding = self.ts.eval_scale(x, self.ctx);
            rounding >>= bits - 12;
            let gate = Float::with_val(bits, &self.ts.tail_bound + &rounding);
            let gate = Float::with_val(bits, 2u32 * &gate);
            let av = Float::with_val(bits, v.abs_ref());
            if av > gate {
                return Ok(if v.is_sign_positive() { 1 } else { -1 });
            }
            if self.eps <= floor {
                return Ok(0);
            }
            self.eps = Float::with_val(bits, &self.eps * &self.ctx.ten_pow(-15));
            if self.eps < floor {
                self.eps = floor.clone();
            }
            let r = self.ts.radius.clone();
            self.ts = Self::build(self.fam, &r, &self.eps, self.ctx)?;
        }
    }

    fn derivative(&mut self, x: &Float) -> Result<Float> {
        self.ensure_radius(x)?;
        Ok(self.ts.eval_real_derivative(x, self.ctx))
    }

    /// Shrink a sign-change bracket to a polished zero with a certified
    /// enclosure radius.
    fn refine(&mut self, mut lo: Float, mut hi: Float, s_lo: i32) -> Result<(Float, Float)> {
        let bits = self.ctx.bits();
        // bisection: 50 halvings take the bracket below 1e-15 relative
        for _ in 0..50 {
            let mid = Float::with_val(bits, &lo + &hi) / 2u32;
            let s = self.sign_at(&mid)?;
            if s == 0 {
                let width = Float::with_val(bits, &hi - &lo).abs();
                return self.certify_enclosure(mid, width);
            }
            if s == s_lo {
                lo = mid;
            } else {
                hi = mid;
            }
        }
        // Newton polish
        let mut x = Float::with_val(bits, &lo + &hi) / 2u32;
        let step_floor = self.ctx.ten_pow(-(i64::from(self.ctx.working_digits()) - 8));
        for _ in 0..80 {
            let f = self.value(&x)?;
            let d = self.derivative(&x)?;
            if d.is_zero() {
                break;
            }
            let step = Float::with_val(bits, &f / &d);
            let next = Float::with_val(bits, &x - &step);
            // keep Newton inside the bracket; fall back to the midpoint rule
            if next < lo.clone().min(&hi) || next > lo.clone().max(&hi) {
                break;
            }
            let rel = Float::with_val(bits, step.abs_ref())
                / Float::with_val(bits, x.abs_ref());
            x = next;
            if rel < step_floor {
                break;
            }
        }
        let width = Float::with_val(bits, &hi - &lo).abs();
        self.certify_enclosure(x, width)
    }

    fn certify_enclosure(&mut self, x: Float, fallback_width: Float) -> Result<(Float, Float)> {
        let bits = self.ctx.bits();
        let mut delta = Float::with_val(
            bits,
            Float::with_val(bits, x.abs_ref())
                * self
                    .ctx
                    .ten_pow(-(i64::from(self.ctx.decimal_digits()) - 10)),
        );
        for _ in 0..40 {
            let lo = Float::with_val(bits, &x - &delta);
            let hi = Float::with_val(bits, &x + &delta);
            let s_lo = self.sign_at(&lo)?;
            let s_hi = self.sign_at(&hi)?;
            if s_lo != 0 && s_hi != 0 && s_lo != s_hi {
                return Ok((x, delta));
            }
            delta *= 4u32;
            if delta > fallback_width {
                break;
            }
        }
        Ok((x, fallback_width))
    }
}

/// The m smallest-modulus zeros on the chosen half-axis, each with a
/// certified enclosure radius, found by geometric-grid sign bracketing.
pub fn real_axis_zeros(
    fam: &CoefficientFamily,
    half: HalfAxis,
    m: usize,
    eps: &Float,
    ctx: &PrecisionContext,
) -> Result<Vec<(Float, Float)>> {
    if m == 0 {
        return Err(Error::InvalidParameter("m must be >= 1".into()));
    }
    let limit = ctx.float_from_u64(1_000_000);
    let found = scan_half_axis(fam, half, Some(m), &limit, eps, ctx)?;
    if found.len() < m {
        return Err(Error::NotEnoughZerosFound {
            found: found.len(),
            requested: m,
        });
    }
    Ok(found)
}

/// Every bracketed zero on the half-axis with |x| <= radius.
pub fn real_axis_zeros_within(
    fam: &CoefficientFamily,
    half: HalfAxis,
    radius: &Float,
    eps: &Float,
    ctx: &PrecisionContext,
) -> Result<Vec<(Float, Float)>> {
    scan_half_axis(fam, half, None, radius, eps, ctx)
}

fn scan_half_axis(
    fam: &CoefficientFamily,
    half: HalfAxis,
    want: Option<usize>,
    limit: &Float,
    eps: &Float,
    ctx: &PrecisionContext,
) -> Result<Vec<(Float, Float)>> {
    let bits = ctx.bits();
    let mut scanner = RealScanner::new(fam, eps, ctx)?;
    let sign_dir = match half {
        HalfAxis::Negative => -1,
        HalfAxis::Positive => 1,
    };
    // f(0) = c_0 > 0 after deflation, so 0 is never a zero; start at 1e-6
    let mut x = Float::with_val(bits, sign_dir) * ctx.ten_pow(-6);
    let mut s_prev = scanner.sign_at(&x)?;
    if s_prev == 0 {
        x *= Float::with_val(bits, 1.0000001);
        s_prev = scanner.sign_at(&x)?;
    }
    let ratio = Float::with_val(bits, 1.1);
    let mut found = Vec::new();
    loop {
        if let Some(w) = want {
            if found.len() >= w {
                break;
            }
        }
        let mut x_next = Float::with_val(bits, &x * &ratio);
        if Float::with_val(bits, x_next.abs_ref()) > *limit {
            break;
        }
        let mut s_next = scanner.sign_at(&x_next)?;
        if s_next == 0 {
            x_next *= Float::with_val(bits, 1.0000003);
            s_next = scanner.sign_at(&x_next)?;
        }
        if s_next != 0 && s_prev != 0 && s_next != s_prev {
            let (zero, enclosure) = scanner.refine(x.clone(), x_next.clone(), s_prev)?;
            found.push((zero, enclosure));
        }
        x = x_next;
        s_prev = s_next;
    }
    Ok(found)
}

/// Full disk census: winding count versus real-axis brackets, with complex
/// cross-check roots from the certified truncation.
pub fn axis_confinement(
    fam: &CoefficientFamily,
    radius: &Float,
    half: HalfAxis,
    eps: &Float,
    ctx: &PrecisionContext,
) -> Result<ZeroReport> {
    let bits = ctx.bits();
    let origin = fam.origin_multiplicity();
    let disk = Float::with_val(bits, radius * &Float::with_val(bits, 1.02));
    let ts_full = TruncatedSeries::build(fam, &disk, eps, ctx)?;
    let (w_raw, w_cert) = winding_count_series(&ts_full, &ctx.complex_zero(), radius, ctx)?;
    if w_raw < origin {
        return Err(Error::ZeroOnContour);
    }
    let count = w_raw - origin;

    let brackets = real_axis_zeros_within(fam, half, radius, eps, ctx)?;

    let defl = ts_full.deflated(origin, ctx);
    let proots: Vec<Complex> = poly_roots(&defl.complex_coeffs(ctx), ctx)?
        .into_iter()
        .filter(|z| cabs(z, ctx) < *radius)
        .collect();
    let mut cross_im_ratio = ctx.zero();
    for r in &proots {
        let m = cabs(r, ctx);
        if m.is_zero() {
            continue;
        }
        let ratio = Float::with_val(bits, r.imag().abs_ref()) / m;
        if ratio > cross_im_ratio {
            cross_im_ratio = ratio;
        }
    }

    let confined = count == brackets.len();
    let mut zeros = Vec::new();
    let mut certificate = Certificate::Heuristic;
    if confined && proots.len() == count && w_cert == Certificate::Rigorous {
        // rigorous path: the bracketed zeros exhaust the disk census
        certificate = Certificate::Rigorous;
        for (loc, enc) in &brackets {
            let cls = match half {
                HalfAxis::Negative => ZeroClass::NegativeReal,
                HalfAxis::Positive => ZeroClass::PositiveReal,
            };
            let mut enc = enc.clone();
            // enclosure disks stay inside the census disk
            let overflow = Float::with_val(bits, Float::with_val(bits, loc.abs_ref()) + &enc);
            if overflow > *radius {
                enc = Float::with_val(bits, radius - &Float::with_val(bits, loc.abs_ref())).abs();
            }
            zeros.push(CertifiedZero {
                location: ctx.complex_from_real(loc),
                enclosure_radius: enc,
                classification: cls,
            });
        }
    } else {
        // census disagrees with one half-axis: report the cross-check roots
        for r in &proots {
            let enclosure = heuristic_enclosure(&defl, r, ctx);
            zeros.push(CertifiedZero {
                location: r.clone(),
                enclosure_radius: enclosure,
                classification: classify(r, ctx),
            });
        }
    }
    Ok(ZeroReport {
        family: fam.clone(),
        disk_radius: radius.clone(),
        winding_count: count,
        zeros,
        certificate,
        truncation: ts_full.meta(),
        half_axis: Some(half),
        confined: Some(confined),
        cross_im_ratio: Some(cross_im_ratio),
    })
}

fn heuristic_enclosure(ts: &TruncatedSeries, root: &Complex, ctx: &PrecisionContext) -> Float {
    let bits = ctx.bits();
    // Newton correction magnitude, inflated: |p/p'| * 16
    let coeffs = ts.complex_coeffs(ctx);
    let mut p = Complex::new(bits);
    let mut d = Complex::new(bits);
    for (k, c) in coeffs.iter().enumerate().rev() {
        if k >= 1 {
            d *= root;
            d += Complex::with_val(bits, c * &Float::with_val(bits, k as u32));
        }
        p *= root;
        p += c;
    }
    let dm = cabs(&d, ctx);
    if dm.is_zero() {
        return Float::with_val(bits, cabs(root, ctx) * ctx.ten_pow(-10));
    }
    let step = Float::with_val(bits, &cabs(&p, ctx) / &dm);
    let floor = Float::with_val(bits, cabs(root, ctx) * ctx.ten_pow(-40));
    let step = Float::with_val(bits, 16u32 * &step);
    if step > floor {
        step
    } else {
        floor
    }
}

/// Pick a contour radius that encloses at least `count` nonzero-modulus
/// zeros, placed in a clear gap of the root moduli. Returns (radius, number
/// of zeros the disk holds).
pub fn disk_enclosing_zeros(
    fam: &CoefficientFamily,
    count: usize,
    eps: &Float,
    ctx: &PrecisionContext,
) -> Result<(Float, usize)> {
    let bits = ctx.bits();
    let mut r = ctx.float_from_u64(4);
    let gap = Float::with_val(bits, 1.3f64);
    for _ in 0..24 {
        let ts = TruncatedSeries::build(fam, &r, eps, ctx)?;
        let defl = ts.deflated(fam.origin_multiplicity(), ctx);
        if defl.degree() >= count + 1 {
            let roots = poly_roots(&defl.complex_coeffs(ctx), ctx)?;
            let moduli: Vec<Float> = roots
                .iter()
                .map(|z| cabs(z, ctx))
                .filter(|m| {
                    *m < Float::with_val(bits, &r / &Float::with_val(bits, 1.05f64))
                })
                .collect();
            if moduli.len() > count {
                for idx in count..moduli.len() {
                    if idx == 0 {
                        continue;
                    }
                    let ratio = Float::with_val(bits, &moduli[idx] / &moduli[idx - 1]);
                    if ratio > gap {
                        let radius =
                            Float::with_val(bits, &moduli[idx] * &moduli[idx - 1]).sqrt();
                        return Ok((radius, idx));
                    }
                }
            }
        }
        r *= 4u32;
    }
    Err(Error::NotEnoughZerosFound {
        found: 0,
        requested: count,
    })
}

/// Smallest K >= 2 with the coefficient log-concavity ratio above 4 across
/// [K, K+horizon] plus the closed-form lower bound that covers all k >= K.
pub fn theorem2_k0(
    fam: &CoefficientFamily,
    horizon: usize,
    ctx: &PrecisionContext,
) -> Result<usize> {
    let CoefficientFamily::RatioQuad {
        alpha,
        a: a_raw,
        b: b_raw,
        q,
        ..
    } = fam
    else {
        return Err(Error::InvalidParameter(
            "theorem2_k0 requires a RatioQuad family".into(),
        ));
    };
    let bits = ctx.bits();
    // (a_i)_k / (b_j)_k cancels exactly when a_i = b_j; dropping such pairs
    // keeps R_k identical and stops the b-free lower bound from being lossy
    // on cancelling instances.
    let mut b: Vec<Float> = b_raw.clone();
    let mut a: Vec<Float> = Vec::new();
    for ai in a_raw {
        if let Some(pos) = b.iter().position(|bj| bj == ai) {
            b.remove(pos);
        } else {
            a.push(ai.clone());
        }
    }
    let two_alpha = Float::with_val(bits, 2u32 * alpha);
    let q_neg = Float::with_val(bits, 1u32 / &crate::qcore::q_pow(q, &two_alpha, ctx));
    let four = Float::with_val(bits, 4);
    let ratio_at = |k: usize| -> Float {
        let mut v = q_neg.clone();
        for ai in &a {
            let top = Float::with_val(bits, ai + (k as u32 - 2));
            let bottom = Float::with_val(bits, ai + (k as u32 - 1));
            v *= top / bottom;
        }
        for bj in &b {
            let top = Float::with_val(bits, bj + (k as u32 - 1));
            let bottom = Float::with_val(bits, bj + (k as u32 - 2));
            v *= top / bottom;
        }
        v
    };
    let cap = 1_000_000usize;
    let mut k0 = 2usize;
    loop {
        // rigorous lower bound q^{-2 alpha} prod_i (1 - 1/(a_i + K - 1)) > 4:
        // b-factors exceed 1 and a-factors increase in k, so it covers k >= K
        let mut bound = q_neg.clone();
        for ai in &a {
            let denom = Float::with_val(bits, ai + (k0 as u32 - 1));
            bound *= Float::with_val(bits, 1u32 - &Float::with_val(bits, 1u32 / &denom));
        }
        if bound > four {
            let all_above = (k0..=k0 + horizon).all(|k| ratio_at(k) > four);
            if all_above {
                return Ok(k0);
            }
        }
        k0 += 1;
        if k0 > cap {
            return Err(Error::HorizonExceeded(cap));
        }
    }
}

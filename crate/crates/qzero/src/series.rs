//! The coefficient families, their entire functions, and certified
//! truncations.
//!
//! Every family carries an explicit majorant M(k) >= |c_k| whose ratio
//! M(k+1)/M(k) is computable in closed form and nonincreasing beyond a
//! family-specific start index. Truncation then certifies a tail bound
//! geometrically: once the majorant ratio times the radius stays below 1/2,
//! |sum_{k>N} c_k z^k| <= M(N) R^N rho/(1-rho) on |z| <= R.

use crate::error::{Error, Result};
use crate::precision::PrecisionContext;
use crate::qcore::{
    self, qpochhammer_finite_real, qpochhammer_infinite_real, qq_table, rising_factorial,
    QParameter,
};
use rug::ops::Pow;
use rug::{Complex, Float};

/// Exponent convention for the classical Stieltjes-Wigert polynomial
/// S_n(x;q) = sum_k q^{e(k)} (-x)^k / ((q;q)_k (q;q)_{n-k}).
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum SwConvention {
    /// e(k) = k^2
    KSquared,
    /// e(k) = k^2 + k
    KSquaredPlusK,
}

impl std::fmt::Display for SwConvention {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        match self {
            SwConvention::KSquared => write!(f, "k^2"),
            SwConvention::KSquaredPlusK => write!(f, "k^2+k"),
        }
    }
}

/// The five series families of the zero theorems plus the hypergeometric
/// limit family. Fields are public for matching; use the constructors, which
/// enforce the parameter ranges.
#[derive(Clone, Debug)]
pub enum CoefficientFamily {
    /// c_k = (a;q)_k q^{alpha k^2} / (q;q)_k
    AqAlpha {
        alpha: Float,
        a: Float,
        q: QParameter,
    },
    /// c_k = prod_j (q_j^{l_j};q_j)_k/(q_j;q_j)_k * q^{alpha k^2}
    ///       / prod_r (q_r;q_r)_k (q_r^{nu_r+1};q_r)_k
    MixedQ {
        alpha: Float,
        q: QParameter,
        l: Vec<u32>,
        qj: Vec<QParameter>,
        nu: Vec<Float>,
        qr: Vec<QParameter>,
    },
    /// c_k = prod_j (l_j)_k / ((k!)^{m+n} prod_r (nu_r+1)_k)
    HyperLimit { l: Vec<u32>, nu: Vec<Float> },
    /// c_k = prod_i (a_i)_k / prod_j (b_j)_k * q^{alpha k^2} for k >= start, else 0
    RatioQuad {
        alpha: Float,
        a: Vec<Float>,
        b: Vec<Float>,
        q: QParameter,
        start: usize,
    },
    /// c_n = h_n(x,y|q) q^{alpha n^2} / (q;q)_n
    RogersSzego {
        alpha: Float,
        x: Float,
        y: Float,
        q: QParameter,
    },
    /// c_n = g_n(x,y|q) q^{alpha n^2} / (q;q)_n, alpha >= 1/2
    StieltjesWigert {
        alpha: Float,
        x: Float,
        y: Float,
        q: QParameter,
    },
}

fn require(cond: bool, msg: &str) -> Result<()> {
    if cond {
        Ok(())
    } else {
        Err(Error::InvalidParameter(msg.to_string()))
    }
}

impl CoefficientFamily {
    pub fn aq_alpha(alpha: Float, a: Float, q: QParameter) -> Result<Self> {
        require(alpha > 0u32, "alpha must be positive")?;
        require(a.is_finite(), "a must be finite")?;
        Ok(Self::AqAlpha { alpha, a, q })
    }

    pub fn mixed_q(
        alpha: Float,
        q: QParameter,
        l: Vec<u32>,
        qj: Vec<QParameter>,
        nu: Vec<Float>,
        qr: Vec<QParameter>,
    ) -> Result<Self> {
        require(alpha > 0u32, "alpha must be positive")?;
        require(l.len() == qj.len(), "l and qj must have equal length")?;
        require(nu.len() == qr.len(), "nu and qr must have equal length")?;
        require(l.len() + nu.len() >= 1, "need m + n >= 1")?;
        require(l.iter().all(|&lj| lj >= 2), "every l_j must be >= 2")?;
        require(nu.iter().all(|v| *v > -1i32), "every nu_r must exceed -1")?;
        Ok(Self::MixedQ {
            alpha,
            q,
            l,
            qj,
            nu,
            qr,
        })
    }

    pub fn hyper_limit(l: Vec<u32>, nu: Vec<Float>) -> Result<Self> {
        require(!nu.is_empty(), "need n >= 1")?;
        require(l.iter().all(|&lj| lj >= 2), "every l_j must be >= 2")?;
        require(nu.iter().all(|v| *v >= 0u32), "every nu_r must be >= 0")?;
        Ok(Self::HyperLimit { l, nu })
    }

    pub fn ratio_quad(
        alpha: Float,
        a: Vec<Float>,
        b: Vec<Float>,
        q: QParameter,
        start: usize,
        ctx: &PrecisionContext,
    ) -> Result<Self> {
        require(alpha > 0u32, "alpha must be positive")?;
        require(!a.is_empty() && !b.is_empty(), "need r >= 1 and s >= 1")?;
        require(a.iter().all(|v| *v > 0u32), "every a_i must be positive")?;
        require(b.iter().all(|v| *v > 0u32), "every b_j must be positive")?;
        // strict hypothesis 0 < q < 2^{-1/alpha}
        let exponent = Float::with_val(ctx.bits(), -1 / &alpha);
        let threshold = Float::with_val(ctx.bits(), 2u32).pow(&exponent);
        let threshold = Float::with_val(ctx.bits(), threshold);
        require(
            *q.value() < threshold,
            "q must satisfy q < 2^(-1/alpha) strictly",
        )?;
        Ok(Self::RatioQuad {
            alpha,
            a,
            b,
            q,
            start,
        })
    }

    pub fn rogers_szego_series(alpha: Float, x: Float, y: Float, q: QParameter) -> Result<Self> {
        require(alpha > 0u32, "alpha must be positive")?;
        require(x.is_finite() && y.is_finite(), "x, y must be finite")?;
        Ok(Self::RogersSzego { alpha, x, y, q })
    }

    pub fn stieltjes_wigert_series(
        alpha: Float,
        x: Float,
        y: Float,
        q: QParameter,
    ) -> Result<Self> {
        require(alpha >= 0.5, "alpha must be >= 1/2")?;
        require(x.is_finite() && y.is_finite(), "x, y must be finite")?;
        Ok(Self::StieltjesWigert { alpha, x, y, q })
    }

    pub fn name(&self) -> &'static str {
        match self {
            Self::AqAlpha { .. } => "aq_alpha",
            Self::MixedQ { .. } => "mixed_q",
            Self::HyperLimit { .. } => "hyper_limit",
            Self::RatioQuad { .. } => "ratio_quad",
            Self::RogersSzego { .. } => "rogers_szego",
            Self::StieltjesWigert { .. } => "stieltjes_wigert",
        }
    }

    /// Multiplicity of the zero at the origin (RatioQuad starts at z^K).
    pub fn origin_multiplicity(&self) -> usize {
        match self {
            Self::RatioQuad { start, .. } => *start,
            _ => 0,
        }
    }

    /// c_k at working precision.
    pub fn coefficient(&self, k: usize, ctx: &PrecisionContext) -> Float {
        let bits = ctx.bits();
        match self {
            Self::AqAlpha { alpha, a, q } => {
                let poch = qpochhammer_finite_real(a, q, k, ctx);
                let gauss = gaussian_weight(alpha, q, k, ctx);
                let denom = qpochhammer_finite_real(q.value(), q, k, ctx);
                Float::with_val(bits, &poch * &gauss) / denom
            }
            Self::MixedQ {
                alpha,
                q,
                l,
                qj,
                nu,
                qr,
            } => {
                let mut v = gaussian_weight(alpha, q, k, ctx);
                for (lj, qjv) in l.iter().zip(qj) {
                    let qlj = Float::with_val(bits, qjv.value().pow(*lj));
                    v *= qpochhammer_finite_real(&qlj, qjv, k, ctx);
                    v /= qpochhammer_finite_real(qjv.value(), qjv, k, ctx);
                }
                for (nur, qrv) in nu.iter().zip(qr) {
                    let e = Float::with_val(bits, nur + 1u32);
                    let qnu = qcore::q_pow(qrv, &e, ctx);
                    v /= qpochhammer_finite_real(qrv.value(), qrv, k, ctx);
                    v /= qpochhammer_finite_real(&qnu, qrv, k, ctx);
                }
                v
            }
            Self::HyperLimit { l, nu } => {
                let mut v = Float::with_val(bits, 1);
                for lj in l {
                    v *= rising_factorial(&Float::with_val(bits, *lj), k, ctx);
                }
                let fact = Float::with_val(bits, rug::Float::factorial(k as u32));
                let mn = (l.len() + nu.len()) as u32;
                v /= Float::with_val(bits, fact.pow(mn));
                for nur in nu {
                    let base = Float::with_val(bits, nur + 1u32);
                    v /= rising_factorial(&base, k, ctx);
                }
                v
            }
            Self::RatioQuad {
                alpha,
                a,
                b,
                q,
                start,
            } => {
                if k < *start {
                    return ctx.zero();
                }
                let mut v = gaussian_weight(alpha, q, k, ctx);
                for ai in a {
                    v *= rising_factorial(ai, k, ctx);
                }
                for bj in b {
                    v /= rising_factorial(bj, k, ctx);
                }
                v
            }
            Self::RogersSzego { alpha, x, y, q } => {
                let h = rogers_szego(k, x, y, q, ctx);
                let denom = qpochhammer_finite_real(q.value(), q, k, ctx);
                Float::with_val(bits, &h * &gaussian_weight(alpha, q, k, ctx)) / denom
            }
            Self::StieltjesWigert { alpha, x, y, q } => {
                let g = stieltjes_wigert_gn(k, x, y, q, ctx);
                let denom = qpochhammer_finite_real(q.value(), q, k, ctx);
                Float::with_val(bits, &g * &gaussian_weight(alpha, q, k, ctx)) / denom
            }
        }
    }

    /// c_0 .. c_n in one pass, using the term recurrences.
    pub fn coefficients_upto(&self, n: usize, ctx: &PrecisionContext) -> Vec<Float> {
        let bits = ctx.bits();
        match self {
            Self::RogersSzego { alpha, x, y, q } => {
                let hs = rs_table(n, x, y, q, ctx, false);
                let qq = qq_table(q, n, ctx);
                (0..=n)
                    .map(|k| {
                        Float::with_val(bits, &hs[k] * &gaussian_weight(alpha, q, k, ctx)) / &qq[k]
                    })
                    .collect()
            }
            Self::StieltjesWigert { alpha, x, y, q } => {
                let gs = rs_table(n, x, y, q, ctx, true);
                let qq = qq_table(q, n, ctx);
                (0..=n)
                    .map(|k| {
                        Float::with_val(bits, &gs[k] * &gaussian_weight(alpha, q, k, ctx)) / &qq[k]
                    })
                    .collect()
            }
            _ => {
                let mut coeffs = Vec::with_capacity(n + 1);
                let start = self.origin_multiplicity();
                for k in 0..=n.min(start) {
                    coeffs.push(self.coefficient(k, ctx));
                }
                while coeffs.len() <= n {
                    let k = coeffs.len() - 1;
                    let next = Float::with_val(bits, &coeffs[k] * &self.term_ratio(k, ctx));
                    coeffs.push(next);
                }
                coeffs
            }
        }
    }

    /// Exact ratio c_{k+1}/c_k for the recurrence-friendly families.
    fn term_ratio(&self, k: usize, ctx: &PrecisionContext) -> Float {
        let bits = ctx.bits();
        let ku = k as u32;
        match self {
            Self::AqAlpha { alpha, a, q } => {
                let qk = Float::with_val(bits, q.value().pow(ku));
                let top = Float::with_val(bits, 1u32 - &Float::with_val(bits, a * &qk));
                let gauss = gaussian_step(alpha, q, k, ctx);
                let qk1 = Float::with_val(bits, q.value().pow(ku + 1));
                let bottom = Float::with_val(bits, 1u32 - &qk1);
                Float::with_val(bits, &top * &gauss) / bottom
            }
            Self::MixedQ {
                alpha,
                q,
                l,
                qj,
                nu,
                qr,
            } => {
                let mut v = gaussian_step(alpha, q, k, ctx);
                for (lj, qjv) in l.iter().zip(qj) {
                    let top = Float::with_val(bits, 1u32 - &Float::with_val(bits, qjv.value().pow(lj + ku)));
                    let bottom = Float::with_val(bits, 1u32 - &Float::with_val(bits, qjv.value().pow(ku + 1)));
                    v *= top / bottom;
                }
                for (nur, qrv) in nu.iter().zip(qr) {
                    let d1 = Float::with_val(bits, 1u32 - &Float::with_val(bits, qrv.value().pow(ku + 1)));
                    let e = Float::with_val(bits, nur + (k as u32 + 1));
                    let d2 = Float::with_val(bits, 1u32 - &qcore::q_pow(qrv, &e, ctx));
                    v /= Float::with_val(bits, &d1 * &d2);
                }
                v
            }
            Self::HyperLimit { l, nu } => {
                let mut v = Float::with_val(bits, 1);
                for lj in l {
                    v *= Float::with_val(bits, lj + ku);
                }
                let k1 = Float::with_val(bits, ku + 1);
                v /= Float::with_val(bits, k1.pow((l.len() + nu.len()) as u32));
                for nur in nu {
                    v /= Float::with_val(bits, nur + (ku + 1));
                }
                v
            }
            Self::RatioQuad { alpha, a, b, q, .. } => {
                let mut v = gaussian_step(alpha, q, k, ctx);
                for ai in a {
                    v *= Float::with_val(bits, ai + ku);
                }
                for bj in b {
                    v /= Float::with_val(bits, bj + ku);
                }
                v
            }
            Self::RogersSzego { .. } | Self::StieltjesWigert { .. } => {
                unreachable!("RS/SW tables are built from the three-term recurrence")
            }
        }
    }

    /// First index from which the majorant ratio envelope is nonincreasing.
    fn envelope_start(&self, ctx: &PrecisionContext) -> Result<usize> {
        match self {
            Self::RatioQuad {
                alpha, a, q, start, ..
            } => {
                let bits = ctx.bits();
                let two_alpha = Float::with_val(bits, 2 * alpha);
                let q2a = qcore::q_pow(q, &two_alpha, ctx);
                let mut k = (*start).max(0);
                loop {
                    let mut lhs = q2a.clone();
                    for ai in a {
                        let denom = Float::with_val(bits, ai + k as u32);
                        lhs *= Float::with_val(bits, 1u32 + &Float::with_val(bits, 1u32 / &denom));
                    }
                    if lhs <= 1u32 {
                        return Ok(k);
                    }
                    k += 1;
                    if k > 1_000_000 {
                        return Err(Error::NoConvergence(1_000_000));
                    }
                }
            }
            _ => Ok(0),
        }
    }

    /// M(k): majorant with M(k) >= |c_k| and M(k+1) = M(k) * envelope(k).
    fn majorant_at(&self, k: usize, ctx: &PrecisionContext) -> Result<Float> {
        let bits = ctx.bits();
        match self {
            Self::AqAlpha { alpha, a, q } => {
                let abs_a = Float::with_val(bits, a.abs_ref());
                let mut prod = Float::with_val(bits, 1);
                let mut aq = abs_a;
                for _ in 0..k {
                    prod *= Float::with_val(bits, 1u32 + &aq);
                    aq *= q.value();
                }
                let denom = qpochhammer_finite_real(q.value(), q, k, ctx);
                Ok(Float::with_val(bits, &prod * &gaussian_weight(alpha, q, k, ctx)) / denom)
            }
            Self::MixedQ { .. } | Self::HyperLimit { .. } | Self::RatioQuad { .. } => {
                // coefficients are positive, so the majorant is the value itself
                Ok(self.coefficient(k, ctx))
            }
            Self::RogersSzego { alpha, x, y, q } => {
                let a_bound = rs_growth_base(x, y, q, ctx);
                let qq_inf = qq_infinite_lower(q, ctx)?;
                let denom = qpochhammer_finite_real(q.value(), q, k, ctx);
                let v = Float::with_val(bits, a_bound.pow(k as u32))
                    * gaussian_weight(alpha, q, k, ctx);
                Ok(v / Float::with_val(bits, &denom * &qq_inf))
            }
            Self::StieltjesWigert { alpha, x, y, q } => {
                let (x_base, beta) = sw_majorant_params(alpha, x, y, ctx);
                let qq_inf = qq_infinite_lower(q, ctx)?;
                let k2 = Float::with_val(bits, (k as u64) * (k as u64));
                let e = Float::with_val(bits, &beta * &k2);
                let v = Float::with_val(bits, (k + 1) as u32)
                    * Float::with_val(bits, x_base.pow(k as u32))
                    * qcore::q_pow(q, &e, ctx);
                Ok(v / Float::with_val(bits, qq_inf.square_ref()))
            }
        }
    }

    /// E(k) = M(k+1)/M(k): nonincreasing for k >= envelope_start.
    fn envelope(&self, k: usize, ctx: &PrecisionContext) -> Float {
        let bits = ctx.bits();
        let ku = k as u32;
        match self {
            Self::AqAlpha { alpha, a, q } => {
                let abs_a = Float::with_val(bits, a.abs_ref());
                let qk = Float::with_val(bits, q.value().pow(ku));
                let top = Float::with_val(bits, 1u32 + &Float::with_val(bits, &abs_a * &qk));
                let qk1 = Float::with_val(bits, q.value().pow(ku + 1));
                let bottom = Float::with_val(bits, 1u32 - &qk1);
                Float::with_val(bits, &top * &gaussian_step(alpha, q, k, ctx)) / bottom
            }
            Self::MixedQ { .. } | Self::HyperLimit { .. } | Self::RatioQuad { .. } => {
                self.term_ratio(k, ctx)
            }
            Self::RogersSzego { alpha, x, y, q } => {
                let a_bound = rs_growth_base(x, y, q, ctx);
                let qk1 = Float::with_val(bits, q.value().pow(ku + 1));
                let bottom = Float::with_val(bits, 1u32 - &qk1);
                Float::with_val(bits, &a_bound * &gaussian_step(alpha, q, k, ctx)) / bottom
            }
            Self::StieltjesWigert { alpha, x, y, q } => {
                let (x_base, beta) = sw_majorant_params(alpha, x, y, ctx);
                let e = Float::with_val(bits, &beta * &Float::with_val(bits, 2 * ku + 1));
                let ratio = Float::with_val(bits, ku + 2) / Float::with_val(bits, ku + 1);
                ratio * x_base * qcore::q_pow(q, &e, ctx)
            }
        }
    }
}

/// q^{alpha k^2}
fn gaussian_weight(alpha: &Float, q: &QParameter, k: usize, ctx: &PrecisionContext) -> Float {
    let bits = ctx.bits();
    let k2 = Float::with_val(bits, (k as u64) * (k as u64));
    let e = Float::with_val(bits, alpha * &k2);
    qcore::q_pow(q, &e, ctx)
}

/// q^{alpha (2k+1)}: the Gaussian factor step from k to k+1.
fn gaussian_step(alpha: &Float, q: &QParameter, k: usize, ctx: &PrecisionContext) -> Float {
    let bits = ctx.bits();
    let e = Float::with_val(bits, alpha * &Float::with_val(bits, 2 * (k as u64) + 1));
    qcore::q_pow(q, &e, ctx)
}

/// Growth base a for |h_n(x,y|q)| <= a^n / (q;q)_inf, by the case split on
/// |x|, |y| relative to 1.
pub(crate) fn rs_growth_base(x: &Float, y: &Float, q: &QParameter, ctx: &PrecisionContext) -> Float {
    let bits = ctx.bits();
    let ax = Float::with_val(bits, x.abs_ref());
    let ay = Float::with_val(bits, y.abs_ref());
    let numerator = if ax <= 1u32 && ay <= 1u32 {
        Float::with_val(bits, 1)
    } else if ax > 1u32 && ay <= 1u32 {
        ax
    } else if ay > 1u32 && ax <= 1u32 {
        ay
    } else {
        Float::with_val(bits, &ax * &ay)
    };
    numerator / q.value()
}

fn sw_majorant_params(
    alpha: &Float,
    x: &Float,
    y: &Float,
    ctx: &PrecisionContext,
) -> (Float, Float) {
    let bits = ctx.bits();
    let ax = Float::with_val(bits, x.abs_ref());
    let ay = Float::with_val(bits, y.abs_ref());
    let mut base = Float::with_val(bits, 1);
    if ax > base {
        base = ax;
    }
    if ay > base {
        base = ay;
    }
    let beta = Float::with_val(bits, alpha - &Float::with_val(bits, 0.25));
    (base, beta)
}

/// Certified lower bound for (q;q)_inf.
fn qq_infinite_lower(q: &QParameter, ctx: &PrecisionContext) -> Result<Float> {
    let eps = ctx.ten_pow(-i64::from(ctx.working_digits()) + 4);
    let v = qpochhammer_infinite_real(q.value(), q, &eps, ctx)?;
    Ok(v - eps)
}

/// Truncation length with a proven tail bound on a disk.
#[derive(Clone, Debug)]
pub struct SeriesTruncation {
    pub n: usize,
    pub radius: Float,
    pub tail_bound: Float,
}

/// Find N and a tail bound <= eps for |z| <= radius.
pub fn truncation_for(
    fam: &CoefficientFamily,
    radius: &Float,
    eps: &Float,
    ctx: &PrecisionContext,
) -> Result<SeriesTruncation> {
    if !(eps.is_sign_positive() && !eps.is_zero()) {
        return Err(Error::InvalidParameter("eps must be positive".into()));
    }
    if radius.is_sign_negative() {
        return Err(Error::InvalidParameter("radius must be nonnegative".into()));
    }
    let bits = ctx.bits();
    if radius.is_zero() {
        return Ok(SeriesTruncation {
            n: 0,
            radius: radius.clone(),
            tail_bound: ctx.zero(),
        });
    }
    let cap = 1_000_000usize;
    let mut k = fam.envelope_start(ctx)?;
    loop {
        let rho = Float::with_val(bits, &fam.envelope(k, ctx) * radius);
        if rho <= 0.5 {
            break;
        }
        k += 1;
        if k > cap {
            return Err(Error::NoConvergence(cap));
        }
    }
    // s = M(n) * radius^n, advanced by the exact majorant ratio
    let mut n = k;
    let mut s = fam.majorant_at(n, ctx)? * Float::with_val(bits, radius.pow(n as u32));
    loop {
        let rho = Float::with_val(bits, &fam.envelope(n, ctx) * radius);
        let tail = Float::with_val(bits, &s * &rho)
            / Float::with_val(bits, 1u32 - &rho);
        // slack for rounding in the bound arithmetic itself
        let tail = tail * Float::with_val(bits, 1.0000001);
        if tail <= *eps {
            return Ok(SeriesTruncation {
                n,
                radius: radius.clone(),
                tail_bound: tail,
            });
        }
        s *= rho;
        n += 1;
        if n > cap {
            return Err(Error::NoConvergence(cap));
        }
    }
}

/// A truncation together with its coefficients, ready for evaluation.
#[derive(Clone, Debug)]
pub struct TruncatedSeries {
    pub coeffs: Vec<Float>,
    pub radius: Float,
    pub tail_bound: Float,
}

impl TruncatedSeries {
    pub fn build(
        fam: &CoefficientFamily,
        radius: &Float,
        eps: &Float,
        ctx: &PrecisionContext,
    ) -> Result<Self> {
        let tr = truncation_for(fam, radius, eps, ctx)?;
        let coeffs = fam.coefficients_upto(tr.n, ctx);
        Ok(Self {
            coeffs,
            radius: tr.radius,
            tail_bound: tr.tail_bound,
        })
    }

    pub fn meta(&self) -> SeriesTruncation {
        SeriesTruncation {
            n: self.degree(),
            radius: self.radius.clone(),
            tail_bound: self.tail_bound.clone(),
        }
    }

    pub fn degree(&self) -> usize {
        self.coeffs.len() - 1
    }

    pub fn eval_complex(&self, z: &Complex, ctx: &PrecisionContext) -> Complex {
        let bits = ctx.bits();
        let mut acc = Complex::new(bits);
        for c in self.coeffs.iter().rev() {
            acc *= z;
            acc += c;
        }
        acc
    }

    pub fn eval_real(&self, x: &Float, ctx: &PrecisionContext) -> Float {
        let bits = ctx.bits();
        let mut acc = Float::new(bits);
        for c in self.coeffs.iter().rev() {
            acc *= x;
            acc += c;
        }
        acc
    }

    /// sum_k |c_k| |x|^k: the evaluation magnitude, for rounding estimates.
    pub fn eval_scale(&self, x: &Float, ctx: &PrecisionContext) -> Float {
        let bits = ctx.bits();
        let ax = Float::with_val(bits, x.abs_ref());
        let mut acc = Float::new(bits);
        for c in self.coeffs.iter().rev() {
            acc *= &ax;
            acc += Float::with_val(bits, c.abs_ref());
        }
        acc
    }

    /// Upper bound for |f^(order)| on the disk:
    /// sum_k k (k-1) ... (k-order+1) |c_k| R^{k-order}.
    pub fn derivative_bound(&self, order: usize, ctx: &PrecisionContext) -> Float {
        let bits = ctx.bits();
        let mut acc = Float::new(bits);
        let mut rpow = Float::with_val(bits, 1);
        for (k, c) in self.coeffs.iter().enumerate().skip(order) {
            let mut falling = Float::with_val(bits, 1);
            for j in 0..order {
                falling *= Float::with_val(bits, (k - j) as u32);
            }
            acc += Float::with_val(bits, c.abs_ref()) * falling * &rpow;
            rpow *= &self.radius;
        }
        acc
    }

    /// Derivative series evaluated at a real point (for Newton polish).
    pub fn eval_real_derivative(&self, x: &Float, ctx: &PrecisionContext) -> Float {
        let bits = ctx.bits();
        let mut acc = Float::new(bits);
        for (k, c) in self.coeffs.iter().enumerate().skip(1).rev() {
            acc *= x;
            acc += Float::with_val(bits, c * &Float::with_val(bits, k as u32));
        }
        acc
    }

    pub fn complex_coeffs(&self, ctx: &PrecisionContext) -> Vec<Complex> {
        self.coeffs
            .iter()
            .map(|c| ctx.complex_from_real(c))
            .collect()
    }

    /// Strip a z^m factor: valid when the low-order coefficients vanish.
    pub fn deflated(&self, m: usize, ctx: &PrecisionContext) -> Self {
        if m == 0 {
            return self.clone();
        }
        let bits = ctx.bits();
        let coeffs = self.coeffs[m.min(self.coeffs.len() - 1)..].to_vec();
        let rm = Float::with_val(bits, (&self.radius).pow(m as u32));
        Self {
            coeffs,
            radius: self.radius.clone(),
            tail_bound: Float::with_val(bits, &self.tail_bound / &rm),
        }
    }
}

/// Evaluate the family's entire function at z with absolute error <= eps.
pub fn evaluate(
    fam: &CoefficientFamily,
    z: &Complex,
    eps: &Float,
    ctx: &PrecisionContext,
) -> Result<Complex> {
    let radius = qcore::cabs(z, ctx);
    let half_eps = Float::with_val(ctx.bits(), eps / 2u32);
    let ts = TruncatedSeries::build(fam, &radius, &half_eps, ctx)?;
    Ok(ts.eval_complex(z, ctx))
}

/// Real-argument variant of [`evaluate`].
pub fn evaluate_real(
    fam: &CoefficientFamily,
    x: &Float,
    eps: &Float,
    ctx: &PrecisionContext,
) -> Result<Float> {
    let radius = Float::with_val(ctx.bits(), x.abs_ref());
    let half_eps = Float::with_val(ctx.bits(), eps / 2u32);
    let ts = TruncatedSeries::build(fam, &radius, &half_eps, ctx)?;
    Ok(ts.eval_real(x, ctx))
}

/// Rogers-Szego polynomial h_n(x,y|q) = sum_k [n k]_q x^k y^{n-k}.
pub fn rogers_szego(n: usize, x: &Float, y: &Float, q: &QParameter, ctx: &PrecisionContext) -> Float {
    let bits = ctx.bits();
    let qq = qq_table(q, n, ctx);
    let mut sum = Float::new(bits);
    let mut xk = Float::with_val(bits, 1);
    for k in 0..=n {
        let binom = Float::with_val(bits, &qq[n] / &Float::with_val(bits, &qq[k] * &qq[n - k]));
        let ypow = Float::with_val(bits, y.pow((n - k) as u32));
        sum += binom * Float::with_val(bits, &xk * &ypow);
        xk *= x;
    }
    sum
}

/// Stieltjes-Wigert polynomial g_n(x,y|q) = sum_k [n k]_q q^{k(k-n)} x^k y^{n-k}.
pub fn stieltjes_wigert_gn(
    n: usize,
    x: &Float,
    y: &Float,
    q: &QParameter,
    ctx: &PrecisionContext,
) -> Float {
    let bits = ctx.bits();
    let qq = qq_table(q, n, ctx);
    let mut sum = Float::new(bits);
    let mut xk = Float::with_val(bits, 1);
    for k in 0..=n {
        let binom = Float::with_val(bits, &qq[n] / &Float::with_val(bits, &qq[k] * &qq[n - k]));
        let e = (k as i64) * (k as i64 - n as i64);
        let qkk = Float::with_val(bits, q.value().pow(e as i32));
        let ypow = Float::with_val(bits, y.pow((n - k) as u32));
        sum += binom * qkk * Float::with_val(bits, &xk * &ypow);
        xk *= x;
    }
    sum
}

/// h_n (or g_n) table for n = 0..=N via the three-term recurrence
/// h_{n+1} = (x+y) h_n - (1-q^n) x y h_{n-1} (q -> 1/q for g).
fn rs_table(
    nmax: usize,
    x: &Float,
    y: &Float,
    q: &QParameter,
    ctx: &PrecisionContext,
    inverse_q: bool,
) -> Vec<Float> {
    let bits = ctx.bits();
    let mut out = Vec::with_capacity(nmax + 1);
    out.push(Float::with_val(bits, 1));
    if nmax == 0 {
        return out;
    }
    let s = Float::with_val(bits, x + y);
    let p = Float::with_val(bits, x * y);
    out.push(s.clone());
    for n in 1..nmax {
        let qn = if inverse_q {
            Float::with_val(bits, q.value().pow(-(n as i32)))
        } else {
            Float::with_val(bits, q.value().pow(n as u32))
        };
        let coeff = Float::with_val(bits, 1u32 - &qn) * &p;
        let next = Float::with_val(bits, &s * &out[n]) - coeff * &out[n - 1];
        out.push(next);
    }
    out
}

/// Classical Stieltjes-Wigert polynomial value under the chosen exponent
/// convention: S_n(x;q) = sum_k q^{e(k)} (-x)^k / ((q;q)_k (q;q)_{n-k}).
pub fn sw_classical(
    n: usize,
    x: &Float,
    q: &QParameter,
    convention: SwConvention,
    ctx: &PrecisionContext,
) -> Float {
    let bits = ctx.bits();
    let qq = qq_table(q, n, ctx);
    let mut sum = Float::new(bits);
    let neg_x = Float::with_val(bits, -x.clone());
    let mut xk = Float::with_val(bits, 1);
    for k in 0..=n {
        let e = match convention {
            SwConvention::KSquared => (k * k) as u32,
            SwConvention::KSquaredPlusK => (k * k + k) as u32,
        };
        let qe = Float::with_val(bits, q.value().pow(e));
        sum += qe * Float::with_val(bits, &xk / &Float::with_val(bits, &qq[k] * &qq[n - k]));
        xk *= &neg_x;
    }
    sum
}

/// Entire-function order estimated from the coefficient window 10..=kmax.
///
/// Fits -log|c_k| with A k log k + B k by least squares and returns 1/A, a
/// bias-corrected estimate of the limsup in the order formula. Coefficients
/// with |c_k| >= 1 or c_k = 0 are excluded; Degenerate if nothing remains.
pub fn order_estimate(
    fam: &CoefficientFamily,
    kmax: usize,
    ctx: &PrecisionContext,
) -> Result<Float> {
    if kmax < 10 {
        return Err(Error::InvalidParameter("kmax must be >= 10".into()));
    }
    let bits = ctx.bits();
    let coeffs = fam.coefficients_upto(kmax, ctx);
    let mut s11 = Float::new(bits);
    let mut s12 = Float::new(bits);
    let mut s22 = Float::new(bits);
    let mut b1 = Float::new(bits);
    let mut b2 = Float::new(bits);
    let mut count = 0usize;
    let mut single = None;
    for (k, c) in coeffs.iter().enumerate().skip(10) {
        let ac = Float::with_val(bits, c.abs_ref());
        if ac.is_zero() || ac >= 1u32 {
            continue;
        }
        let y = -Float::with_val(bits, ac.ln_ref());
        let kf = Float::with_val(bits, k as u32);
        let f1 = Float::with_val(bits, &kf * &Float::with_val(bits, kf.ln_ref()));
        let f2 = kf;
        s11 += Float::with_val(bits, f1.square_ref());
        s12 += Float::with_val(bits, &f1 * &f2);
        s22 += Float::with_val(bits, f2.square_ref());
        b1 += Float::with_val(bits, &f1 * &y);
        b2 += Float::with_val(bits, &f2 * &y);
        single = Some(Float::with_val(bits, &f1 / &y));
        count += 1;
    }
    if count == 0 {
        return Err(Error::Degenerate);
    }
    if count == 1 {
        return single.ok_or(Error::Degenerate);
    }
    let det = Float::with_val(bits, &s11 * &s22) - Float::with_val(bits, s12.square_ref());
    if det.is_zero() {
        return Err(Error::Degenerate);
    }
    let a = (Float::with_val(bits, &b1 * &s22) - Float::with_val(bits, &b2 * &s12)) / det;
    if !(a > 0u32) {
        return Err(Error::Degenerate);
    }
    Ok(Float::with_val(bits, 1u32 / &a))
}

#[cfg(test)]
mod tests {
    use super::*;

    fn ctx() -> PrecisionContext {
        PrecisionContext::default()
    }

    fn qp(s: &str, c: &PrecisionContext) -> QParameter {
        QParameter::from_str(s, c).unwrap()
    }

    fn aq(alpha: &str, a: &str, q: &str, c: &PrecisionContext) -> CoefficientFamily {
        CoefficientFamily::aq_alpha(c.parse(alpha).unwrap(), c.parse(a).unwrap(), qp(q, c)).unwrap()
    }

    #[test]
    fn coefficient_trivial_cases() {
        let c = ctx();
        let fam = aq("1", "0", "0.5", &c);
        assert_eq!(fam.coefficient(0, &c), 1u32);

        let hyper =
            CoefficientFamily::hyper_limit(vec![], vec![c.zero()]).unwrap();
        let v = hyper.coefficient(2, &c);
        assert_eq!(v, 0.25);
    }

    #[test]
    fn coefficient_aq_alpha_oracle() {
        // Direct evaluation oracle: (0.25;0.5)_2 * 0.5^4 / (0.5;0.5)_2
        let oracle: f64 = (1.0 - 0.25) * (1.0 - 0.125) * 0.0625 / ((1.0 - 0.5) * (1.0 - 0.25));
        assert!((oracle - 0.109375).abs() < 1e-15);
        let c = ctx();
        let fam = aq("1", "0.25", "0.5", &c);
        let v = fam.coefficient(2, &c);
        let diff = Float::with_val(c.bits(), &v - &c.parse("0.109375").unwrap());
        assert!(diff.abs() < c.ten_pow(-60));
    }

    #[test]
    fn ratio_quad_zero_before_start() {
        let c = ctx();
        let fam = CoefficientFamily::ratio_quad(
            c.one(),
            vec![c.one()],
            vec![c.one()],
            qp("0.4", &c),
            3,
            &c,
        )
        .unwrap();
        assert!(fam.coefficient(2, &c).is_zero());
        assert!(!fam.coefficient(3, &c).is_zero());
    }

    #[test]
    fn ratio_quad_rejects_boundary_q() {
        // q = 2^{-1/alpha} exactly violates the strict hypothesis
        let c = ctx();
        let r = CoefficientFamily::ratio_quad(
            c.one(),
            vec![c.one()],
            vec![c.one()],
            qp("0.5", &c),
            0,
            &c,
        );
        assert!(r.is_err());
    }

    #[test]
    fn rogers_szego_small_cases() {
        let c = ctx();
        let q = qp("0.5", &c);
        assert_eq!(rogers_szego(0, &c.parse("0.3").unwrap(), &c.parse("0.2").unwrap(), &q, &c), 1u32);
        let h1 = rogers_szego(1, &c.parse("0.3").unwrap(), &c.parse("0.2").unwrap(), &q, &c);
        let diff = Float::with_val(c.bits(), &h1 - &c.parse("0.5").unwrap());
        assert!(diff.abs() < c.ten_pow(-60));
        // h_2 = x^2 + (1+q) x y + y^2 = 0.09 + 1.5*0.06 + 0.04 = 0.22
        let oracle = 0.3f64 * 0.3 + 1.5 * 0.3 * 0.2 + 0.2 * 0.2;
        assert!((oracle - 0.22).abs() < 1e-15);
        let h2 = rogers_szego(2, &c.parse("0.3").unwrap(), &c.parse("0.2").unwrap(), &q, &c);
        let diff = Float::with_val(c.bits(), &h2 - &c.parse("0.22").unwrap());
        assert!(diff.abs() < c.ten_pow(-60));
    }

    #[test]
    fn stieltjes_wigert_small_cases() {
        let c = ctx();
        let q = qp("0.5", &c);
        let x = c.parse("-0.3").unwrap();
        let y = c.parse("-0.4").unwrap();
        assert_eq!(stieltjes_wigert_gn(0, &x, &y, &q, &c), 1u32);
        let g1 = stieltjes_wigert_gn(1, &x, &y, &q, &c);
        let diff = Float::with_val(c.bits(), &g1 - &c.parse("-0.7").unwrap());
        assert!(diff.abs() < c.ten_pow(-60));
        // g_2 = y^2 + (1+q) q^{-1} x y + x^2 = 0.16 + 1.5*2*0.12 + 0.09 = 0.61
        let oracle = 0.16f64 + 1.5 * 2.0 * 0.12 + 0.09;
        assert!((oracle - 0.61).abs() < 1e-15);
        let g2 = stieltjes_wigert_gn(2, &x, &y, &q, &c);
        let diff = Float::with_val(c.bits(), &g2 - &c.parse("0.61").unwrap());
        assert!(diff.abs() < c.ten_pow(-60));
    }

    #[test]
    fn rs_sw_tables_match_definition_sums() {
        let c = ctx();
        let q = qp("0.37", &c);
        let x = c.parse("0.8").unwrap();
        let y = c.parse("0.45").unwrap();
        let hs = rs_table(12, &x, &y, &q, &c, false);
        let gs = rs_table(12, &x, &y, &q, &c, true);
        for n in 0..=12usize {
            let dh = Float::with_val(c.bits(), &hs[n] - &rogers_szego(n, &x, &y, &q, &c));
            assert!(dh.abs() < c.ten_pow(-55), "h_{n} mismatch");
            let dg = Float::with_val(c.bits(), &gs[n] - &stieltjes_wigert_gn(n, &x, &y, &q, &c));
            assert!(dg.abs() < c.ten_pow(-50), "g_{n} mismatch");
        }
    }

    #[test]
    fn sw_classical_degree_one() {
        // n=1, convention k^2, x=1, q=0.5: 1/(q;q)_1 + q(-1)/(q;q)_1 = (1-q)/(1-q) = 1
        let c = ctx();
        let v = sw_classical(1, &c.one(), &qp("0.5", &c), SwConvention::KSquared, &c);
        let diff = Float::with_val(c.bits(), &v - 1u32);
        assert!(diff.abs() < c.ten_pow(-60));
        assert_eq!(
            sw_classical(0, &c.parse("2.7").unwrap(), &qp("0.3", &c), SwConvention::KSquaredPlusK, &c),
            1u32
        );
    }

    #[test]
    fn truncation_radius_zero() {
        let c = ctx();
        let fam = aq("1", "0", "0.5", &c);
        let tr = truncation_for(&fam, &c.zero(), &c.ten_pow(-30), &c).unwrap();
        assert_eq!(tr.n, 0);
        assert!(tr.tail_bound.is_zero());
    }

    #[test]
    fn truncation_aq_alpha_tail_verified_by_summation() {
        let c = ctx();
        let fam = aq("1", "0", "0.5", &c);
        let eps = c.ten_pow(-30);
        let tr = truncation_for(&fam, &c.one(), &eps, &c).unwrap();
        assert!(tr.tail_bound <= eps);
        assert!(tr.n >= 6 && tr.n <= 25, "N = {}", tr.n);
        // oracle: sum the next N terms directly and compare against the bound
        let mut tail = c.zero();
        for k in tr.n + 1..=2 * tr.n + 2 {
            tail += Float::with_val(c.bits(), fam.coefficient(k, &c).abs_ref());
        }
        assert!(tail <= tr.tail_bound);
    }

    #[test]
    fn truncation_hyper_limit() {
        let c = ctx();
        let fam = CoefficientFamily::hyper_limit(vec![], vec![c.zero()]).unwrap();
        let tr = truncation_for(&fam, &c.one(), &c.ten_pow(-30), &c).unwrap();
        assert!(tr.n <= 40, "N = {}", tr.n);
        assert!(tr.tail_bound <= c.ten_pow(-30));
        let mut tail = c.zero();
        for k in tr.n + 1..=2 * tr.n + 4 {
            tail += fam.coefficient(k, &c);
        }
        assert!(tail <= tr.tail_bound);
    }

    #[test]
    fn truncation_covers_terminating_series() {
        // a = q^{-2}: (a;q)_k = 0 for k >= 3, so the series is a polynomial.
        let c = ctx();
        let fam = aq("0.5", "4", "0.5", &c);
        let ts = TruncatedSeries::build(&fam, &c.parse("10").unwrap(), &c.ten_pow(-30), &c).unwrap();
        for k in 3..=ts.degree() {
            assert!(ts.coeffs[k].is_zero(), "c_{k} should vanish");
        }
    }

    #[test]
    fn evaluate_at_zero_is_one() {
        let c = ctx();
        let fam = aq("2", "0.9", "0.7", &c);
        let v = evaluate(&fam, &c.complex_zero(), &c.ten_pow(-30), &c).unwrap();
        assert_eq!(v, 1u32);
    }

    #[test]
    fn evaluate_partial_theta_frozen_oracle() {
        // Oracle: 30-term direct sum of sum 0.5^{k^2}/(0.5;0.5)_k at 60-digit
        // precision, written independently of the truncation machinery.
        let c = PrecisionContext::new(60, 20).unwrap();
        let bits = c.bits();
        let q = c.parse("0.5").unwrap();
        let mut oracle = Float::new(bits);
        for k in 0..=30i32 {
            let mut term = Float::with_val(bits, (&q).pow(k * k));
            for j in 1..=k {
                term /= Float::with_val(bits, 1u32 - &Float::with_val(bits, (&q).pow(j)));
            }
            oracle += term;
        }
        // digits fixed by this oracle
        let frozen = c
            .parse("2.1726687508496636560169136098593128206564369351096")
            .unwrap();
        let dd = Float::with_val(bits, &oracle - &frozen);
        assert!(dd.abs() < c.ten_pow(-45), "oracle drifted: {oracle}");

        let cc = ctx();
        let fam = aq("1", "0", "0.5", &cc);
        let z = cc.complex(cc.one(), cc.zero());
        let v = evaluate(&fam, &z, &cc.ten_pow(-30), &cc).unwrap();
        let diff = Float::with_val(
            cc.bits(),
            v.real() - &cc.parse("2.17266875084966365601691360985931").unwrap(),
        );
        assert!(diff.abs() < cc.ten_pow(-29));
    }

    #[test]
    fn evaluate_eps_consistency() {
        let c = ctx();
        let fam = CoefficientFamily::rogers_szego_series(
            c.one(),
            c.parse("0.3").unwrap(),
            c.parse("0.2").unwrap(),
            qp("0.5", &c),
        )
        .unwrap();
        let z = c.complex(c.parse("1.7").unwrap(), c.parse("-0.4").unwrap());
        let v20 = evaluate(&fam, &z, &c.ten_pow(-20), &c).unwrap();
        let v40 = evaluate(&fam, &z, &c.ten_pow(-40), &c).unwrap();
        let diff = Complex::with_val(c.bits(), &v20 - &v40);
        assert!(qcore::cabs(&diff, &c) < Float::with_val(c.bits(), 2) * c.ten_pow(-20));
    }

    #[test]
    fn rs_series_evaluate_within_lemma_bound() {
        // 0 <= h_n/(q;q)_n <= 1/(x,y;q)_inf for 0<x,y<1, so at z = 1 the sum is
        // positive and below sum q^{n^2} / ((x;q)_inf (y;q)_inf).
        let c = ctx();
        let q = qp("0.5", &c);
        let x = c.parse("0.3").unwrap();
        let y = c.parse("0.2").unwrap();
        let fam = CoefficientFamily::rogers_szego_series(c.one(), x.clone(), y.clone(), q.clone())
            .unwrap();
        let z = c.complex(c.one(), c.zero());
        let v = evaluate(&fam, &z, &c.ten_pow(-30), &c).unwrap();
        assert!(*v.real() > 0u32);
        let eps = c.ten_pow(-35);
        let px = qpochhammer_infinite_real(&x, &q, &eps, &c).unwrap();
        let py = qpochhammer_infinite_real(&y, &q, &eps, &c).unwrap();
        let mut theta = c.zero();
        for n in 0..=40u32 {
            theta += Float::with_val(c.bits(), q.value().pow(n * n));
        }
        let bound = theta / Float::with_val(c.bits(), &px * &py);
        assert!(*v.real() <= bound);
    }

    #[test]
    fn entirety_coefficient_root_decay() {
        // |c_k|^{1/k} decreasing beyond a small k0 for a grid of instances
        let c = ctx();
        let fams = vec![
            aq("1", "0.25", "0.5", &c),
            aq("0.5", "-0.7", "0.3", &c),
            CoefficientFamily::hyper_limit(vec![2], vec![c.zero()]).unwrap(),
            CoefficientFamily::rogers_szego_series(
                c.one(),
                c.parse("0.3").unwrap(),
                c.parse("0.7").unwrap(),
                qp("0.5", &c),
            )
            .unwrap(),
            CoefficientFamily::stieltjes_wigert_series(
                c.parse("0.5").unwrap(),
                c.parse("-0.3").unwrap(),
                c.parse("-0.4").unwrap(),
                qp("0.5", &c),
            )
            .unwrap(),
        ];
        for fam in fams {
            let coeffs = fam.coefficients_upto(60, &c);
            let mut prev: Option<Float> = None;
            let mut decreasing_from = None;
            for (k, ck) in coeffs.iter().enumerate().skip(5) {
                let ac = Float::with_val(c.bits(), ck.abs_ref());
                if ac.is_zero() {
                    continue;
                }
                let root = Float::with_val(
                    c.bits(),
                    ac.pow(&Float::with_val(c.bits(), 1f64 / k as f64)),
                );
                if let Some(p) = &prev {
                    if root < *p && decreasing_from.is_none() {
                        decreasing_from = Some(k);
                    }
                }
                prev = Some(root);
            }
            assert!(decreasing_from.is_some(), "{} never decays", fam.name());
        }
    }

    #[test]
    fn majorant_dominates_coefficients() {
        let c = ctx();
        let fams = vec![
            aq("1", "-2.5", "0.6", &c),
            CoefficientFamily::rogers_szego_series(
                c.parse("0.75").unwrap(),
                c.parse("1.5").unwrap(),
                c.parse("0.5").unwrap(),
                qp("0.5", &c),
            )
            .unwrap(),
            CoefficientFamily::stieltjes_wigert_series(
                c.parse("0.5").unwrap(),
                c.parse("-0.9").unwrap(),
                c.parse("-0.2").unwrap(),
                qp("0.65", &c),
            )
            .unwrap(),
        ];
        for fam in fams {
            for k in 0..50usize {
                let ck = Float::with_val(c.bits(), fam.coefficient(k, &c).abs_ref());
                let mk = fam.majorant_at(k, &c).unwrap();
                assert!(
                    ck <= Float::with_val(c.bits(), &mk * &c.parse("1.0000001").unwrap()),
                    "majorant fails for {} at k={k}: |c|={ck}, M={mk}",
                    fam.name()
                );
                // and the envelope is the exact majorant step
                let mk1 = fam.majorant_at(k + 1, &c).unwrap();
                let step = Float::with_val(c.bits(), &mk * &fam.envelope(k, &c));
                let rel = Float::with_val(c.bits(), &mk1 - &step).abs()
                    / Float::with_val(c.bits(), mk1.abs_ref());
                assert!(rel < c.ten_pow(-40), "envelope mismatch for {}", fam.name());
            }
        }
    }

    #[test]
    fn envelope_nonincreasing() {
        let c = ctx();
        let fam = CoefficientFamily::ratio_quad(
            c.one(),
            vec![c.parse("0.01").unwrap()],
            vec![c.parse("5").unwrap()],
            qp("0.45", &c),
            2,
            &c,
        )
        .unwrap();
        let k0 = fam.envelope_start(&c).unwrap();
        let mut prev = fam.envelope(k0, &c);
        for k in k0 + 1..k0 + 60 {
            let e = fam.envelope(k, &c);
            assert!(e <= prev);
            prev = e;
        }
    }

    #[test]
    fn order_estimate_hyper_limit_bands() {
        let c = ctx();
        let f1 = CoefficientFamily::hyper_limit(vec![], vec![c.zero()]).unwrap();
        let rho1 = order_estimate(&f1, 500, &c).unwrap();
        assert!(rho1 > 0.45 && rho1 < 0.55, "rho = {rho1}");
        let f2 = CoefficientFamily::hyper_limit(vec![], vec![c.zero(), c.zero()]).unwrap();
        let rho2 = order_estimate(&f2, 500, &c).unwrap();
        assert!(rho2 > 0.20 && rho2 < 0.30, "rho = {rho2}");
    }

    #[test]
    fn order_estimate_ratio_quad_near_zero() {
        let c = ctx();
        let fam = CoefficientFamily::ratio_quad(
            c.one(),
            vec![c.one()],
            vec![c.one()],
            qp("0.4", &c),
            0,
            &c,
        )
        .unwrap();
        let rho = order_estimate(&fam, 300, &c).unwrap();
        assert!(rho < 0.05, "rho = {rho}");
    }

    #[test]
    fn order_estimate_degenerate() {
        // growing coefficients: (5)_k / (1)_k has |c_k| >= 1 throughout
        let c = ctx();
        let fam = CoefficientFamily::HyperLimit {
            l: vec![],
            nu: vec![],
        };
        // hand-built degenerate family: coefficient = 1 for all k
        assert!(matches!(order_estimate(&fam, 50, &c), Err(Error::Degenerate)));
    }
}

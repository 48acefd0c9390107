//! JSON and CSV serialization. Numbers serialize as decimal strings so
//! 50-digit results survive the round trip; serde_json's BTreeMap keeps key
//! order (and therefore bytes) deterministic.

use crate::identities::IdentityReport;
use crate::precision::PrecisionContext;
use crate::series::CoefficientFamily;
use crate::totalpos::PfVerdict;
use crate::zeros::ZeroReport;
use rug::{Complex, Float};
use serde_json::{json, Value};

/// Decimal-string rendering at the requested digit count.
pub fn float_dec(x: &Float, digits: u32) -> String {
    if x.is_zero() {
        return "0".to_string();
    }
    x.to_string_radix(10, Some(digits as usize))
}

pub fn complex_json(z: &Complex, digits: u32) -> Value {
    json!({
        "re": float_dec(&Float::with_val(z.real().prec(), z.real()), digits),
        "im": float_dec(&Float::with_val(z.imag().prec(), z.imag()), digits),
    })
}

pub fn family_json(fam: &CoefficientFamily, ctx: &PrecisionContext) -> Value {
    let d = ctx.decimal_digits();
    let fs = |x: &Float| float_dec(x, d);
    match fam {
        CoefficientFamily::AqAlpha { alpha, a, q } => json!({
            "name": "aq_alpha",
            "alpha": fs(alpha),
            "a": fs(a),
            "q": fs(q.value()),
        }),
        CoefficientFamily::MixedQ {
            alpha,
            q,
            l,
            qj,
            nu,
            qr,
        } => json!({
            "name": "mixed_q",
            "alpha": fs(alpha),
            "q": fs(q.value()),
            "l": l,
            "qj": qj.iter().map(|v| fs(v.value())).collect::<Vec<_>>(),
            "nu": nu.iter().map(fs).collect::<Vec<_>>(),
            "qr": qr.iter().map(|v| fs(v.value())).collect::<Vec<_>>(),
        }),
        CoefficientFamily::HyperLimit { l, nu } => json!({
            "name": "hyper_limit",
            "l": l,
            "nu": nu.iter().map(fs).collect::<Vec<_>>(),
        }),
        CoefficientFamily::RatioQuad {
            alpha,
            a,
            b,
            q,
            start,
        } => json!({
            "name": "ratio_quad",
            "alpha": fs(alpha),
            "a": a.iter().map(fs).collect::<Vec<_>>(),
            "b": b.iter().map(fs).collect::<Vec<_>>(),
            "q": fs(q.value()),
            "start": start,
        }),
        CoefficientFamily::RogersSzego { alpha, x, y, q } => json!({
            "name": "rogers_szego",
            "alpha": fs(alpha),
            "x": fs(x),
            "y": fs(y),
            "q": fs(q.value()),
        }),
        CoefficientFamily::StieltjesWigert { alpha, x, y, q } => json!({
            "name": "stieltjes_wigert",
            "alpha": fs(alpha),
            "x": fs(x),
            "y": fs(y),
            "q": fs(q.value()),
        }),
    }
}

impl ZeroReport {
    pub fn to_json(&self, ctx: &PrecisionContext) -> Value {
        let d = ctx.decimal_digits();
        json!({
            "family": family_json(&self.family, ctx),
            "disk_radius": float_dec(&self.disk_radius, d),
            "winding_count": self.winding_count,
            "certificate": self.certificate.as_str(),
            "half_axis": self.half_axis.map(|h| h.as_str()),
            "confined": self.confined,
            "cross_im_ratio": self.cross_im_ratio.as_ref().map(|v| float_dec(v, 8)),
            "truncation": {
                "n": self.truncation.n,
                "radius": float_dec(&self.truncation.radius, d),
                "tail_bound": float_dec(&self.truncation.tail_bound, 8),
            },
            "zeros": self.zeros.iter().map(|z| json!({
                "location": complex_json(&z.location, d),
                "enclosure_radius": float_dec(&z.enclosure_radius, 8),
                "classification": z.classification.as_str(),
            })).collect::<Vec<_>>(),
        })
    }

    /// One zero per row.
    pub fn to_csv(&self, ctx: &PrecisionContext) -> String {
        let d = ctx.decimal_digits();
        let mut out = String::from("index,re,im,enclosure_radius,classification\n");
        for (i, z) in self.zeros.iter().enumerate() {
            let re = Float::with_val(ctx.bits(), z.location.real());
            let im = Float::with_val(ctx.bits(), z.location.imag());
            out.push_str(&format!(
                "{},{},{},{},{}\n",
                i,
                float_dec(&re, d),
                float_dec(&im, d),
                float_dec(&z.enclosure_radius, 8),
                z.classification.as_str()
            ));
        }
        out
    }
}

impl PfVerdict {
    pub fn to_json(&self, ctx: &PrecisionContext) -> Value {
        json!({
            "is_pf": self.is_pf,
            "order_tested": self.order_tested,
            "window_tested": self.window_tested,
            "witness": self.witness.as_ref().map(|w| json!({
                "rows": w.rows,
                "cols": w.cols,
                "value": float_dec(&w.value, ctx.decimal_digits()),
            })),
        })
    }
}

impl IdentityReport {
    pub fn to_json(&self, ctx: &PrecisionContext) -> Value {
        let d = ctx.decimal_digits();
        json!({
            "name": self.name,
            "lhs": complex_json(&self.lhs, d),
            "rhs": complex_json(&self.rhs, d),
            "abs_residual": float_dec(&self.abs_residual, 8),
            "pass": self.pass,
            "detail": self.detail,
        })
    }
}

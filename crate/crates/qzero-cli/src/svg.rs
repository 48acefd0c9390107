//! SVG scatter of a zero report: disk boundary, real axis, one marker per
//! zero, and the certificate flag in the legend.

use qzero::precision::PrecisionContext;
use qzero::zeros::{ZeroClass, ZeroReport};
use qzero::Result;
use rug::Float;
use std::path::Path;

const SIZE: f64 = 800.0;

fn color(class: ZeroClass) -> &'static str {
    match class {
        ZeroClass::NegativeReal => "#1965b0",
        ZeroClass::PositiveReal => "#4eb265",
        ZeroClass::ComplexPair => "#dc050c",
    }
}

pub fn render_svg(report: &ZeroReport, ctx: &PrecisionContext) -> String {
    let radius = report.disk_radius.to_f64();
    let span = radius * 1.15;
    let scale = SIZE / (2.0 * span);
    let map = |re: f64, im: f64| -> (f64, f64) {
        ((re + span) * scale, (span - im) * scale)
    };
    let (cx, cy) = map(0.0, 0.0);
    let mut out = String::new();
    out.push_str(&format!(
        "<svg xmlns=\"http://www.w3.org/2000/svg\" width=\"{SIZE}\" height=\"{SIZE}\" \
         viewBox=\"0 0 {SIZE} {SIZE}\">\n"
    ));
    out.push_str(&format!(
        "  <rect width=\"{SIZE}\" height=\"{SIZE}\" fill=\"white\"/>\n"
    ));
    // real axis and imaginary axis
    out.push_str(&format!(
        "  <line x1=\"0\" y1=\"{cy}\" x2=\"{SIZE}\" y2=\"{cy}\" stroke=\"#bbbbbb\" stroke-width=\"1\"/>\n"
    ));
    out.push_str(&format!(
        "  <line x1=\"{cx}\" y1=\"0\" x2=\"{cx}\" y2=\"{SIZE}\" stroke=\"#dddddd\" stroke-width=\"1\"/>\n"
    ));
    // disk boundary
    out.push_str(&format!(
        "  <circle cx=\"{cx}\" cy=\"{cy}\" r=\"{}\" fill=\"none\" stroke=\"#333333\" \
         stroke-width=\"1.5\" stroke-dasharray=\"6 4\"/>\n",
        radius * scale
    ));
    for z in &report.zeros {
        let re = Float::with_val(ctx.bits(), z.location.real()).to_f64();
        let im = Float::with_val(ctx.bits(), z.location.imag()).to_f64();
        let (x, y) = map(re, im);
        out.push_str(&format!(
            "  <circle cx=\"{x:.3}\" cy=\"{y:.3}\" r=\"5\" fill=\"{}\" fill-opacity=\"0.85\">\
             <title>{} ({:.6e}, {:.6e})</title></circle>\n",
            color(z.classification),
            z.classification.as_str(),
            re,
            im
        ));
    }
    // legend
    out.push_str(&format!(
        "  <text x=\"12\" y=\"20\" font-family=\"monospace\" font-size=\"14\">family: {} | zeros: {} | certificate: {}</text>\n",
        report.family.name(),
        report.zeros.len(),
        report.certificate.as_str()
    ));
    let mut ly = 40.0;
    for (class, label) in [
        (ZeroClass::NegativeReal, "negative-real"),
        (ZeroClass::PositiveReal, "positive-real"),
        (ZeroClass::ComplexPair, "complex-pair"),
    ] {
        out.push_str(&format!(
            "  <circle cx=\"18\" cy=\"{}\" r=\"5\" fill=\"{}\"/>\n  <text x=\"30\" y=\"{}\" \
             font-family=\"monospace\" font-size=\"12\">{label}</text>\n",
            ly,
            color(class),
            ly + 4.0
        ));
        ly += 18.0;
    }
    out.push_str("</svg>\n");
    out
}

/// Write the scatter to disk.
pub fn emit_svg(report: &ZeroReport, ctx: &PrecisionContext, path: &Path) -> Result<()> {
    if report.zeros.is_empty() && report.winding_count == 0 {
        return Err(qzero::Error::InvalidParameter(
            "refusing to plot an empty report".into(),
        ));
    }
    std::fs::write(path, render_svg(report, ctx))?;
    Ok(())
}

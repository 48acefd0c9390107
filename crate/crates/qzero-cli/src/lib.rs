//! CLI front end: argument parsing, suite orchestration, JSON/CSV/SVG
//! emission. Every numeric result comes from the library; this crate only
//! parses, dispatches, formats, and maps errors to exit codes
//! (0 pass, 1 claim failed, 2 inconclusive, 3 usage).

mod args;
mod svg;

pub use svg::{emit_svg, render_svg};

use args::{Cli, Command, FamilyArgs, Format, HalfAxisArg};
use clap::Parser;
use qzero::identities;
use qzero::precision::PrecisionContext;
use qzero::qcore::QParameter;
use qzero::report::float_dec;
use qzero::series::{self, CoefficientFamily};
use qzero::suites;
use qzero::totalpos;
use qzero::zeros::{self, HalfAxis};
use qzero::{Error, Result};
use rug::{Complex, Float};
use std::ffi::OsString;
use std::path::PathBuf;

/// Parse argv, execute, and return the process exit code.
pub fn run<I, T>(argv: I) -> i32
where
    I: IntoIterator<Item = T>,
    T: Into<OsString> + Clone,
{
    let cli = match Cli::try_parse_from(argv) {
        Ok(cli) => cli,
        Err(e) => {
            let code = if e.exit_code() == 0 { 0 } else { 3 };
            let _ = e.print();
            return code;
        }
    };
    let ctx = match build_ctx(&cli) {
        Ok(ctx) => ctx,
        Err(e) => {
            eprintln!("error: {e}");
            return 3;
        }
    };
    match execute(&cli, &ctx) {
        Ok(Outcome { text, claim_ok }) => {
            if let Err(e) = deliver(&text, &cli.out) {
                eprintln!("error: {e}");
                return 3;
            }
            if claim_ok {
                0
            } else {
                1
            }
        }
        Err(e) => {
            eprintln!("error: {e}");
            code_for_error(&e)
        }
    }
}

struct Outcome {
    text: String,
    claim_ok: bool,
}

fn build_ctx(cli: &Cli) -> Result<PrecisionContext> {
    let digits = match cli.digits {
        Some(d) => d,
        None => match std::env::var("QZERO_DIGITS") {
            Ok(v) => v
                .parse()
                .map_err(|_| Error::Parse(format!("QZERO_DIGITS={v:?} is not an integer")))?,
            Err(_) => 50,
        },
    };
    PrecisionContext::new(digits, cli.guard)
}

fn code_for_error(e: &Error) -> i32 {
    match e {
        Error::InvalidParameter(_)
        | Error::OutOfRange(_)
        | Error::Parse(_)
        | Error::DomainViolation(_)
        | Error::Io(_) => 3,
        Error::DivergentInput(_)
        | Error::NoConvergence(_)
        | Error::Degenerate
        | Error::WindowTooLarge { .. }
        | Error::DegenerateAllZero
        | Error::IllConditioned
        | Error::ZeroOnContour
        | Error::NotEnoughZerosFound { .. }
        | Error::HorizonExceeded(_) => 2,
    }
}

fn deliver(text: &str, out: &Option<PathBuf>) -> Result<()> {
    match out {
        Some(path) => {
            std::fs::write(path, text)?;
        }
        None => print!("{text}"),
    }
    Ok(())
}

fn req<'a>(opt: &'a Option<String>, name: &str) -> Result<&'a str> {
    opt.as_deref()
        .ok_or_else(|| Error::InvalidParameter(format!("missing {name}")))
}

fn parse_list(ctx: &PrecisionContext, s: &str) -> Result<Vec<Float>> {
    s.split(',').map(|p| ctx.parse(p.trim())).collect()
}

fn parse_u32_list(s: &str) -> Result<Vec<u32>> {
    s.split(',')
        .map(|p| {
            p.trim()
                .parse()
                .map_err(|_| Error::Parse(format!("bad integer {p:?}")))
        })
        .collect()
}

fn parse_q_list(ctx: &PrecisionContext, s: &str) -> Result<Vec<QParameter>> {
    s.split(',')
        .map(|p| QParameter::from_str(p.trim(), ctx))
        .collect()
}

fn parse_complex(ctx: &PrecisionContext, s: &str) -> Result<Complex> {
    match s.split_once(',') {
        Some((re, im)) => Ok(ctx.complex(ctx.parse(re.trim())?, ctx.parse(im.trim())?)),
        None => Ok(ctx.complex(ctx.parse(s.trim())?, ctx.zero())),
    }
}

fn family_from_args(fa: &FamilyArgs, ctx: &PrecisionContext) -> Result<CoefficientFamily> {
    match fa.family.as_str() {
        "aq" => CoefficientFamily::aq_alpha(
            ctx.parse(req(&fa.alpha, "--alpha")?)?,
            ctx.parse(req(&fa.a, "--a")?)?,
            QParameter::from_str(req(&fa.q, "--q")?, ctx)?,
        ),
        "mixed" => CoefficientFamily::mixed_q(
            ctx.parse(req(&fa.alpha, "--alpha")?)?,
            QParameter::from_str(req(&fa.q, "--q")?, ctx)?,
            parse_u32_list(req(&fa.l, "--l")?)?,
            parse_q_list(ctx, req(&fa.qj, "--qj")?)?,
            parse_list(ctx, req(&fa.nu, "--nu")?)?,
            parse_q_list(ctx, req(&fa.qr, "--qr")?)?,
        ),
        "hyper" => CoefficientFamily::hyper_limit(
            fa.l.as_deref().map(parse_u32_list).transpose()?.unwrap_or_default(),
            parse_list(ctx, req(&fa.nu, "--nu")?)?,
        ),
        "ratio" => CoefficientFamily::ratio_quad(
            ctx.parse(req(&fa.alpha, "--alpha")?)?,
            parse_list(ctx, req(&fa.a, "--a")?)?,
            parse_list(ctx, req(&fa.b, "--b")?)?,
            QParameter::from_str(req(&fa.q, "--q")?, ctx)?,
            fa.start.unwrap_or(0),
            ctx,
        ),
        "rs" => CoefficientFamily::rogers_szego_series(
            ctx.parse(req(&fa.alpha, "--alpha")?)?,
            ctx.parse(req(&fa.x, "--x")?)?,
            ctx.parse(req(&fa.y, "--y")?)?,
            QParameter::from_str(req(&fa.q, "--q")?, ctx)?,
        ),
        "sw" => CoefficientFamily::stieltjes_wigert_series(
            ctx.parse(req(&fa.alpha, "--alpha")?)?,
            ctx.parse(req(&fa.x, "--x")?)?,
            ctx.parse(req(&fa.y, "--y")?)?,
            QParameter::from_str(req(&fa.q, "--q")?, ctx)?,
        ),
        other => Err(Error::InvalidParameter(format!(
            "unknown family {other:?}; expected aq | mixed | hyper | ratio | rs | sw"
        ))),
    }
}

fn default_eps(ctx: &PrecisionContext, eps: &Option<String>) -> Result<Float> {
    match eps {
        Some(s) => {
            let e = ctx.parse(s)?;
            if !(e.is_sign_positive() && !e.is_zero()) {
                return Err(Error::InvalidParameter("--eps must be positive".into()));
            }
            Ok(e)
        }
        None => Ok(ctx.ten_pow(-30)),
    }
}

fn execute(cli: &Cli, ctx: &PrecisionContext) -> Result<Outcome> {
    match &cli.cmd {
        Command::Eval { family, z, eps } => {
            let fam = family_from_args(family, ctx)?;
            let z = parse_complex(ctx, z)?;
            let eps = default_eps(ctx, eps)?;
            let v = series::evaluate(&fam, &z, &eps, ctx)?;
            let d = ctx.decimal_digits();
            let text = match cli.format {
                Format::Json => {
                    let j = serde_json::json!({
                        "family": qzero::report::family_json(&fam, ctx),
                        "z": qzero::report::complex_json(&z, d),
                        "value": qzero::report::complex_json(&v, d),
                    });
                    format!("{}\n", serde_json::to_string_pretty(&j).expect("json"))
                }
                _ => {
                    let re = Float::with_val(ctx.bits(), v.real());
                    let im = Float::with_val(ctx.bits(), v.imag());
                    if im.is_zero() {
                        format!("{}\n", float_dec(&re, d))
                    } else {
                        format!("{} {:+}i\n", float_dec(&re, d), im)
                    }
                }
            };
            Ok(Outcome {
                text,
                claim_ok: true,
            })
        }
        Command::Zeros {
            family,
            radius,
            count,
            half,
            eps,
        } => {
            let fam = family_from_args(family, ctx)?;
            let eps = default_eps(ctx, eps)?;
            let half = match half {
                HalfAxisArg::Negative => HalfAxis::Negative,
                HalfAxisArg::Positive => HalfAxis::Positive,
            };
            let r = match radius {
                Some(s) => ctx.parse(s)?,
                None => zeros::disk_enclosing_zeros(&fam, *count, &eps, ctx)?.0,
            };
            let report = zeros::axis_confinement(&fam, &r, half, &eps, ctx)?;
            let claim_ok = report.confined == Some(true);
            let text = match cli.format {
                Format::Json => format!(
                    "{}\n",
                    serde_json::to_string_pretty(&report.to_json(ctx)).expect("json")
                ),
                Format::Csv => report.to_csv(ctx),
                Format::Svg => render_svg(&report, ctx),
                Format::Text => {
                    let mut s = String::new();
                    s.push_str(&format!(
                        "disk radius {} | winding count {} | confined {:?} | certificate {}\n",
                        float_dec(&report.disk_radius, 8),
                        report.winding_count,
                        report.confined,
                        report.certificate.as_str()
                    ));
                    for (i, z) in report.zeros.iter().enumerate() {
                        let re = Float::with_val(ctx.bits(), z.location.real());
                        let im = Float::with_val(ctx.bits(), z.location.imag());
                        let location = if im.is_zero() {
                            float_dec(&re, ctx.decimal_digits())
                        } else {
                            format!(
                                "{} {}{}i",
                                float_dec(&re, ctx.decimal_digits()),
                                if im.is_sign_positive() { "+" } else { "-" },
                                float_dec(&Float::with_val(ctx.bits(), im.abs_ref()), 12)
                            )
                        };
                        s.push_str(&format!(
                            "zero {} at {} ({}, enclosure {})\n",
                            i + 1,
                            location,
                            z.classification.as_str(),
                            float_dec(&z.enclosure_radius, 4)
                        ));
                    }
                    s
                }
            };
            Ok(Outcome { text, claim_ok })
        }
        Command::Pfcheck {
            seq,
            window,
            order,
            tol,
            float,
            roots,
        } => {
            let raw = std::fs::read_to_string(seq)?;
            let parsed: serde_json::Value = serde_json::from_str(&raw)
                .map_err(|e| Error::Parse(format!("bad JSON in {}: {e}", seq.display())))?;
            let entries: Vec<String> = parsed
                .as_array()
                .ok_or_else(|| Error::Parse("expected a JSON array of decimal strings".into()))?
                .iter()
                .map(|v| match v {
                    serde_json::Value::String(s) => Ok(s.clone()),
                    serde_json::Value::Number(n) => Ok(n.to_string()),
                    _ => Err(Error::Parse("sequence entries must be strings".into())),
                })
                .collect::<Result<_>>()?;
            let verdict = if *float {
                let tol = match tol {
                    Some(s) => ctx.parse(s)?,
                    None => ctx.ten_pow(-(i64::from(ctx.decimal_digits()) - 10)),
                };
                let floats: Vec<Float> = entries
                    .iter()
                    .map(|s| ctx.parse(s))
                    .collect::<Result<_>>()?;
                totalpos::is_pf_window(&floats, *window, *order, &tol, ctx)?
            } else {
                let rats: Vec<rug::Rational> = entries
                    .iter()
                    .map(|s| qzero::precision::parse_decimal_rational(s))
                    .collect::<Result<_>>()?;
                totalpos::is_pf_window_exact(&rats, *window, *order, ctx)?
            };
            let root_verdict = if *roots {
                let floats: Vec<Float> = entries
                    .iter()
                    .map(|s| ctx.parse(s))
                    .collect::<Result<_>>()?;
                Some(totalpos::pf_via_roots(&floats, ctx)?)
            } else {
                None
            };
            let claim_ok = verdict.is_pf && root_verdict.map(|r| r == verdict.is_pf).unwrap_or(true);
            let text = match cli.format {
                Format::Json => {
                    let mut j = verdict.to_json(ctx);
                    if let Some(r) = root_verdict {
                        j["root_oracle"] = serde_json::json!(r);
                    }
                    format!("{}\n", serde_json::to_string_pretty(&j).expect("json"))
                }
                _ => {
                    let mut s = format!(
                        "is_pf: {} (window {}, order {})\n",
                        verdict.is_pf, verdict.window_tested, verdict.order_tested
                    );
                    if let Some(w) = &verdict.witness {
                        s.push_str(&format!(
                            "witness minor rows {:?} x cols {:?} = {}\n",
                            w.rows,
                            w.cols,
                            float_dec(&w.value, 12)
                        ));
                    }
                    if let Some(r) = root_verdict {
                        s.push_str(&format!("root oracle: {r}\n"));
                    }
                    s
                }
            };
            Ok(Outcome { text, claim_ok })
        }
        Command::Identity {
            name,
            a,
            x,
            y,
            q,
            z,
            t,
            l,
            nu,
            k,
            j,
            n,
            n_max,
            eps,
        } => {
            let eps = default_eps(ctx, eps)?;
            let qp = QParameter::from_str(req(q, "--q")?, ctx)?;
            let rep = match name.as_str() {
                "q-binomial" => {
                    let a = parse_complex(ctx, req(a, "--a")?)?;
                    let x = parse_complex(ctx, req(x, "--x")?)?;
                    identities::q_binomial_identity(&a, &x, &qp, &eps, ctx)?
                }
                "collapse" => {
                    let l = l.ok_or_else(|| Error::InvalidParameter("missing --l".into()))?;
                    let z = parse_complex(ctx, req(z, "--z")?)?;
                    identities::collapse_check(l, &z, &qp, &eps, ctx)?
                }
                "rs-gf" => identities::rs_generating_function(
                    &ctx.parse(req(x, "--x")?)?,
                    &ctx.parse(req(y, "--y")?)?,
                    &qp,
                    &ctx.parse(req(t, "--t")?)?,
                    &eps,
                    ctx,
                )?,
                "sw-gf" => identities::sw_generating_function(
                    &ctx.parse(req(x, "--x")?)?,
                    &ctx.parse(req(y, "--y")?)?,
                    &qp,
                    &ctx.parse(req(t, "--t")?)?,
                    &eps,
                    ctx,
                )?,
                "aq-special" => {
                    let n = n.ok_or_else(|| Error::InvalidParameter("missing --n".into()))?;
                    let z = ctx.parse(req(z, "--z")?)?;
                    identities::aq_special_cases(n, &z, &qp, &eps, ctx)?.0
                }
                "hopital" => {
                    let l = l.ok_or_else(|| Error::InvalidParameter("missing --l".into()))?;
                    let nu = ctx.parse(req(nu, "--nu")?)?;
                    let k = k.ok_or_else(|| Error::InvalidParameter("missing --k".into()))?;
                    let j = j.ok_or_else(|| Error::InvalidParameter("missing --j".into()))?;
                    identities::hopital_limits(l, &nu, k, j, ctx)?
                }
                "pochhammer" => {
                    let l = l.ok_or_else(|| Error::InvalidParameter("missing --l".into()))?;
                    identities::pochhammer_inequality(l, &qp, ctx)?
                }
                "hn-bound" => identities::hn_bound_check(
                    &ctx.parse(req(x, "--x")?)?,
                    &ctx.parse(req(y, "--y")?)?,
                    &qp,
                    n_max.unwrap_or(50),
                    ctx,
                )?,
                other => {
                    return Err(Error::InvalidParameter(format!(
                        "unknown identity {other:?}"
                    )))
                }
            };
            let claim_ok = rep.pass;
            let text = match cli.format {
                Format::Json => format!(
                    "{}\n",
                    serde_json::to_string_pretty(&rep.to_json(ctx)).expect("json")
                ),
                _ => format!(
                    "{}: {} (residual {}{})\n",
                    rep.name,
                    if rep.pass { "PASS" } else { "FAIL" },
                    float_dec(&rep.abs_residual, 6),
                    if rep.detail.is_empty() {
                        String::new()
                    } else {
                        format!("; {}", rep.detail)
                    }
                ),
            };
            Ok(Outcome { text, claim_ok })
        }
        Command::Verify {
            theorem,
            l,
            alpha,
            q,
            zeros: zeros_wanted,
        } => {
            let single_instance =
                l.is_some() || alpha.is_some() || q.is_some() || zeros_wanted.is_some();
            let suite = match (theorem.as_str(), single_instance) {
                ("t1i", true) => {
                    let l = l.unwrap_or(2);
                    let alpha = ctx.parse(alpha.as_deref().unwrap_or("1"))?;
                    let qp = QParameter::from_str(q.as_deref().unwrap_or("0.5"), ctx)?;
                    let want = zeros_wanted.unwrap_or(8);
                    let (checks, report) = suites::theorem1_i(l, &alpha, &qp, want, ctx)?;
                    let mut s = suites::SuiteReport::new_with_key("t1i");
                    s.checks = checks;
                    s.zero_reports = vec![report];
                    s
                }
                ("klv-threshold", true) => {
                    let alpha = ctx.parse(alpha.as_deref().unwrap_or("1"))?;
                    suites::suite_klv_threshold(&alpha, ctx)?
                }
                (key, _) => suites::run_suite(key, ctx)?,
            };
            let claim_ok = suite.pass();
            let text = match cli.format {
                Format::Json => format!(
                    "{}\n",
                    serde_json::to_string_pretty(&suite.to_json(ctx)).expect("json")
                ),
                Format::Svg => {
                    let report = suite.zero_reports.first().ok_or_else(|| {
                        Error::InvalidParameter("suite produced no zero report to plot".into())
                    })?;
                    render_svg(report, ctx)
                }
                Format::Csv => {
                    let mut s = String::from("check,pass,detail\n");
                    for c in &suite.checks {
                        s.push_str(&format!("{:?},{},{:?}\n", c.name, c.pass, c.detail));
                    }
                    s
                }
                Format::Text => suite.render_text(),
            };
            Ok(Outcome { text, claim_ok })
        }
        Command::Order { family, kmax } => {
            let fam = family_from_args(family, ctx)?;
            let rho = series::order_estimate(&fam, *kmax, ctx)?;
            let text = match cli.format {
                Format::Json => format!(
                    "{}\n",
                    serde_json::to_string_pretty(&serde_json::json!({
                        "family": qzero::report::family_json(&fam, ctx),
                        "kmax": kmax,
                        "order_estimate": float_dec(&rho, 10),
                    }))
                    .expect("json")
                ),
                _ => format!("{}\n", float_dec(&rho, 10)),
            };
            Ok(Outcome {
                text,
                claim_ok: true,
            })
        }
    }
}

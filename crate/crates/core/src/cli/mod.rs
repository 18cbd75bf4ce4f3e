//! Command-line front end: argument parsing, dispatch and rendering.

pub mod claims;
pub mod config;

use std::ffi::OsString;
use std::io::Write;
use std::path::PathBuf;

use clap::{Args, Parser, Subcommand, ValueEnum};
use serde_json::{json, Value};

use crate::error::{Error, Result};
use crate::explicit_bounds::{
    lower_bound_appendix, lower_bound_appendix_count, lower_bound_count_main, lower_bound_main,
};
use crate::optimize::{
    find_threshold, minimize_alpha_with, BetaSpec, BoundKind, BoundTemplate, CSpec,
};
use crate::quadrature::f_integral;
use crate::report::{ClaimReport, Status};
use claims::{Context, Report};
use config::{OutputFormat, RunConfig, ZeroSource, DEFAULT_SIEVE_CAP, QUICK_SIEVE_CAP};

pub const EXIT_PASS: i32 = 0;
pub const EXIT_FAIL: i32 = 1;
pub const EXIT_USAGE: i32 = 2;

/// Accepts `1e7`-style values for integer flags.
fn parse_count(s: &str) -> std::result::Result<u64, String> {
    let v: f64 = s.parse().map_err(|_| format!("not a number: {s}"))?;
    if !(v >= 0.0) || v > u64::MAX as f64 || v.fract() != 0.0 {
        return Err(format!("not a nonnegative integer: {s}"));
    }
    Ok(v as u64)
}

#[derive(Parser, Debug)]
#[command(
    name = "primegap",
    version,
    about = "Explicit prime-gap bounds and their numerical checks"
)]
struct Cli {
    #[command(flatten)]
    global: GlobalArgs,
    #[command(subcommand)]
    command: Command,
}

#[derive(Args, Debug)]
struct GlobalArgs {
    /// Zero ordinate table (default: $PRIMEGAP_ZEROS, then the bundled table).
    #[arg(long, global = true)]
    zeros: Option<PathBuf>,
    /// Skip every zero-dependent claim.
    #[arg(long, global = true)]
    no_zeros: bool,
    #[arg(long, global = true, default_value_t = config::DEFAULT_TOL_QUAD)]
    tol_quad: f64,
    /// Worker threads (0 = all cores).
    #[arg(long, global = true, default_value_t = 0)]
    threads: usize,
    #[arg(long, global = true, value_enum, default_value_t = OutputFormat::Json)]
    output: OutputFormat,
    #[arg(long, global = true, value_parser = parse_count)]
    sieve_cap: Option<u64>,
}

#[derive(Clone, Copy, Debug, ValueEnum)]
enum SieveClaim {
    Gap13010,
    Gap2000,
    Sqrtcount251,
    Legendre,
    MaxGap,
    PsiTheta,
    Corollary2,
}

impl SieveClaim {
    fn id(self) -> &'static str {
        match self {
            SieveClaim::Gap13010 => "gap13010",
            SieveClaim::Gap2000 => "gap2000",
            SieveClaim::Sqrtcount251 => "sqrtcount251",
            SieveClaim::Legendre => "legendre",
            SieveClaim::MaxGap => "max_gap",
            SieveClaim::PsiTheta => "psi_theta",
            SieveClaim::Corollary2 => "corollary2",
        }
    }
}

#[derive(Clone, Copy, Debug, ValueEnum)]
enum Method {
    Taylor,
    Meansquare,
}

#[derive(Clone, Copy, Debug, ValueEnum)]
enum BoundArg {
    Main,
    MainCount,
    Appendix,
    AppendixCount,
}

#[derive(Clone, Copy, Debug, PartialEq, ValueEnum)]
enum ZeroClaim {
    Trudgian,
    Skewes,
    Sigma1,
    Meansquare,
}

#[derive(Subcommand, Debug)]
enum Command {
    /// Check a finite prime claim with the sieve.
    SieveVerify {
        #[arg(long, value_enum)]
        claim: SieveClaim,
        /// Sieve cap for the run.
        #[arg(long, value_parser = parse_count)]
        max: Option<u64>,
    },
    /// Evaluate a lower bound and print its terms.
    Bound {
        #[arg(long, value_enum)]
        method: Method,
        #[arg(long)]
        x: f64,
        #[arg(long)]
        c: f64,
        #[arg(long)]
        beta: f64,
        /// Prime count in the widened window instead of the log-weighted sum.
        #[arg(long)]
        count: bool,
    },
    /// Smallest x from which a bound stays positive on the search grid.
    Threshold {
        #[arg(long, value_enum)]
        bound: BoundArg,
        /// Use c = 1/2 + d/log x.
        #[arg(long, conflicts_with = "c")]
        d: Option<f64>,
        #[arg(long)]
        c: Option<f64>,
        /// A number, or `log/pi` for beta = log x / pi.
        #[arg(long)]
        beta: Option<String>,
        #[arg(long, value_parser = parse_f64_loose)]
        xlo: Option<f64>,
        #[arg(long, value_parser = parse_f64_loose)]
        xhi: Option<f64>,
    },
    /// Minimise the appendix constant alpha(beta).
    MinimizeAlpha {
        #[arg(long, default_value_t = 0.5)]
        lo: f64,
        #[arg(long, default_value_t = 10.0)]
        hi: f64,
        #[arg(long, default_value_t = 1e-5)]
        tol: f64,
    },
    /// Evaluate F(y).
    Quad {
        #[arg(long = "F", value_name = "Y")]
        f: f64,
        #[arg(long)]
        tol: Option<f64>,
    },
    /// Checks that use the zero table.
    ZerosCheck {
        #[arg(long)]
        file: Option<PathBuf>,
        #[arg(
            long,
            value_enum,
            value_delimiter = ',',
            default_value = "trudgian,skewes,sigma1,meansquare"
        )]
        claims: Vec<ZeroClaim>,
        /// Extra Σ₁ instance: centre.
        #[arg(long, value_parser = parse_f64_loose)]
        x: Option<f64>,
        /// Extra Σ₁ instance: zero height.
        #[arg(long = "T")]
        t: Option<f64>,
        /// Extra Σ₁ instance: half-width (default 0.55 √x log x).
        #[arg(long)]
        h: Option<f64>,
    },
    /// Every registered claim.
    VerifyAll {
        /// Sieve cap 1e7 instead of 1e9.
        #[arg(long)]
        quick: bool,
    },
}

fn parse_f64_loose(s: &str) -> std::result::Result<f64, String> {
    s.parse().map_err(|_| format!("not a number: {s}"))
}

/// Parse `argv`, run, print to stdout/stderr; returns the process exit code.
pub fn dispatch<I, T>(argv: I) -> i32
where
    I: IntoIterator<Item = T>,
    T: Into<OsString> + Clone,
{
    let cli = match Cli::try_parse_from(argv) {
        Ok(c) => c,
        Err(e) => {
            let code = if e.use_stderr() {
                EXIT_USAGE
            } else {
                EXIT_PASS
            };
            let _ = e.print();
            return code;
        }
    };
    match run(cli) {
        Ok((out, code)) => {
            let mut stdout = std::io::stdout().lock();
            let _ = writeln!(stdout, "{out}");
            code
        }
        Err(e) => {
            eprintln!("primegap: {e}");
            EXIT_USAGE
        }
    }
}

fn run_config(g: &GlobalArgs, cap: Option<u64>) -> Result<RunConfig> {
    let cfg = RunConfig {
        sieve_cap: cap.or(g.sieve_cap).unwrap_or(DEFAULT_SIEVE_CAP),
        zeros: ZeroSource::resolve(g.zeros.clone(), g.no_zeros),
        tol_quad: g.tol_quad,
        threads: g.threads,
        output: g.output,
    };
    cfg.validate()?;
    Ok(cfg)
}

fn exit_for(claims: &[ClaimReport]) -> i32 {
    if claims.iter().any(|c| c.status == Status::Fail) {
        EXIT_FAIL
    } else {
        EXIT_PASS
    }
}

fn run(cli: Cli) -> Result<(String, i32)> {
    let g = &cli.global;
    match cli.command {
        Command::SieveVerify { claim, max } => {
            let cfg = run_config(g, max.or(g.sieve_cap).or(Some(QUICK_SIEVE_CAP)))?;
            let ctx = Context::new(cfg.clone());
            let claims = claims::run_claims(&ctx, &[claim.id()])?;
            let code = exit_for(&claims);
            Ok((render_report(&Report::new(&cfg, claims), cfg.output), code))
        }
        Command::VerifyAll { quick } => {
            let cap = if quick {
                Some(g.sieve_cap.unwrap_or(QUICK_SIEVE_CAP))
            } else {
                None
            };
            let cfg = run_config(g, cap)?;
            let report = claims::verify_all(&cfg)?;
            let code = exit_for(&report.claims);
            Ok((render_report(&report, cfg.output), code))
        }
        Command::ZerosCheck {
            file,
            claims: wanted,
            x,
            t,
            h,
        } => {
            let mut cfg = run_config(g, Some(g.sieve_cap.unwrap_or(QUICK_SIEVE_CAP)))?;
            if let Some(f) = file {
                cfg.zeros = ZeroSource::File(f);
            }
            let ctx = Context::new(cfg.clone());
            if ctx.zeros.is_none() {
                return Err(Error::Config(
                    ctx.zeros_error
                        .clone()
                        .unwrap_or_else(|| "no zero table".into()),
                ));
            }
            let mut ids = Vec::new();
            for c in &wanted {
                ids.extend_from_slice(match c {
                    ZeroClaim::Trudgian => &["trudgian", "zero_count_upper"][..],
                    ZeroClaim::Skewes => &["skewes", "sigma2_tail"][..],
                    ZeroClaim::Sigma1 => &["sigma1_taylor", "sigma1_meansquare"][..],
                    ZeroClaim::Meansquare => &["mean_square", "mean_square_quadrature"][..],
                });
            }
            let mut reports = claims::run_claims(&ctx, &ids)?;
            if let (Some(x), Some(t)) = (x, t) {
                if wanted.contains(&ZeroClaim::Sigma1) {
                    let h = h.unwrap_or(0.55 * x.sqrt() * x.ln());
                    reports.push(claims::sigma1_instance(&ctx, x, h, t)?);
                }
            }
            let code = exit_for(&reports);
            Ok((render_report(&Report::new(&cfg, reports), cfg.output), code))
        }
        Command::Bound {
            method,
            x,
            c,
            beta,
            count,
        } => {
            let kind = match (method, count) {
                (Method::Taylor, false) => BoundKind::Main,
                (Method::Taylor, true) => BoundKind::MainCount,
                (Method::Meansquare, false) => BoundKind::Appendix,
                (Method::Meansquare, true) => BoundKind::AppendixCount,
            };
            let mut tpl = BoundTemplate::new(kind, CSpec::Fixed(c), BetaSpec::Fixed(beta));
            tpl.f_tol = g.tol_quad;
            let p = tpl.params(x)?;
            let f = || f_integral(p.log_half_width * p.height, g.tol_quad);
            let body = match kind {
                BoundKind::Main => json!({"params": p, "breakdown": lower_bound_main(&p)?}),
                BoundKind::MainCount => json!({"params": p, "count": lower_bound_count_main(&p)?}),
                BoundKind::Appendix => {
                    let fv = f()?;
                    json!({"params": p, "F": fv, "breakdown": lower_bound_appendix(&p, &fv)?})
                }
                _ => {
                    let fv = f()?;
                    json!({"params": p, "F": fv, "count": lower_bound_appendix_count(&p, &fv)?})
                }
            };
            Ok((render_value(&body, g.output), EXIT_PASS))
        }
        Command::Threshold {
            bound,
            d,
            c,
            beta,
            xlo,
            xhi,
        } => {
            let kind = match bound {
                BoundArg::Main => BoundKind::Main,
                BoundArg::MainCount => BoundKind::MainCount,
                BoundArg::Appendix => BoundKind::Appendix,
                BoundArg::AppendixCount => BoundKind::AppendixCount,
            };
            let main_like = matches!(kind, BoundKind::Main | BoundKind::MainCount);
            let cspec = match (d, c) {
                (Some(d), _) => CSpec::LogScaled(d),
                (None, Some(c)) => CSpec::Fixed(c),
                (None, None) if main_like => CSpec::LogScaled(2.0),
                (None, None) => CSpec::Fixed(0.6102),
            };
            let bspec = match beta.as_deref() {
                Some("log/pi") => BetaSpec::LogOverPi,
                Some(s) => BetaSpec::Fixed(
                    s.parse()
                        .map_err(|_| Error::Config(format!("bad --beta {s:?}")))?,
                ),
                None if main_like => BetaSpec::LogOverPi,
                None => BetaSpec::Fixed(2.493),
            };
            let (dlo, dhi) = if main_like { (1e4, 1e12) } else { (1e3, 1e10) };
            let mut tpl = BoundTemplate::new(kind, cspec, bspec);
            tpl.f_tol = g.tol_quad;
            let r = find_threshold(tpl, xlo.unwrap_or(dlo), xhi.unwrap_or(dhi))?;
            Ok((
                render_value(&serde_json::to_value(&r).expect("serialisable"), g.output),
                EXIT_PASS,
            ))
        }
        Command::MinimizeAlpha { lo, hi, tol } => {
            let m = minimize_alpha_with(lo, hi, tol, g.tol_quad.min(1e-9))?;
            let v = serde_json::to_value(&m).expect("serialisable");
            Ok((render_value(&v, g.output), EXIT_PASS))
        }
        Command::Quad { f, tol } => {
            let q = f_integral(f, tol.unwrap_or(g.tol_quad))?;
            let v = json!({"y": f, "value": q.value, "err_estimate": q.err_estimate, "evaluations": q.evaluations});
            Ok((render_value(&v, g.output), EXIT_PASS))
        }
    }
}

fn scalar(v: &Value) -> String {
    match v {
        Value::String(s) => s.clone(),
        Value::Null => String::new(),
        other => other.to_string(),
    }
}

fn csv_field(s: &str) -> String {
    if s.contains([',', '"', '\n']) {
        format!("\"{}\"", s.replace('"', "\"\""))
    } else {
        s.to_string()
    }
}

/// Top-level fields one per line (text) or as `key,value` rows (csv).
pub fn render_value(v: &Value, format: OutputFormat) -> String {
    match format {
        OutputFormat::Json => serde_json::to_string_pretty(v).expect("serialisable"),
        OutputFormat::Text | OutputFormat::Csv => {
            let rows: Vec<(String, String)> = match v {
                Value::Object(m) => m.iter().map(|(k, v)| (k.clone(), scalar(v))).collect(),
                other => vec![("value".into(), scalar(other))],
            };
            let mut out = Vec::new();
            if format == OutputFormat::Csv {
                out.push("key,value".to_string());
                out.extend(
                    rows.iter()
                        .map(|(k, v)| format!("{},{}", csv_field(k), csv_field(v))),
                );
            } else {
                out.extend(rows.iter().map(|(k, v)| format!("{k}: {v}")));
            }
            out.join("\n")
        }
    }
}

pub fn render_report(r: &Report, format: OutputFormat) -> String {
    match format {
        OutputFormat::Json => serde_json::to_string_pretty(r).expect("serialisable"),
        OutputFormat::Csv => {
            let mut out = vec!["claim,status,lhs,rhs,elapsed_ms,note".to_string()];
            for c in &r.claims {
                let (l, rh) = c
                    .witness
                    .as_ref()
                    .map_or((String::new(), String::new()), |w| {
                        (w.lhs.to_string(), w.rhs.to_string())
                    });
                out.push(format!(
                    "{},{},{},{},{},{}",
                    csv_field(&c.claim),
                    scalar(&serde_json::to_value(c.status).expect("status")),
                    l,
                    rh,
                    c.elapsed_ms,
                    csv_field(c.note.as_deref().unwrap_or(""))
                ));
            }
            out.join("\n")
        }
        OutputFormat::Text => {
            let mut out = Vec::new();
            for c in &r.claims {
                let tag = match c.status {
                    Status::Pass => "PASS",
                    Status::Fail => "FAIL",
                    Status::Skipped => "SKIP",
                };
                let mut line = format!("{tag:4}  {:<26}", c.claim);
                if let Some(w) = &c.witness {
                    line += &format!("  lhs={:.6e} rhs={:.6e}", w.lhs, w.rhs);
                }
                if let Some(n) = &c.note {
                    line += &format!("  ({n})");
                }
                out.push(line);
            }
            out.push(format!(
                "{} passed, {} failed, {} skipped",
                r.summary.pass, r.summary.fail, r.summary.skipped
            ));
            out.join("\n")
        }
    }
}

//! The registered claims and the one-shot run over all of them.

use std::f64::consts::PI;
use std::time::Instant;

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use rayon::prelude::*;
use serde::{Deserialize, Serialize};
use serde_json::{json, Value};

use super::config::{RunConfig, ZeroSource};
use crate::error::{Error, Result};
use crate::explicit_bounds::{
    lemma_a1_bound, lemma_a1_direct, mean_square_remainder, r_over_gamma_sq_integral,
    sigma1_bound_meansquare, sigma1_bound_taylor, BoundParams,
};
use crate::optimize::{
    find_threshold, find_threshold_log, minimize_alpha, soundness_spot_check, BetaSpec, BoundKind,
    BoundTemplate, CSpec, ThresholdStatus,
};
use crate::primes::chebyshev::chebyshev_with;
use crate::primes::kernel::kernel_sum_with;
use crate::primes::verify::{
    legendre_upper, verify_corollary2, verify_gap_bound, verify_legendre_containment,
    verify_legendre_interval, verify_max_gap, verify_psi_theta_sandwich, verify_sqrt_count,
};
use crate::primes::{GapConstant, Sieve};
use crate::quadrature::{f_integral, f_integral_2d, integrate_adaptive, sin2_over_t2_integral};
use crate::report::{anchors, ClaimReport, Status, Witness};
use crate::zeta_zeros::{s_alpha_real, ZeroTable, DEFAULT_PAIR_BUDGET};

/// Fixed seed for every randomised claim, so reports are reproducible.
pub const SEED: u64 = 0x5eed_2015;

/// `(x, h, T)` instances at which `|Σ₁|` is compared with its two bounds.
pub const SIGMA1_INSTANCES: [(f64, f64, f64); 3] = [
    (1e6, 7_598.530_806_880_351, 1e3),
    (1e7, 31_101.829_197_664_687, 801.560_571_938_061_2),
    (1e8, 112_103.403_719_761_85, 5_230.425_300_638_569),
];

/// `(x, h, T)` of the mean-square comparison.
pub const MEAN_SQUARE_INSTANCE: (f64, f64, f64) = (1e6, 7600.0, 1e3);

pub const CLAIM_IDS: &[&str] = &[
    "min_alpha",
    "threshold_main",
    "threshold_main_count",
    "threshold_appendix",
    "threshold_appendix_count",
    "threshold_main_log",
    "gap13010",
    "gap2000",
    "sqrtcount251",
    "max_gap",
    "legendre",
    "legendre_containment",
    "corollary2",
    "psi_theta",
    "kernel_identity",
    "lemma_residual",
    "sin2_linear",
    "sin2_identity",
    "r_integral",
    "f_oracle",
    "soundness_main",
    "soundness_appendix",
    "trudgian",
    "skewes",
    "zero_count_upper",
    "sigma2_tail",
    "sigma1_taylor",
    "sigma1_meansquare",
    "mean_square",
    "mean_square_quadrature",
];

const ZERO_CLAIMS: &[&str] = &[
    "trudgian",
    "skewes",
    "zero_count_upper",
    "sigma2_tail",
    "sigma1_taylor",
    "sigma1_meansquare",
    "mean_square",
    "mean_square_quadrature",
];

/// Shared state of one run.
pub struct Context {
    pub cfg: RunConfig,
    pub sieve: &'static Sieve,
    pub zeros: Option<ZeroTable>,
    pub zeros_error: Option<String>,
}

impl Context {
    pub fn new(cfg: RunConfig) -> Self {
        let (zeros, zeros_error) = match cfg.zeros.load() {
            Ok(z) => (z, None),
            Err(e) => (None, Some(e.to_string())),
        };
        Self {
            cfg,
            sieve: Sieve::shared(),
            zeros,
            zeros_error,
        }
    }

    fn cap(&self) -> u64 {
        self.cfg.sieve_cap
    }
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct Summary {
    pub pass: usize,
    pub fail: usize,
    pub skipped: usize,
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct Report {
    pub version: String,
    pub config_echo: Value,
    pub claims: Vec<ClaimReport>,
    pub summary: Summary,
}

impl Report {
    pub fn new(cfg: &RunConfig, claims: Vec<ClaimReport>) -> Self {
        let count = |s: Status| claims.iter().filter(|c| c.status == s).count();
        let summary = Summary {
            pass: count(Status::Pass),
            fail: count(Status::Fail),
            skipped: count(Status::Skipped),
        };
        Self {
            version: env!("CARGO_PKG_VERSION").to_string(),
            config_echo: serde_json::to_value(cfg).expect("config serialises"),
            claims,
            summary,
        }
    }

    pub fn all_pass(&self) -> bool {
        self.summary.fail == 0
    }

    /// The same report with every `elapsed_ms` zeroed.
    pub fn without_timing(&self) -> Self {
        Self {
            claims: self
                .claims
                .iter()
                .map(ClaimReport::without_timing)
                .collect(),
            ..self.clone()
        }
    }

    pub fn claim(&self, id: &str) -> Option<&ClaimReport> {
        self.claims.iter().find(|c| c.claim == id)
    }
}

fn failed(id: &str, anchor: &str, e: Error) -> ClaimReport {
    ClaimReport::new(id, anchor, Value::Null)
        .passed(false)
        .with_note(format!("error: {e}"))
}

fn anchor_of(id: &str) -> &'static str {
    match id {
        "min_alpha" => anchors::MIN_ALPHA,
        "threshold_main" => anchors::THRESHOLD_MAIN,
        "threshold_main_count" => anchors::THRESHOLD_MAIN_COUNT,
        "threshold_appendix" => anchors::THRESHOLD_APPENDIX,
        "threshold_appendix_count" => anchors::THRESHOLD_APPENDIX_COUNT,
        "threshold_main_log" => anchors::THRESHOLD_LOG,
        "gap13010" | "gap2000" => anchors::GAP_BOUND,
        "sqrtcount251" => anchors::SQRT_COUNT,
        "max_gap" => anchors::MAX_GAP,
        "legendre" => anchors::LEGENDRE,
        "legendre_containment" => anchors::LEGENDRE_CONTAINMENT,
        "corollary2" => anchors::COROLLARY2,
        "psi_theta" => anchors::PSI_THETA,
        "kernel_identity" => anchors::KERNEL_IDENTITY,
        "lemma_residual" => anchors::LEMMA_RESIDUAL,
        "sin2_linear" => anchors::SIN2_LINEAR,
        "sin2_identity" => anchors::SIN2_IDENTITY,
        "r_integral" => anchors::R_INTEGRAL,
        "f_oracle" => anchors::F_ORACLE,
        "soundness_main" | "soundness_appendix" => anchors::SOUNDNESS,
        "trudgian" => anchors::TRUDGIAN,
        "skewes" => anchors::SKEWES,
        "zero_count_upper" => anchors::ZERO_COUNT_UPPER,
        "sigma2_tail" => anchors::SIGMA2_TAIL,
        "sigma1_taylor" => anchors::SIGMA1_TAYLOR,
        "sigma1_meansquare" => anchors::SIGMA1_MEANSQUARE,
        "mean_square" | "mean_square_quadrature" => anchors::MEAN_SQUARE,
        _ => "",
    }
}

pub fn main_template() -> BoundTemplate {
    BoundTemplate::new(BoundKind::Main, CSpec::LogScaled(2.0), BetaSpec::LogOverPi)
}

pub fn appendix_template(kind: BoundKind) -> BoundTemplate {
    BoundTemplate::new(kind, CSpec::Fixed(0.6102), BetaSpec::Fixed(2.493))
}

fn threshold_claim(
    ctx: &Context,
    id: &str,
    mut template: BoundTemplate,
    lo: f64,
    hi: f64,
    claimed: f64,
) -> Result<ClaimReport> {
    let start = Instant::now();
    template.f_tol = ctx.cfg.tol_quad;
    let r = find_threshold(template, lo, hi)?;
    let mut report = r.to_report(id, claimed, lo, hi);
    if template.kind == BoundKind::AppendixCount && !report.pass {
        // where the same bound, before conversion to a count, turns positive
        let mut widened = template;
        widened.kind = BoundKind::AppendixWidened;
        let w = find_threshold(widened, lo, hi)?;
        let extra = format!(
            "; positivity of the widened bound itself (one prime, not sqrt(x)) from x = {:?}",
            w.x_star
        );
        let note = report.note.take().unwrap_or_default() + &extra;
        report = report.with_note(note);
    }
    Ok(report.elapsed_since(start))
}

fn run_claim(ctx: &Context, id: &str) -> Result<ClaimReport> {
    let s = ctx.sieve;
    let cap = ctx.cap();
    let tol = ctx.cfg.tol_quad;
    match id {
        "min_alpha" => {
            let start = Instant::now();
            let m = minimize_alpha(0.5, 10.0, 1e-5)?;
            let ok = !m.at_endpoint
                && (m.beta_min - 2.4934).abs() <= 1e-3
                && (m.alpha_min - 0.61019).abs() <= 1e-4;
            Ok(ClaimReport::new(
                id,
                anchors::MIN_ALPHA,
                json!({"lo": 0.5, "hi": 10.0, "tol": 1e-5}),
            )
            .passed(ok)
            .with_witness(Witness::at(m.beta_min, m.alpha_min, 0.61019))
            .with_note(format!(
                "beta_min = {:.6}, alpha_min = {:.6}",
                m.beta_min, m.alpha_min
            ))
            .elapsed_since(start))
        }
        "threshold_main" => threshold_claim(ctx, id, main_template(), 1e6, 1e12, 7.5e8),
        "threshold_main_count" => {
            let mut t = main_template();
            t.kind = BoundKind::MainCount;
            threshold_claim(ctx, id, t, 1e4, 1e10, 1.4e5)
        }
        "threshold_appendix" => threshold_claim(
            ctx,
            id,
            appendix_template(BoundKind::Appendix),
            1e3,
            1e10,
            16000.0,
        ),
        "threshold_appendix_count" => threshold_claim(
            ctx,
            id,
            appendix_template(BoundKind::AppendixCount),
            1e3,
            1e10,
            1600.0,
        ),
        "threshold_main_log" => {
            let start = Instant::now();
            let r = find_threshold_log(1.72, 400.0, 800.0)?;
            let ok = r.status == ThresholdStatus::Crossing
                && r.x_star.is_some_and(|l| l <= 590.0)
                && r.verified_up_to.is_some();
            let mut rep = ClaimReport::new(
                id,
                anchors::THRESHOLD_LOG,
                json!({"d": 1.72, "log_x": [400.0, 800.0]}),
            )
            .with_range(400.0, 800.0)
            .passed(ok)
            .with_note(format!("threshold in log x; {:?}; {}", r.status, r.note));
            if let Some(l) = r.x_star {
                rep = rep.with_witness(Witness::at(l, l, 590.0));
            }
            Ok(rep.elapsed_since(start))
        }
        "gap13010" => Ok(with_id(
            verify_gap_bound(s, 13010, GapConstant::LogScaled(2.0))?,
            id,
        )),
        "gap2000" => Ok(with_id(
            verify_gap_bound(s, 2000, GapConstant::Fixed(0.6102))?,
            id,
        )),
        "sqrtcount251" => Ok(with_id(verify_sqrt_count(s, 251, 0.6102)?, id)),
        "max_gap" => Ok(with_id(verify_max_gap(s, cap)?, id)),
        "legendre" => {
            let mut n_hi = 10_000u64;
            while legendre_upper(n_hi) + 1.0 > cap as f64 {
                n_hi -= 1;
            }
            let r = with_id(verify_legendre_interval(s, 2, n_hi)?, id);
            Ok(if n_hi < 10_000 {
                r.with_note(format!(
                    "sweep truncated to n <= {n_hi} by the sieve cap {cap}"
                ))
            } else {
                r
            })
        }
        "legendre_containment" => Ok(with_id(verify_legendre_containment(2, 10_000)?, id)),
        "corollary2" => Ok(with_id(verify_corollary2(s, cap.min(1_000_000_000))?, id)),
        "psi_theta" => Ok(with_id(
            verify_psi_theta_sandwich(s, 121.0, (cap as f64).min(1e6))?,
            id,
        )),
        "kernel_identity" => kernel_identity(ctx, id),
        "lemma_residual" => {
            let start = Instant::now();
            let mut rng = ChaCha8Rng::seed_from_u64(SEED);
            let mut worst: Option<Witness> = None;
            let mut ok = true;
            for _ in 0..10_000 {
                let g = rng.gen_range(0.0..100.0);
                let r = rng.gen_range(0.0..0.5);
                let d = lemma_a1_direct(g, r)?;
                let b = lemma_a1_bound(g, r);
                ok &= d <= b;
                if b > 0.0 && worst.as_ref().is_none_or(|w| d / b > w.lhs / w.rhs) {
                    worst = Some(Witness::at(g, d, b));
                }
            }
            let mut rep = ClaimReport::new(
                id,
                anchors::LEMMA_RESIDUAL,
                json!({"samples": 10_000, "seed": SEED}),
            )
            .passed(ok);
            if let Some(w) = worst {
                rep = rep.with_witness(w);
            }
            Ok(rep.elapsed_since(start))
        }
        "sin2_linear" => {
            let start = Instant::now();
            let n = 1_000_000;
            let mut worst = (0.0, 0.0);
            let mut ok = true;
            for i in 1..=n {
                let v = 100.0 * i as f64 / n as f64;
                let r = v.sin().powi(2) / (0.75 * v);
                ok &= r <= 1.0;
                if r > worst.1 {
                    worst = (v, r);
                }
            }
            let v = worst.0;
            Ok(ClaimReport::new(
                id,
                anchors::SIN2_LINEAR,
                json!({"grid": [0.0, 100.0], "points": n}),
            )
            .passed(ok)
            .with_witness(Witness::at(v, v.sin().powi(2), 0.75 * v))
            .elapsed_since(start))
        }
        "sin2_identity" => {
            let start = Instant::now();
            let mut ok = true;
            let mut worst: Option<Witness> = None;
            for y in [1.0, 2.0, 5.0, 10.0, 100.0] {
                let r = sin2_over_t2_integral(y, 1e-12)?;
                ok &= r.residual <= r.bound;
                if worst
                    .as_ref()
                    .is_none_or(|w| r.residual / r.bound > w.lhs / w.rhs)
                {
                    worst = Some(Witness::at(y, r.residual, r.bound));
                }
            }
            Ok(
                ClaimReport::new(id, anchors::SIN2_IDENTITY, json!({"y": [1, 2, 5, 10, 100]}))
                    .passed(ok)
                    .with_witness(worst.expect("five points"))
                    .elapsed_since(start),
            )
        }
        "r_integral" => {
            let start = Instant::now();
            let q = r_over_gamma_sq_integral(1e6, 1e-10)?;
            Ok(
                ClaimReport::new(id, anchors::R_INTEGRAL, json!({"cut": 1e6}))
                    .passed(q.value <= 0.297)
                    .with_witness(Witness::at(14.0, q.value, 0.297))
                    .elapsed_since(start),
            )
        }
        "f_oracle" => {
            let start = Instant::now();
            let mut ok = true;
            let mut worst: Option<Witness> = None;
            for y in [0.5, 1.0, 2.4934, 5.0, 10.0] {
                let one = f_integral(y, tol.min(1e-9))?.value;
                let two = f_integral_2d(y, 4000);
                let diff = (one - two).abs();
                ok &= diff <= 1e-5;
                if worst.as_ref().is_none_or(|w| diff > w.lhs) {
                    worst = Some(Witness::at(y, diff, 1e-5));
                }
            }
            Ok(
                ClaimReport::new(id, anchors::F_ORACLE, json!({"grid_cells": 4000}))
                    .passed(ok)
                    .with_witness(worst.expect("five points"))
                    .elapsed_since(start),
            )
        }
        "soundness_main" => {
            let lo = 7.5e8;
            let hi = (cap as f64).min(1e9);
            if hi <= lo {
                return Ok(
                    ClaimReport::new(id, anchors::SOUNDNESS, Value::Null).skipped(format!(
                        "sieve cap {cap} below the certified range of this bound"
                    )),
                );
            }
            let mut t = main_template();
            t.f_tol = tol;
            Ok(with_id(soundness_spot_check(s, t, 100, lo, hi, SEED)?, id))
        }
        "soundness_appendix" => {
            let mut t = appendix_template(BoundKind::Appendix);
            t.f_tol = tol;
            let hi = (cap as f64).min(1e9);
            Ok(with_id(
                soundness_spot_check(s, t, 100, 16000.0, hi, SEED)?,
                id,
            ))
        }
        _ => zero_claim(ctx, id),
    }
}

fn with_id(mut r: ClaimReport, id: &str) -> ClaimReport {
    r.claim = id.to_string();
    r
}

fn kernel_identity(ctx: &Context, id: &str) -> Result<ClaimReport> {
    let start = Instant::now();
    let mut rng = ChaCha8Rng::seed_from_u64(SEED);
    let mut ok = true;
    let mut worst: Option<Witness> = None;
    for _ in 0..1000 {
        let x: f64 = rng.gen_range(10.0..1e4);
        let h = rng.gen_range(0.0..(x / 3f64.sqrt()));
        if h == 0.0 {
            continue;
        }
        let lhs = kernel_sum_with(ctx.sieve, x, h)?;
        let psi1 = |u: f64| chebyshev_with(ctx.sieve, u).psi1;
        let rhs = psi1(x + h) - 2.0 * psi1(x) + psi1(x - h);
        let scale = lhs.abs().max(1.0);
        let err = (lhs - rhs).abs() / scale;
        ok &= err <= 1e-6;
        if worst
            .as_ref()
            .is_none_or(|w| err > (w.lhs - w.rhs).abs() / w.lhs.abs().max(1.0))
        {
            worst = Some(Witness::at(x, lhs, rhs));
        }
    }
    Ok(ClaimReport::new(
        id,
        anchors::KERNEL_IDENTITY,
        json!({"samples": 1000, "seed": SEED}),
    )
    .passed(ok)
    .with_witness(worst.expect("samples drawn"))
    .elapsed_since(start))
}

fn zero_claim(ctx: &Context, id: &str) -> Result<ClaimReport> {
    let anchor = anchor_of(id);
    let Some(z) = ctx.zeros.as_ref() else {
        let reason = match (&ctx.cfg.zeros, &ctx.zeros_error) {
            (_, Some(e)) => format!("zero table unavailable: {e}"),
            (ZeroSource::Disabled, _) => "no zero table configured".to_string(),
            _ => "zero table unavailable".to_string(),
        };
        return Ok(ClaimReport::new(id, anchor, Value::Null).skipped(reason));
    };
    let start = Instant::now();
    let tol = ctx.cfg.tol_quad;
    let t_max = z.max_height();
    let params = json!({"zeros": z.source, "count": z.len(), "max_height": t_max});
    let report = ClaimReport::new(id, anchor, params);
    let report = match id {
        "trudgian" => {
            let c = z.trudgian_check(1000)?;
            report
                .passed(c.holds)
                .with_range(std::f64::consts::E, t_max)
                .with_witness(Witness::at(c.worst_t, c.lhs, c.rhs))
                .with_note(format!("{} heights checked", c.checked))
        }
        "zero_count_upper" => {
            let c = z.zero_count_upper_check(1000);
            report
                .passed(c.holds)
                .with_range(std::f64::consts::E, t_max)
                .with_witness(Witness::at(c.worst_t, c.lhs, c.rhs))
        }
        "skewes" => {
            let mut ok = true;
            let mut worst: Option<Witness> = None;
            let mut full = 0.0;
            for j in 0..1000 {
                let t = z.gammas()[0] + (t_max - z.gammas()[0]) * j as f64 / 999.0;
                let ps = z.partial_sums(t)?;
                ok &= ps.tail_inv_sq_bound_check;
                full = ps.full_inv_sq_upper;
                if worst
                    .as_ref()
                    .is_none_or(|w| ps.sum_inv / ps.inv_bound > w.lhs / w.rhs)
                {
                    worst = Some(Witness::at(t, ps.sum_inv, ps.inv_bound));
                }
            }
            report
                .passed(ok)
                .with_range(z.gammas()[0], t_max)
                .with_witness(worst.expect("grid"))
                .with_note(format!(
                    "sum of 1/gamma^2 over all zeros <= {full:.6} (table plus tail)"
                ))
        }
        "sigma2_tail" => {
            let mut ok = true;
            let mut worst: Option<Witness> = None;
            let mut t = 20.0;
            while t < t_max {
                let (tail, bound) = z.inv_sq_tail_check(t)?;
                ok &= tail <= bound;
                if worst.as_ref().is_none_or(|w| tail / bound > w.lhs / w.rhs) {
                    worst = Some(Witness::at(t, tail, bound));
                }
                t *= 1.05;
            }
            report
                .passed(ok)
                .with_witness(worst.expect("grid"))
                .with_note("table part of the tail only; zeros above the table are not included")
        }
        "sigma1_taylor" | "sigma1_meansquare" => {
            let mut ok = true;
            let mut worst: Option<Witness> = None;
            let mut used = 0;
            for &(x, h, t) in &SIGMA1_INSTANCES {
                if t > t_max {
                    continue;
                }
                used += 1;
                let p = BoundParams::from_window(x, h, t)?;
                let exact = z.sigma1_exact(x, h, t)?.abs();
                let bound = if id == "sigma1_taylor" {
                    sigma1_bound_taylor(&p)?.total
                } else {
                    let f = f_integral(p.log_half_width * p.height, tol)?;
                    sigma1_bound_meansquare(&p, &f)?
                };
                ok &= exact <= bound;
                if worst.as_ref().is_none_or(|w| exact / bound > w.lhs / w.rhs) {
                    worst = Some(Witness::at(x, exact, bound));
                }
            }
            if used == 0 {
                return Ok(ClaimReport::new(id, anchor, Value::Null).skipped(format!(
                    "zero table ends at {t_max}, below every instance height"
                )));
            }
            report
                .passed(ok)
                .with_witness(worst.expect("instance"))
                .with_note(format!("{used} instances within table height"))
        }
        "mean_square" => {
            let (x, h, t) = MEAN_SQUARE_INSTANCE;
            if t > t_max {
                return Ok(ClaimReport::new(id, anchor, Value::Null)
                    .skipped(format!("zero table ends at {t_max}")));
            }
            let (a, b) = ((x - h).ln(), (x + h).ln());
            let half = (b - a) / 2.0;
            let lhs = z.mean_square_s(a, b, t, DEFAULT_PAIR_BUDGET)?;
            let f = f_integral(half * t, tol)?.value;
            let rhs =
                f * t * (t / (2.0 * PI)).ln().powi(2) / (PI * PI) + mean_square_remainder(half, t)?;
            report
                .passed(lhs >= 0.0 && lhs <= rhs)
                .with_witness(Witness::at(x, lhs, rhs))
        }
        "mean_square_quadrature" => {
            let t = 140.0_f64.min(t_max);
            let zs = z.up_to(t);
            let mut ok = zs.len() <= 50;
            let mut worst: Option<Witness> = None;
            for (a, b) in [(0.0, 0.5), (13.8, 13.82), (1.0, 3.0)] {
                let lhs = z.mean_square_s(a, b, t, DEFAULT_PAIR_BUDGET)?;
                let q = integrate_adaptive(|al| s_alpha_real(zs, al).powi(2), a, b, 1e-10, &[])?;
                let rel = (lhs - q.value).abs() / q.value;
                ok &= rel <= 1e-4;
                if worst
                    .as_ref()
                    .is_none_or(|w| rel > (w.lhs - w.rhs).abs() / w.rhs)
                {
                    worst = Some(Witness::at(b, lhs, q.value));
                }
            }
            report
                .passed(ok)
                .with_witness(worst.expect("three intervals"))
                .with_note(format!("{} zeros up to T = {t}", zs.len()))
        }
        _ => return Err(Error::Config(format!("unknown claim {id:?}"))),
    };
    Ok(report.elapsed_since(start))
}

/// `|Σ₁|` at a user-supplied `(x, h, T)` against both bounds.
pub fn sigma1_instance(ctx: &Context, x: f64, h: f64, t: f64) -> Result<ClaimReport> {
    let start = Instant::now();
    let z = ctx
        .zeros
        .as_ref()
        .ok_or_else(|| Error::Config("no zero table".into()))?;
    let p = BoundParams::from_window(x, h, t)?;
    let exact = z.sigma1_exact(x, h, t)?.abs();
    let taylor = sigma1_bound_taylor(&p)?.total;
    let f = f_integral(p.log_half_width * p.height, ctx.cfg.tol_quad)?;
    let (ms, ms_note) = match sigma1_bound_meansquare(&p, &f) {
        Ok(b) => (Some(b), format!("mean-square bound {b:.6e}")),
        Err(e) => (None, format!("mean-square bound not applicable: {e}")),
    };
    let ok = exact <= taylor && ms.is_none_or(|b| exact <= b);
    Ok(ClaimReport::new(
        "sigma1_instance",
        anchors::SIGMA1_TAYLOR,
        json!({"x": x, "h": h, "T": t, "c": p.c, "beta": p.beta}),
    )
    .passed(ok)
    .with_witness(Witness::at(x, exact, taylor))
    .with_note(ms_note)
    .elapsed_since(start))
}

/// Run the claims in `ids` (in that order) on the configured thread pool.
pub fn run_claims(ctx: &Context, ids: &[&str]) -> Result<Vec<ClaimReport>> {
    for id in ids {
        if !CLAIM_IDS.contains(id) {
            return Err(Error::Config(format!("unknown claim {id:?}")));
        }
    }
    let pool = rayon::ThreadPoolBuilder::new()
        .num_threads(ctx.cfg.threads)
        .build()
        .map_err(|e| Error::Config(e.to_string()))?;
    Ok(pool.install(|| {
        ids.par_iter()
            .map(|&id| run_claim(ctx, id).unwrap_or_else(|e| failed(id, anchor_of(id), e)))
            .collect()
    }))
}

/// Every registered claim. Failures do not stop the remaining claims.
pub fn verify_all(cfg: &RunConfig) -> Result<Report> {
    cfg.validate()?;
    let ctx = Context::new(cfg.clone());
    let claims = run_claims(&ctx, CLAIM_IDS)?;
    Ok(Report::new(cfg, claims))
}

pub fn is_zero_claim(id: &str) -> bool {
    ZERO_CLAIMS.contains(&id)
}

#[cfg(test)]
mod tests {
    use super::*;
    use std::collections::HashSet;

    #[test]
    fn registry_is_consistent() {
        let ids: HashSet<_> = CLAIM_IDS.iter().collect();
        assert_eq!(ids.len(), CLAIM_IDS.len());
        for id in CLAIM_IDS {
            assert!(anchors::is_registered(anchor_of(id)), "{id}");
        }
        for id in ZERO_CLAIMS {
            assert!(CLAIM_IDS.contains(id));
        }
    }

    #[test]
    fn instances_match_their_parameters() {
        // h = c sqrt(x) log x and T = beta x / h for the documented (c, beta)
        let (x, h, _) = SIGMA1_INSTANCES[0];
        assert!((h - 0.55 * x.sqrt() * x.ln()).abs() < 1e-6);
        let (x, h, t) = SIGMA1_INSTANCES[1];
        assert!((h / (x.sqrt() * x.ln()) - 0.6102).abs() < 1e-9);
        assert!((h * t / x - 2.493).abs() < 1e-9);
        let (x, h, t) = SIGMA1_INSTANCES[2];
        let c = 0.5 + 2.0 / x.ln();
        assert!((h / (x.sqrt() * x.ln()) - c).abs() < 1e-9);
        assert!((h * t / x - x.ln() / PI).abs() < 1e-9);
    }

    #[test]
    fn zero_claims_skip_without_table() {
        let cfg = RunConfig {
            zeros: ZeroSource::Disabled,
            sieve_cap: 1_000_000,
            ..RunConfig::default()
        };
        let ctx = Context::new(cfg);
        for r in run_claims(&ctx, ZERO_CLAIMS).unwrap() {
            assert_eq!(r.status, Status::Skipped, "{}", r.claim);
        }
    }

    #[test]
    fn unknown_claim_rejected() {
        let ctx = Context::new(RunConfig::default());
        assert!(run_claims(&ctx, &["nope"]).is_err());
    }
}

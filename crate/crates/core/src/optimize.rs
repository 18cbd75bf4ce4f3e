//! Minimisation of `α(β)` and positivity-threshold searches in `x`.

use std::f64::consts::PI;
use std::time::Instant;

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use rayon::prelude::*;
use serde::{Deserialize, Serialize};
use serde_json::json;

use crate::error::{Error, Result};
use crate::explicit_bounds::{
    beta_log_over_pi, c_log_scaled, lower_bound_appendix, lower_bound_appendix_count,
    lower_bound_appendix_widened, lower_bound_count_main, lower_bound_main,
    lower_bound_main_scaled, BoundParams,
};
use crate::primes::Sieve;
use crate::quadrature::f_integral;
use crate::report::{anchors, ClaimReport, Witness};

/// Default tolerance for `F` inside the optimiser.
pub const DEFAULT_F_TOL: f64 = 1e-8;

/// Ratio between consecutive points of the threshold grid.
pub const GRID_RATIO: f64 = 1.001;

const INV_PHI: f64 = 0.618_033_988_749_894_8;

/// Golden-section search for a minimum of `f` on `[lo, hi]`, stopping when
/// the bracket is at most `tol` wide. Returns `(x, f(x), iterations, bracket)`.
pub fn golden_section<F>(
    mut f: F,
    lo: f64,
    hi: f64,
    tol: f64,
) -> Result<(f64, f64, usize, (f64, f64))>
where
    F: FnMut(f64) -> Result<f64>,
{
    if !(lo < hi) || !(tol > 0.0) {
        return Err(Error::InvalidRange(format!(
            "golden section on [{lo}, {hi}] with tol {tol}"
        )));
    }
    let (mut a, mut b) = (lo, hi);
    let mut c = b - INV_PHI * (b - a);
    let mut d = a + INV_PHI * (b - a);
    let (mut fc, mut fd) = (f(c)?, f(d)?);
    let mut iterations = 0;
    while b - a > tol {
        iterations += 1;
        if fc <= fd {
            b = d;
            d = c;
            fd = fc;
            c = b - INV_PHI * (b - a);
            fc = f(c)?;
        } else {
            a = c;
            c = d;
            fc = fd;
            d = a + INV_PHI * (b - a);
            fd = f(d)?;
        }
    }
    let x = 0.5 * (a + b);
    Ok((x, f(x)?, iterations, (a, b)))
}

/// `α(β) = (1/π)(√(β F(β)/6) + 2/β)`.
pub fn alpha_of_beta(beta: f64, f_tol: f64) -> Result<f64> {
    if !(beta > 0.0) {
        return Err(Error::Domain(format!(
            "alpha(beta) requires beta > 0, got {beta}"
        )));
    }
    let f = f_integral(beta, f_tol)?.value;
    Ok(((beta * f / 6.0).sqrt() + 2.0 / beta) / PI)
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct MinimizeResult {
    pub beta_min: f64,
    pub alpha_min: f64,
    pub iterations: usize,
    pub bracket: (f64, f64),
    /// The smallest pre-scan value sat on an end of `[lo, hi]`; `beta_min` is
    /// then that endpoint and not an interior minimum.
    pub at_endpoint: bool,
    /// Number of strict local minima seen by the pre-scan.
    pub prescan_minima: usize,
}

/// Minimise [`alpha_of_beta`] over `[lo, hi]`: a 200-point pre-scan locates
/// the minimum (and would expose several), then golden section refines it.
pub fn minimize_alpha(lo: f64, hi: f64, tol: f64) -> Result<MinimizeResult> {
    minimize_alpha_with(lo, hi, tol, DEFAULT_F_TOL)
}

pub fn minimize_alpha_with(lo: f64, hi: f64, tol: f64, f_tol: f64) -> Result<MinimizeResult> {
    if !(0.0 < lo && lo < hi) {
        return Err(Error::InvalidRange(format!(
            "need 0 < lo < hi, got [{lo}, {hi}]"
        )));
    }
    const SCAN: usize = 200;
    let xs: Vec<f64> = (0..SCAN)
        .map(|i| lo + (hi - lo) * i as f64 / (SCAN - 1) as f64)
        .collect();
    let ys = xs
        .par_iter()
        .map(|&b| alpha_of_beta(b, f_tol))
        .collect::<Result<Vec<f64>>>()?;
    let prescan_minima = (1..SCAN - 1)
        .filter(|&i| ys[i] < ys[i - 1] && ys[i] < ys[i + 1])
        .count();
    let best = (0..SCAN)
        .min_by(|&i, &j| ys[i].total_cmp(&ys[j]))
        .expect("non-empty scan");
    if best == 0 || best == SCAN - 1 {
        return Ok(MinimizeResult {
            beta_min: xs[best],
            alpha_min: ys[best],
            iterations: 0,
            bracket: (xs[best], xs[best]),
            at_endpoint: true,
            prescan_minima,
        });
    }
    let (beta, alpha, iterations, bracket) =
        golden_section(|b| alpha_of_beta(b, f_tol), xs[best - 1], xs[best + 1], tol)?;
    Ok(MinimizeResult {
        beta_min: beta,
        alpha_min: alpha,
        iterations,
        bracket,
        at_endpoint: false,
        prescan_minima,
    })
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum BoundKind {
    /// Taylor-route bound on `Σ log p` in `(x − h, x + h)`.
    Main,
    /// Taylor-route prime count in the widened window, minus `√x`.
    MainCount,
    /// Mean-square bound on `h⁻¹ Σ log p`.
    Appendix,
    /// Mean-square prime count in the widened window, minus `√x`.
    AppendixCount,
    /// Mean-square bound on `h⁻¹ Σ log p` in the widened window (a
    /// diagnostic: positivity here gives one prime, not `√x`).
    AppendixWidened,
}

impl BoundKind {
    pub fn anchor(self) -> &'static str {
        match self {
            BoundKind::Main => anchors::THRESHOLD_MAIN,
            BoundKind::MainCount => anchors::THRESHOLD_MAIN_COUNT,
            BoundKind::Appendix => anchors::THRESHOLD_APPENDIX,
            BoundKind::AppendixCount | BoundKind::AppendixWidened => {
                anchors::THRESHOLD_APPENDIX_COUNT
            }
        }
    }

    fn widened(self) -> bool {
        matches!(
            self,
            BoundKind::MainCount | BoundKind::AppendixCount | BoundKind::AppendixWidened
        )
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum CSpec {
    Fixed(f64),
    /// `c = 1/2 + d / log x`.
    LogScaled(f64),
}

#[derive(Clone, Copy, Debug, PartialEq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum BetaSpec {
    Fixed(f64),
    /// `beta = log x / π`.
    LogOverPi,
}

/// A family of bounds indexed by `x`.
#[derive(Clone, Copy, Debug, PartialEq, Serialize, Deserialize)]
pub struct BoundTemplate {
    pub kind: BoundKind,
    pub c: CSpec,
    pub beta: BetaSpec,
    pub f_tol: f64,
}

impl BoundTemplate {
    pub fn new(kind: BoundKind, c: CSpec, beta: BetaSpec) -> Self {
        Self {
            kind,
            c,
            beta,
            f_tol: DEFAULT_F_TOL,
        }
    }

    /// Parameters before any widening.
    pub fn base_params(&self, x: f64) -> Result<BoundParams> {
        let c = match self.c {
            CSpec::Fixed(c) => c,
            CSpec::LogScaled(d) => c_log_scaled(d, x),
        };
        let beta = match self.beta {
            BetaSpec::Fixed(b) => b,
            BetaSpec::LogOverPi => beta_log_over_pi(x),
        };
        BoundParams::new(x, c, beta)
    }

    /// Parameters of the window the bound speaks about.
    pub fn params(&self, x: f64) -> Result<BoundParams> {
        let p = self.base_params(x)?;
        if self.kind.widened() {
            p.widened()
        } else {
            Ok(p)
        }
    }

    /// The certificate value at `x`: positive means the claim holds at `x`.
    pub fn evaluate(&self, x: f64) -> Result<f64> {
        let p = self.params(x)?;
        let f = || f_integral(p.log_half_width * p.height, self.f_tol);
        Ok(match self.kind {
            BoundKind::Main => lower_bound_main(&p)?.total,
            BoundKind::MainCount => lower_bound_count_main(&p)?.margin,
            BoundKind::Appendix => lower_bound_appendix(&p, &f()?)?.total,
            BoundKind::AppendixCount => lower_bound_appendix_count(&p, &f()?)?.margin,
            BoundKind::AppendixWidened => lower_bound_appendix_widened(&p, &f()?)?.total,
        })
    }

    fn certifies(&self, x: f64) -> bool {
        self.evaluate(x).is_ok_and(|v| v > 0.0)
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum ThresholdStatus {
    /// Non-positive somewhere, positive on the whole tail of the grid.
    Crossing,
    /// Positive at every grid point.
    AllPositive,
    /// Non-positive at the top of the grid: no threshold in range.
    NoPositiveTail,
}

#[derive(Clone, Debug, Default, PartialEq, Serialize, Deserialize)]
pub struct SignProfile {
    pub grid_points: usize,
    pub positive: usize,
    /// Grid points where the bound is `<= 0` or its hypotheses fail.
    pub nonpositive: usize,
    pub sign_changes: usize,
    pub midpoints_checked: usize,
    pub midpoint_failures: usize,
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct ThresholdResult {
    pub template: BoundTemplate,
    pub status: ThresholdStatus,
    /// Smallest `x` (to 4 significant digits, rounded up) from which the bound
    /// is positive on the grid; in log coordinates for [`find_threshold_log`].
    pub x_star: Option<f64>,
    /// Largest grid point where the bound is not positive.
    pub last_nonpositive: Option<f64>,
    pub grid_spec: String,
    /// Positivity holds at every grid point and midpoint from `x_star` to here.
    pub verified_up_to: Option<f64>,
    pub sign_profile: SignProfile,
    pub note: String,
}

const HEURISTIC_NOTE: &str =
    "positivity above x_star is checked on the grid and its midpoints only; it is not a proof";

fn geometric_grid(lo: f64, hi: f64, ratio: f64) -> Vec<f64> {
    let steps = ((hi / lo).ln() / ratio.ln()).ceil() as usize;
    let mut xs: Vec<f64> = (0..steps).map(|i| lo * ratio.powi(i as i32)).collect();
    xs.push(hi);
    xs
}

fn round_up_sig(x: f64, digits: i32) -> f64 {
    let e = x.abs().log10().floor() as i32 - (digits - 1);
    let unit = 10f64.powi(e);
    (x / unit).ceil() * unit
}

/// Shared scan: `eval` gives the certificate at a grid coordinate, `mid`
/// the midpoint of two coordinates; bisection stops at `rel_tol`.
fn scan<E, M>(
    template: BoundTemplate,
    grid: Vec<f64>,
    grid_spec: String,
    eval: E,
    mid: M,
) -> ThresholdResult
where
    E: Fn(f64) -> bool + Sync,
    M: Fn(f64, f64) -> f64 + Sync,
{
    let signs: Vec<bool> = grid.par_iter().map(|&x| eval(x)).collect();
    let mut profile = SignProfile {
        grid_points: grid.len(),
        positive: signs.iter().filter(|&&s| s).count(),
        ..SignProfile::default()
    };
    profile.nonpositive = profile.grid_points - profile.positive;
    profile.sign_changes = signs.windows(2).filter(|w| w[0] != w[1]).count();
    let last_neg = signs.iter().rposition(|&s| !s);
    let mut result = ThresholdResult {
        template,
        status: ThresholdStatus::AllPositive,
        x_star: None,
        last_nonpositive: last_neg.map(|i| grid[i]),
        grid_spec,
        verified_up_to: None,
        sign_profile: profile,
        note: HEURISTIC_NOTE.to_string(),
    };
    let first_pos = match last_neg {
        None => {
            result.x_star = Some(grid[0]);
            0
        }
        Some(i) if i + 1 == grid.len() => {
            result.status = ThresholdStatus::NoPositiveTail;
            return result;
        }
        Some(i) => {
            result.status = ThresholdStatus::Crossing;
            let (mut a, mut b) = (grid[i], grid[i + 1]);
            while (b - a) > 1e-5 * b.abs() {
                let m = mid(a, b);
                if eval(m) {
                    b = m;
                } else {
                    a = m;
                }
            }
            // report 4 significant digits without stepping below the crossing
            let mut star = round_up_sig(b, 4);
            if !eval(star) {
                star = b;
            }
            result.x_star = Some(star);
            i + 1
        }
    };
    let tail = &grid[first_pos..];
    let failures = tail
        .par_windows(2)
        .filter(|w| !eval(mid(w[0], w[1])))
        .count();
    result.sign_profile.midpoints_checked = tail.len().saturating_sub(1);
    result.sign_profile.midpoint_failures = failures;
    if failures == 0 {
        result.verified_up_to = grid.last().copied();
    }
    result
}

/// Locate the last sign change of the certificate on a geometric grid of
/// ratio [`GRID_RATIO`] over `[x_lo, x_hi]`, refine it by bisection, then
/// check every grid point and midpoint above it.
pub fn find_threshold(template: BoundTemplate, x_lo: f64, x_hi: f64) -> Result<ThresholdResult> {
    if !(2.0 <= x_lo && x_lo < x_hi && x_hi.is_finite()) {
        return Err(Error::InvalidRange(format!(
            "need 2 <= x_lo < x_hi, got [{x_lo}, {x_hi}]"
        )));
    }
    let grid = geometric_grid(x_lo, x_hi, GRID_RATIO);
    let spec = format!(
        "geometric, ratio {GRID_RATIO}, {} points on [{x_lo:e}, {x_hi:e}]",
        grid.len()
    );
    Ok(scan(
        template,
        grid,
        spec,
        |x| template.certifies(x),
        |a, b| (a * b).sqrt(),
    ))
}

/// [`find_threshold`] for the Taylor-route bound in `log x` coordinates,
/// using the `√x`-normalised form; `x_star` and the range are values of
/// `log x`. The grid step `log(GRID_RATIO)` matches the `x`-grid.
pub fn find_threshold_log(d: f64, log_lo: f64, log_hi: f64) -> Result<ThresholdResult> {
    if !(log_lo < log_hi) {
        return Err(Error::InvalidRange(format!(
            "need log_lo < log_hi, got [{log_lo}, {log_hi}]"
        )));
    }
    let step = GRID_RATIO.ln();
    let n = ((log_hi - log_lo) / step).ceil() as usize;
    let mut grid: Vec<f64> = (0..n).map(|i| log_lo + i as f64 * step).collect();
    grid.push(log_hi);
    let template = BoundTemplate::new(BoundKind::Main, CSpec::LogScaled(d), BetaSpec::LogOverPi);
    let eval = move |l: f64| {
        let c = 0.5 + d / l;
        lower_bound_main_scaled(l, c, l / PI).is_ok_and(|b| b.total > 0.0)
    };
    let spec = format!(
        "uniform in log x, step {step:.6e}, {} points on [{log_lo}, {log_hi}]",
        grid.len()
    );
    Ok(scan(template, grid, spec, eval, |a, b| 0.5 * (a + b)))
}

impl ThresholdResult {
    /// A claim that the threshold is at most `claimed` and positivity was
    /// verified to the top of the grid.
    pub fn to_report(&self, claim: &str, claimed: f64, x_lo: f64, x_hi: f64) -> ClaimReport {
        let ok = self.x_star.is_some_and(|x| x <= claimed) && self.verified_up_to.is_some();
        let params = json!({"template": self.template, "claimed": claimed});
        let mut r = ClaimReport::new(claim, self.template.kind.anchor(), params)
            .with_range(x_lo, x_hi)
            .passed(ok)
            .with_note(format!(
                "{:?}; last non-positive grid point {:?}; {}",
                self.status, self.last_nonpositive, self.note
            ));
        if let Some(x) = self.x_star {
            r = r.with_witness(Witness::at(x, x, claimed));
        }
        r
    }
}

/// At `samples` random `x` in `[x_lo, x_hi]` (log-uniform, seeded) where the
/// certificate is positive, confirm with the sieve that the window of the
/// bound contains a prime (or, for the count variants, at least `√x` primes).
pub fn soundness_spot_check(
    sieve: &Sieve,
    template: BoundTemplate,
    samples: usize,
    x_lo: f64,
    x_hi: f64,
    seed: u64,
) -> Result<ClaimReport> {
    let start = Instant::now();
    if !(2.0 <= x_lo && x_lo < x_hi) || x_hi > sieve.max() as f64 / 2.0 {
        return Err(Error::InvalidRange(format!(
            "spot check range [{x_lo}, {x_hi}]"
        )));
    }
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let (ll, lh) = (x_lo.ln(), x_hi.ln());
    let mut confirmed = 0;
    let mut attempts = 0;
    let mut failure = None;
    let mut tightest: Option<Witness> = None;
    while confirmed < samples && attempts < 100 * samples {
        attempts += 1;
        let x = rng.gen_range(ll..lh).exp();
        if !template.certifies(x) {
            continue;
        }
        let p = template.params(x)?;
        let (a, b) = (x - p.h, x + p.h);
        let lo = (a.floor() as u64 + 1).max(2);
        let hi = (b.ceil() as u64 - 1).max(lo + 1);
        let range = sieve.sieve(lo, hi)?;
        let count = range
            .primes()
            .filter(|&q| (q as f64) > a && (q as f64) < b)
            .count() as f64;
        let needed = if template.kind.widened() && template.kind != BoundKind::AppendixWidened {
            x.sqrt()
        } else {
            1.0
        };
        let w = Witness::at(x, count, needed);
        if count < needed && failure.is_none() {
            failure = Some(w.clone());
        }
        if tightest
            .as_ref()
            .is_none_or(|t| count / needed < t.lhs / t.rhs)
        {
            tightest = Some(w);
        }
        confirmed += 1;
    }
    let params = json!({"template": template, "samples": samples, "seed": seed});
    let report = ClaimReport::new("soundness", anchors::SOUNDNESS, params).with_range(x_lo, x_hi);
    let report = match (failure, tightest) {
        (Some(w), _) => report.passed(false).with_witness(w),
        (None, Some(w)) => report.passed(confirmed == samples).with_witness(w),
        (None, None) => report.passed(false),
    };
    Ok(report
        .with_note(format!(
            "{confirmed} certified points checked in {attempts} draws"
        ))
        .elapsed_since(start))
}

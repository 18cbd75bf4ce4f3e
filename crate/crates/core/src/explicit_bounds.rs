//! Explicit inequalities for primes in `(x − h, x + h)` under RH.
//!
//! Every bound is evaluated term by term, exactly as it is stated, and
//! returned as a [`LowerBoundBreakdown`] so a non-positive total can be traced
//! to the term responsible. Logarithms are natural throughout.
//!
//! The interval geometry is carried by [`BoundParams`]: given `x`, the
//! constant `c` and the trade-off parameter `beta`,
//!
//! ```text
//! h      = c √x log x
//! height = (beta / c) √x / log x        (so h · height = beta · x)
//! ```
//!
//! and the log-coordinates `log_lo = log(x − h)`, `log_hi = log(x + h)`,
//! `log_half_width = (log_hi − log_lo)/2`, `log_mid = (log_hi + log_lo)/2`.

use std::f64::consts::{E, PI};

use num_complex::Complex64;
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::quadrature::{integrate_adaptive, QuadResult};
use crate::sum::kahan_sum;

/// Ordinate of the first nontrivial zeta zero; used in domain guards only.
pub const GAMMA_1: f64 = 14.134725141734693;

const TWO_PI: f64 = 2.0 * PI;

/// `c = 1/2 + d / log x`.
pub fn c_log_scaled(d: f64, x: f64) -> f64 {
    0.5 + d / x.ln()
}

/// `beta = log x / π`, the choice that balances the two `log T` terms.
pub fn beta_log_over_pi(x: f64) -> f64 {
    x.ln() / PI
}

#[derive(Clone, Copy, Debug, PartialEq, Serialize, Deserialize)]
pub struct BoundParams {
    pub x: f64,
    pub c: f64,
    pub beta: f64,
    /// Half-width `c √x log x` of the interval around `x`.
    pub h: f64,
    /// Zero-height cut `(beta/c) √x / log x`.
    pub height: f64,
    pub log_lo: f64,
    pub log_hi: f64,
    pub log_half_width: f64,
    pub log_mid: f64,
}

impl BoundParams {
    pub fn new(x: f64, c: f64, beta: f64) -> Result<Self> {
        if !(x >= 2.0) || !(c > 0.0) || !(beta > 0.0) || !x.is_finite() {
            return Err(Error::Domain(format!(
                "need x >= 2, c > 0, beta > 0; got x={x}, c={c}, beta={beta}"
            )));
        }
        let (sx, lx) = (x.sqrt(), x.ln());
        let h = c * sx * lx;
        let height = beta / c * sx / lx;
        Self::assemble(x, c, beta, h, height)
    }

    /// Parameters from an explicit window `(x − h, x + h)` and height; `c`
    /// and `beta` are recovered from `h = c √x log x` and `h · height = beta · x`.
    pub fn from_window(x: f64, h: f64, height: f64) -> Result<Self> {
        if !(x >= 2.0) || !(h > 0.0) || !(height > 0.0) {
            return Err(Error::Domain(format!(
                "need x >= 2, h > 0, height > 0; got x={x}, h={h}, height={height}"
            )));
        }
        let c = h / (x.sqrt() * x.ln());
        let beta = h * height / x;
        Self::assemble(x, c, beta, h, height)
    }

    fn assemble(x: f64, c: f64, beta: f64, h: f64, height: f64) -> Result<Self> {
        if !(h < x) {
            return Err(Error::Domain(format!("h < x required; h={h}, x={x}")));
        }
        let r = h / x;
        let log_lo = x.ln() + (-r).ln_1p();
        let log_hi = x.ln() + r.ln_1p();
        Ok(Self {
            x,
            c,
            beta,
            h,
            height,
            log_lo,
            log_hi,
            log_half_width: r.atanh(),
            log_mid: x.ln() + 0.5 * (-r * r).ln_1p(),
        })
    }

    /// Same `x` and `beta`, constant raised by one (the "many primes" window).
    pub fn widened(&self) -> Result<Self> {
        Self::new(self.x, self.c + 1.0, self.beta)
    }

    fn require(&self, ok: bool, what: &str) -> Result<()> {
        if ok {
            Ok(())
        } else {
            Err(Error::Domain(format!(
                "{what} (x={}, c={}, beta={}, h={}, height={})",
                self.x, self.c, self.beta, self.h, self.height
            )))
        }
    }
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct Term {
    pub label: String,
    pub value: f64,
}

/// A bound written as a signed sum of labelled terms.
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct LowerBoundBreakdown {
    pub total: f64,
    pub terms: Vec<Term>,
}

impl LowerBoundBreakdown {
    fn from_terms(terms: Vec<(&str, f64)>) -> Self {
        let total = kahan_sum(terms.iter().map(|t| t.1));
        Self {
            total,
            terms: terms
                .into_iter()
                .map(|(label, value)| Term {
                    label: label.to_string(),
                    value,
                })
                .collect(),
        }
    }

    pub fn term(&self, label: &str) -> Option<f64> {
        self.terms
            .iter()
            .find(|t| t.label == label)
            .map(|t| t.value)
    }
}

/// Lower bound on the number of primes in a window, from a lower bound on
/// `Σ log p` divided by `log(x + h)`.
#[derive(Clone, Copy, Debug, PartialEq, Serialize, Deserialize)]
pub struct CountBound {
    pub primes_lower: f64,
    pub sqrt_x: f64,
    /// `primes_lower − √x`; nonnegative certifies `√x` primes.
    pub margin: f64,
}

/// Bound on `|N(T) − W(T)|` valid for `T >= e`.
pub fn trudgian_r(t: f64) -> Result<f64> {
    if !(t >= E) {
        return Err(Error::Domain(format!("R(T) requires T >= e, got {t}")));
    }
    let l = t.ln();
    Ok(0.112 * l + 0.278 * l.ln() + 2.51 + 0.2 / t + 7.0 / 8.0)
}

/// `W(T) = (T/2π) log(T/(2πe))`, the main term of the zero counting function.
pub fn zero_count_main_term(t: f64) -> f64 {
    t / TWO_PI * (t / (TWO_PI * E)).ln()
}

/// Residual allowance `(2|γ| + 1) r²` of the second-difference expansion,
/// with `r = h/x`.
pub fn lemma_a1_bound(gamma: f64, r: f64) -> f64 {
    (2.0 * gamma.abs() + 1.0) * r * r
}

/// Direct evaluation of
/// `|(1 + r)^{3/2 + iγ} − 2 + (1 − r)^{3/2 + iγ} + 4 sin²(γ r / 2)|`.
pub fn lemma_a1_direct(gamma: f64, r: f64) -> Result<f64> {
    if !(0.0..1.0).contains(&r) {
        return Err(Error::Domain(format!("need 0 <= h/x < 1, got {r}")));
    }
    let pow = |l: f64| Complex64::from_polar((1.5 * l).exp(), gamma * l);
    let second = pow(r.ln_1p()) - 2.0 + pow((-r).ln_1p());
    let s = (gamma * r / 2.0).sin();
    Ok((second + 4.0 * s * s).norm())
}

/// Upper bound on `|Σ₁|` from the Taylor route: seven terms, the second one
/// negative.
pub fn sigma1_bound_taylor(p: &BoundParams) -> Result<LowerBoundBreakdown> {
    p.require(
        p.height >= GAMMA_1,
        "height >= first zero ordinate required",
    )?;
    p.require(p.h <= p.x / 3f64.sqrt(), "h <= x/sqrt(3) required")?;
    let (x, h, t) = (p.x, p.h, p.height);
    let sx = x.sqrt();
    let lt = t.ln();
    let l2 = (t / TWO_PI).ln();
    Ok(LowerBoundBreakdown::from_terms(vec![
        ("h*sqrt(x)*log(T/2pi)", h * sx * l2),
        (
            "-(2/pi)*(x/T)*sqrt(x)*log(T/2pi)",
            -2.0 / PI * (x / t) * sx * l2,
        ),
        (
            "(4/pi)*x^2/(h*T^2)*sqrt(x)*log(T/2pi)",
            4.0 / PI * x * x / (h * t * t) * sx * l2,
        ),
        ("2.97*h*sqrt(x)", 2.97 * h * sx),
        ("(log^2 T/pi)*h^2/sqrt(x)", lt * lt / PI * h * h / sx),
        ("12*x^(3/2)*log T/T^2", 12.0 * x * sx * lt / (t * t)),
        ("h^2/(20*sqrt(x))", h * h / (20.0 * sx)),
    ]))
}

/// Bound `4 (x + h)^{3/2} log T / (π T)` on the zeros above height `T`.
pub fn sigma2_bound(x: f64, h: f64, t: f64) -> Result<f64> {
    if !(t > 1.0) {
        return Err(Error::Domain(format!(
            "sigma2 bound requires T > 1, got {t}"
        )));
    }
    Ok(4.0 * (x + h).powf(1.5) * t.ln() / (PI * t))
}

fn main_domain(p: &BoundParams) -> Result<()> {
    p.require(p.x >= 121.0, "x >= 121 required")?;
    p.require(p.h <= p.x / 3f64.sqrt(), "h <= x/sqrt(3) required")?;
    p.require(p.h / p.x <= 1.6, "h/x <= 1.6 required")?;
    p.require(
        p.height >= GAMMA_1,
        "height >= first zero ordinate required",
    )
}

/// Lower bound on `Σ_{|p−x|<h} log p` from the Taylor route, in gathered form.
pub fn lower_bound_main(p: &BoundParams) -> Result<LowerBoundBreakdown> {
    main_domain(p)?;
    let (x, h, beta) = (p.x, p.h, p.beta);
    let sx = x.sqrt();
    let lt = p.height.ln();
    let l2 = (p.height / TWO_PI).ln();
    let hs = h / sx;
    Ok(LowerBoundBreakdown::from_terms(vec![
        ("h", h),
        ("-sqrt(x)*log T", -sx * lt),
        ("-(2/pi)*sqrt(x)/beta*log T", -2.0 / PI * sx / beta * lt),
        ("-(3-log(2pi))*sqrt(x)", -(3.0 - TWO_PI.ln()) * sx),
        (
            "-(2/pi)*log(2pi)*sqrt(x)/beta",
            -2.0 / PI * TWO_PI.ln() * sx / beta,
        ),
        (
            "-(4/pi)*sqrt(x)/beta^2*log(T/2pi)",
            -4.0 / PI * sx / (beta * beta) * l2,
        ),
        ("-3*x^(1/3)", -3.0 * x.cbrt()),
        ("-(8/pi)*log T/beta*h/sqrt(x)", -8.0 / PI * lt / beta * hs),
        ("-(log^2 T/pi)*h/sqrt(x)", -lt * lt / PI * hs),
        (
            "-(2.05+12*log T/beta^2)*h/sqrt(x)",
            -(2.05 + 12.0 * lt / (beta * beta)) * hs,
        ),
        ("-3/(x*h)", -3.0 / (x * h)),
    ]))
}

/// [`lower_bound_main`] divided by `√x`, evaluated from `log x` so that it
/// stays finite far beyond the range of binary64 (e.g. `x ≈ e^590`).
pub fn lower_bound_main_scaled(log_x: f64, c: f64, beta: f64) -> Result<LowerBoundBreakdown> {
    let l = log_x;
    if !(l >= 121f64.ln()) || !(c > 0.0) || !(beta > 0.0) {
        return Err(Error::Domain(format!(
            "need log x >= log 121, c > 0, beta > 0; got {l}, {c}, {beta}"
        )));
    }
    let hs = c * l; // h / sqrt(x)
    let h_over_x = hs * (-l / 2.0).exp();
    let lt = (beta / c).ln() + l / 2.0 - l.ln();
    if !(h_over_x <= 1.0 / 3f64.sqrt()) || !(lt >= GAMMA_1.ln()) {
        return Err(Error::Domain(format!(
            "scaled bound outside domain: h/x={h_over_x}, log T={lt}"
        )));
    }
    let l2 = lt - TWO_PI.ln();
    let inv_sx = (-l / 2.0).exp();
    Ok(LowerBoundBreakdown::from_terms(vec![
        ("h", hs),
        ("-sqrt(x)*log T", -lt),
        ("-(2/pi)*sqrt(x)/beta*log T", -2.0 / PI / beta * lt),
        ("-(3-log(2pi))*sqrt(x)", -(3.0 - TWO_PI.ln())),
        (
            "-(2/pi)*log(2pi)*sqrt(x)/beta",
            -2.0 / PI * TWO_PI.ln() / beta,
        ),
        (
            "-(4/pi)*sqrt(x)/beta^2*log(T/2pi)",
            -4.0 / PI / (beta * beta) * l2,
        ),
        ("-3*x^(1/3)", -3.0 * (-l / 6.0).exp()),
        (
            "-(8/pi)*log T/beta*h/sqrt(x)",
            -8.0 / PI * lt / beta * hs * inv_sx,
        ),
        ("-(log^2 T/pi)*h/sqrt(x)", -lt * lt / PI * hs * inv_sx),
        (
            "-(2.05+12*log T/beta^2)*h/sqrt(x)",
            -(2.05 + 12.0 * lt / (beta * beta)) * hs * inv_sx,
        ),
        ("-3/(x*h)", -3.0 * (-2.0 * l).exp() / hs),
    ]))
}

/// Prime-count lower bound in the window of `p` (callers pass the widened
/// window): the Taylor-route lower bound divided by `log(x + h)`.
pub fn lower_bound_count_main(p: &BoundParams) -> Result<CountBound> {
    let total = lower_bound_main(p)?.total;
    let sqrt_x = p.x.sqrt();
    let primes_lower = total / (p.x + p.h).ln();
    Ok(CountBound {
        primes_lower,
        sqrt_x,
        margin: primes_lower - sqrt_x,
    })
}

/// Remainder `H(A, T)` of the mean-square cancellation estimate.
pub fn mean_square_remainder(a: f64, t: f64) -> Result<f64> {
    if !(a > 0.0) {
        return Err(Error::Domain(format!("H(A, T) requires A > 0, got {a}")));
    }
    let r1 = trudgian_r(t)? + 1.0;
    let y = a * t;
    Ok(4.0 / PI * (2.0 + y) * y * r1 * (t / TWO_PI).ln()
        + 8.0 * a * (1.0 + y + y * y / 3.0) * r1 * r1)
}

/// The square-root factor `(2β/3 F(AT) + (2βπ²/3) H(A,T)/(T log²(T/2π)))^{1/2}`,
/// returned with its two contributions.
fn meansquare_parts(p: &BoundParams, f_value: f64) -> Result<(f64, f64, f64)> {
    p.require(p.height > TWO_PI, "height > 2*pi required")?;
    let l2 = (p.height / TWO_PI).ln();
    let hr = mean_square_remainder(p.log_half_width, p.height)?;
    let f_part = 2.0 * p.beta / 3.0 * f_value;
    let h_part = 2.0 * p.beta * PI * PI / 3.0 * hr / (p.height * l2 * l2);
    Ok(((f_part + h_part).sqrt(), f_part, h_part))
}

fn meansquare_hypotheses(p: &BoundParams) -> Result<()> {
    p.require(p.beta >= 1.0, "beta >= 1 required")?;
    p.require(p.c <= 1.0, "c <= 1 required")?;
    p.require(p.x >= 2.0, "x >= 2 required")
}

/// Contributions of `F` and `H` inside the mean-square coefficient.
pub fn meansquare_contributions(p: &BoundParams, f_at: &QuadResult) -> Result<(f64, f64)> {
    let (_, f_part, h_part) = meansquare_parts(p, f_at.value)?;
    Ok((f_part, h_part))
}

/// Upper bound on `|Σ₁|` through the mean square of the zero exponential sum.
/// `f_at` must be `F(y)` at `y = log_half_width · height`.
pub fn sigma1_bound_meansquare(p: &BoundParams, f_at: &QuadResult) -> Result<f64> {
    meansquare_hypotheses(p)?;
    let (coef, _, _) = meansquare_parts(p, f_at.value)?;
    Ok(coef / PI * p.h * p.x.sqrt() * (p.height / TWO_PI).ln())
}

fn appendix_terms(p: &BoundParams, f_value: f64) -> Result<LowerBoundBreakdown> {
    p.require(p.x >= 121.0, "x >= 121 required")?;
    p.require(p.h <= p.x / 3f64.sqrt(), "h <= x/sqrt(3) required")?;
    let (coef, _, _) = meansquare_parts(p, f_value)?;
    let (x, h, t) = (p.x, p.h, p.height);
    let sx = x.sqrt();
    Ok(LowerBoundBreakdown::from_terms(vec![
        ("1", 1.0),
        (
            "-coef*sqrt(x)/(pi*h)*log(T/2pi)",
            -coef * sx / (PI * h) * (t / TWO_PI).ln(),
        ),
        (
            "-4*(x+h)^(3/2)*log T/(pi*h^2*T)",
            -4.0 * (x + h).powf(1.5) * t.ln() / (PI * h * h * t),
        ),
        ("-0.002*sqrt(x)/h", -0.002 * sx / h),
        ("-3*x^(1/3)/h", -3.0 * x.cbrt() / h),
        ("-2/sqrt(x)", -2.0 / sx),
        ("-3/(x*h^2)", -3.0 / (x * h * h)),
    ]))
}

/// Lower bound on `h⁻¹ Σ_{|p−x|<h} log p` from the mean-square route.
pub fn lower_bound_appendix(p: &BoundParams, f_at: &QuadResult) -> Result<LowerBoundBreakdown> {
    meansquare_hypotheses(p)?;
    appendix_terms(p, f_at.value)
}

/// The mean-square lower bound evaluated in a widened window (`c > 1` is
/// allowed here), without conversion to a prime count.
pub fn lower_bound_appendix_widened(
    p: &BoundParams,
    f_at: &QuadResult,
) -> Result<LowerBoundBreakdown> {
    p.require(p.beta >= 1.0, "beta >= 1 required")?;
    appendix_terms(p, f_at.value)
}

/// Prime-count lower bound `h · (h⁻¹ Σ log p lower bound) / log(x + h)` in the
/// widened window of `p`.
pub fn lower_bound_appendix_count(p: &BoundParams, f_at: &QuadResult) -> Result<CountBound> {
    let total = lower_bound_appendix_widened(p, f_at)?.total;
    let sqrt_x = p.x.sqrt();
    let primes_lower = p.h * total / (p.x + p.h).ln();
    Ok(CountBound {
        primes_lower,
        sqrt_x,
        margin: primes_lower - sqrt_x,
    })
}

/// Bounds `(0.9986 √x, (1 + 10⁻⁶) √x + 3 x^{1/3})` on `ψ(x) − θ(x)`, `x >= 121`.
pub fn psi_theta_bounds(x: f64) -> Result<(f64, f64)> {
    if !(x >= 121.0) {
        return Err(Error::Domain(format!(
            "psi - theta bounds need x >= 121, got {x}"
        )));
    }
    let s = x.sqrt();
    Ok((0.9986 * s, (1.0 + 1e-6) * s + 3.0 * x.cbrt()))
}

/// Gap size from which a prime in `(p_k², p_{k+1}²)` follows.
pub fn corollary2_threshold(p_k: f64) -> f64 {
    let l = p_k.ln();
    let alpha = (1.0 + 1.0 / l).powi(2);
    alpha * l + alpha * alpha * l * l / (2.0 * p_k)
}

/// Whether the gap `p_{k+1} − p_k` is large enough to force a prime in
/// `(p_k², p_{k+1}²)`.
pub fn corollary2_condition(p_k: f64, gap: f64) -> bool {
    p_k >= 2.0 && gap > 0.0 && gap >= corollary2_threshold(p_k)
}

/// `α(n) = 1 + 2/log n + 1/log² n`, the width factor of the interval
/// `(n², (n + α log n)²)`.
pub fn legendre_alpha(n: f64) -> f64 {
    let l = n.ln();
    1.0 + 2.0 / l + 1.0 / (l * l)
}

/// `∫_{14}^{∞} R(γ)/γ² dγ`: adaptive quadrature to `cut`, and an upper bound
/// for the tail beyond it.
pub fn r_over_gamma_sq_integral(cut: f64, tol: f64) -> Result<QuadResult> {
    let head = integrate_adaptive(
        |g| trudgian_r(g).unwrap_or(f64::NAN) / (g * g),
        14.0,
        cut,
        tol,
        &[],
    )?;
    let m = cut;
    let lm = m.ln();
    // ∫_M^∞ log g/g² = (log M + 1)/M; ∫_M^∞ log log g/g² <= log log M/M + 1/(M log M)
    let tail = 0.112 * (lm + 1.0) / m
        + 0.278 * (lm.ln() / m + 1.0 / (m * lm))
        + (2.51 + 0.875) / m
        + 0.1 / (m * m);
    Ok(QuadResult {
        value: head.value + tail,
        err_estimate: head.err_estimate,
        evaluations: head.evaluations,
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::quadrature::f_integral;

    fn close(a: f64, b: f64, rel: f64) -> bool {
        (a - b).abs() <= rel * b.abs().max(1e-300)
    }

    #[test]
    fn params_identities() {
        let p = BoundParams::new(1e8, 0.6, 2.5).unwrap();
        assert!(close(p.h * p.height, p.beta * p.x, 1e-14));
        let a_direct = 0.5 * ((p.x + p.h) / (p.x - p.h)).ln();
        let b_direct = 0.5 * (p.x * p.x - p.h * p.h).ln();
        assert!(close(p.log_half_width, a_direct, 1e-9));
        assert!(close(p.log_mid, b_direct, 1e-14));
        assert!(close(p.log_hi - p.log_lo, 2.0 * p.log_half_width, 1e-9));
        let q = BoundParams::from_window(p.x, p.h, p.height).unwrap();
        assert!(close(q.c, p.c, 1e-14) && close(q.beta, p.beta, 1e-14));
        assert!(BoundParams::new(10.0, 5.0, 1.0).is_err());
    }

    #[test]
    fn trudgian_values() {
        let r = trudgian_r(E).unwrap();
        assert!((r - (0.112 + 2.51 + 0.2 / E + 0.875)).abs() < 1e-15);
        assert!((r - 3.5706).abs() < 1e-4);
        assert!(trudgian_r(2.0).is_err());
    }

    #[test]
    fn trudgian_below_one_and_half_log() {
        // geometric grid from the first zero to 1e12
        let mut t = GAMMA_1;
        while t <= 1e12 {
            assert!(trudgian_r(t).unwrap() <= 1.5 * t.ln(), "T = {t}");
            t *= 1.001;
        }
    }

    #[test]
    fn trudgian_increasing_from_three() {
        let mut t = 3.0;
        let mut prev = trudgian_r(t).unwrap();
        while t < 1e9 {
            t *= 1.01;
            let r = trudgian_r(t).unwrap();
            assert!(r > prev, "T = {t}");
            prev = r;
        }
    }

    #[test]
    fn lemma_a1_examples() {
        let d = lemma_a1_direct(0.0, 0.1).unwrap();
        let direct = 1.1f64.powf(1.5) - 2.0 + 0.9f64.powf(1.5);
        assert!((d - direct).abs() < 1e-15);
        assert!((d - 0.0075047).abs() < 1e-7);
        assert!(d <= lemma_a1_bound(0.0, 0.1));
        assert_eq!(lemma_a1_direct(3.0, 0.0).unwrap(), 0.0);
        assert_eq!(lemma_a1_bound(3.0, 0.0), 0.0);
        assert!(lemma_a1_direct(1.0, 1.0).is_err());
    }

    #[test]
    fn sigma2_example() {
        let v = sigma2_bound(1e6, 1e4, 1e3).unwrap();
        let want = 4.0 * 1.01e6f64.powf(1.5) * 1e3f64.ln() / (PI * 1e3);
        assert!(close(v, want, 1e-15));
        assert!(close(v, 8.93e6, 1e-3));
        let t = 50.0;
        assert!(sigma2_bound(1e6, 1e4, 2.0 * t).unwrap() < sigma2_bound(1e6, 1e4, t).unwrap());
        assert!(sigma2_bound(1.0, 0.5, 1.0).is_err());
    }

    #[test]
    fn taylor_bound_signs_and_leading_term() {
        let x: f64 = 1e8;
        let p = BoundParams::new(x, c_log_scaled(2.0, x), beta_log_over_pi(x)).unwrap();
        let b = sigma1_bound_taylor(&p).unwrap();
        assert_eq!(b.terms.len(), 7);
        for (i, t) in b.terms.iter().enumerate() {
            if i == 1 {
                assert!(t.value <= 0.0);
            } else {
                assert!(t.value >= 0.0, "{}", t.label);
            }
        }
        assert!(b.total > 0.0);
        // normalized by the leading term the bound tends to 1, slowly
        let mut prev = f64::INFINITY;
        for lx in [20.0, 40.0, 80.0, 160.0, 320.0] {
            let x = f64::exp(lx);
            let p = BoundParams::new(x, c_log_scaled(2.0, x), beta_log_over_pi(x)).unwrap();
            let b = sigma1_bound_taylor(&p).unwrap();
            let ratio = b.total / (p.h * x.sqrt() * (p.height / TWO_PI).ln());
            assert!(ratio > 1.0 && ratio < prev, "log x = {lx}: {ratio}");
            prev = ratio;
        }
        assert!(prev < 1.1);
    }

    #[test]
    fn main_bound_term_sum_and_scaled_agreement() {
        for x in [1e4, 1e6, 7.5e8, 1e12, 1e15] {
            let p = BoundParams::new(x, c_log_scaled(2.0, x), beta_log_over_pi(x)).unwrap();
            let b = lower_bound_main(&p).unwrap();
            let s: f64 = b.terms.iter().map(|t| t.value).sum();
            assert!(
                (b.total - s).abs() <= 1e-12 * b.terms.iter().map(|t| t.value.abs()).sum::<f64>()
            );
            let scaled = lower_bound_main_scaled(x.ln(), p.c, p.beta).unwrap();
            assert!(
                (scaled.total * x.sqrt() - b.total).abs() <= 1e-9 * p.h,
                "x = {x}: {} vs {}",
                scaled.total * x.sqrt(),
                b.total
            );
        }
    }

    #[test]
    fn main_bound_domain_errors_name_constraint() {
        let p = BoundParams::new(100.0, 0.5, 1.0).unwrap();
        let e = lower_bound_main(&p).unwrap_err().to_string();
        assert!(e.contains("x >= 121"), "{e}");
        let p = BoundParams::new(1e4, 0.5, 0.1).unwrap();
        let e = lower_bound_main(&p).unwrap_err().to_string();
        assert!(e.contains("height"), "{e}");
    }

    #[test]
    fn main_bound_leading_order() {
        // total/h -> 1 - sqrt(x) log x / (2h) as x grows
        for lx in [100.0f64, 200.0, 400.0] {
            let c = c_log_scaled(2.0, lx.exp());
            let beta = lx / PI;
            let b = lower_bound_main_scaled(lx, c, beta).unwrap();
            let hs = c * lx;
            let lead = 1.0 - lx / (2.0 * hs);
            let got = b.total / hs;
            assert!(
                (got - lead).abs() < 4.0 / lx,
                "log x = {lx}: {got} vs {lead}"
            );
        }
    }

    #[test]
    fn h_remainder_examples() {
        assert!(mean_square_remainder(1e-300, 1e3).unwrap() < 1e-290);
        let (a, t) = (1e-3, 1e3);
        let v = mean_square_remainder(a, t).unwrap();
        // second implementation: expanded polynomial in A
        let r = 0.112 * t.ln() + 0.278 * t.ln().ln() + 2.51 + 0.2 / t + 0.875 + 1.0;
        let l = (t / (2.0 * PI)).ln();
        let expanded = (8.0 / PI) * a * t * r * l
            + (4.0 / PI) * a * a * t * t * r * l
            + 8.0 * a * r * r
            + 8.0 * a * a * t * r * r
            + (8.0 / 3.0) * a * a * a * t * t * r * r;
        assert!(close(v, expanded, 1e-13));
        // relative to the main scale the remainder vanishes at fixed A*T
        let mut prev = f64::INFINITY;
        for t in [1e3, 1e5, 1e7, 1e9] {
            let rel =
                mean_square_remainder(2.5 / t, t).unwrap() / (t * (t / (2.0 * PI)).ln().powi(2));
            assert!(rel < prev);
            prev = rel;
        }
        assert!(prev < 1e-3);
    }

    #[test]
    fn meansquare_hypotheses_enforced() {
        let p = BoundParams::new(1e6, 1.2, 2.0).unwrap();
        let f = f_integral(p.log_half_width * p.height, 1e-8).unwrap();
        assert!(sigma1_bound_meansquare(&p, &f).is_err());
        assert!(lower_bound_appendix(&p, &f).is_err());
        assert!(lower_bound_appendix_widened(&p, &f).is_ok());
        let p = BoundParams::new(1e6, 0.6, 0.5).unwrap();
        assert!(sigma1_bound_meansquare(&p, &f).is_err());
    }

    #[test]
    fn meansquare_h_share_vanishes() {
        let mut prev = f64::INFINITY;
        for lx in [10.0f64, 15.0, 20.0, 25.0, 30.0] {
            let p = BoundParams::new(lx.exp(), 0.6102, 2.493).unwrap();
            let f = f_integral(p.log_half_width * p.height, 1e-10).unwrap();
            let (fp, hp) = meansquare_contributions(&p, &f).unwrap();
            assert!(hp / fp < prev);
            prev = hp / fp;
        }
        assert!(prev < 0.01);
    }

    #[test]
    fn psi_theta_bounds_example() {
        let (lo, hi) = psi_theta_bounds(121.0).unwrap();
        assert!((lo - 10.9846).abs() < 1e-12);
        assert!((hi - (11.000011 + 3.0 * 121f64.cbrt())).abs() < 1e-9);
        assert!((hi - 25.83827).abs() < 1e-5);
        assert!(psi_theta_bounds(120.0).is_err());
        let mut x = 121.0;
        while x < 1e12 {
            let (lo, hi) = psi_theta_bounds(x).unwrap();
            assert!(lo < hi);
            x *= 1.1;
        }
    }

    #[test]
    fn corollary2_examples() {
        let t = corollary2_threshold(113.0);
        let l = 113f64.ln();
        let alpha = (1.0 + 1.0 / l).powi(2);
        assert!((alpha - 1.467812).abs() < 1e-6);
        assert!((t - 7.1520).abs() < 1e-3, "{t}");
        assert!(corollary2_condition(113.0, 14.0));
        for p in [11.0, 101.0, 1e6 + 3.0, 1e12 + 39.0] {
            assert!(!corollary2_condition(p, 2.0));
        }
    }

    #[test]
    fn legendre_alpha_at_two() {
        assert!((legendre_alpha(2.0) - 5.967).abs() < 1e-3);
    }

    #[test]
    fn sin_squared_below_three_quarters_v() {
        let n = 1_000_000;
        for i in 0..=n {
            let v = 100.0 * i as f64 / n as f64;
            assert!(v.sin().powi(2) <= 0.75 * v, "v = {v}");
        }
    }

    #[test]
    fn r_integral_below_0297() {
        let q = r_over_gamma_sq_integral(1e6, 1e-10).unwrap();
        assert!(q.value <= 0.297, "{}", q.value);
        assert!((q.value - 0.296451).abs() < 1e-5);
    }
}

//! Machine-readable claim reports.

use std::time::Instant;

use serde::{Deserialize, Serialize};
use serde_json::Value;

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum Status {
    Pass,
    Fail,
    Skipped,
}

/// The extremal instance of a check: the tightest passing case, or the first
/// failing one.
#[derive(Clone, Debug, Default, PartialEq, Serialize, Deserialize)]
pub struct Witness {
    #[serde(skip_serializing_if = "Option::is_none")]
    pub k: Option<u64>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub p_k: Option<u64>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub x: Option<f64>,
    pub lhs: f64,
    pub rhs: f64,
}

impl Witness {
    pub fn prime(k: u64, p_k: u64, lhs: f64, rhs: f64) -> Self {
        Self {
            k: Some(k),
            p_k: Some(p_k),
            x: None,
            lhs,
            rhs,
        }
    }

    pub fn at(x: f64, lhs: f64, rhs: f64) -> Self {
        Self {
            x: Some(x),
            lhs,
            rhs,
            ..Self::default()
        }
    }
}

/// Outcome of one verified claim.
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct ClaimReport {
    pub claim: String,
    pub anchor: String,
    pub params: Value,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub range: Option<[f64; 2]>,
    pub status: Status,
    pub pass: bool,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub witness: Option<Witness>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub note: Option<String>,
    pub elapsed_ms: u64,
}

impl ClaimReport {
    pub fn new(claim: impl Into<String>, anchor: impl Into<String>, params: Value) -> Self {
        Self {
            claim: claim.into(),
            anchor: anchor.into(),
            params,
            range: None,
            status: Status::Pass,
            pass: true,
            witness: None,
            note: None,
            elapsed_ms: 0,
        }
    }

    pub fn with_range(mut self, lo: f64, hi: f64) -> Self {
        self.range = Some([lo, hi]);
        self
    }

    pub fn with_witness(mut self, w: Witness) -> Self {
        self.witness = Some(w);
        self
    }

    pub fn with_note(mut self, note: impl Into<String>) -> Self {
        self.note = Some(note.into());
        self
    }

    pub fn passed(mut self, pass: bool) -> Self {
        self.pass = pass;
        self.status = if pass { Status::Pass } else { Status::Fail };
        self
    }

    pub fn skipped(mut self, reason: impl Into<String>) -> Self {
        self.pass = false;
        self.status = Status::Skipped;
        self.note = Some(reason.into());
        self
    }

    pub fn elapsed_since(mut self, start: Instant) -> Self {
        self.elapsed_ms = start.elapsed().as_millis() as u64;
        self
    }

    /// Same report with timing zeroed, for determinism comparisons.
    pub fn without_timing(&self) -> Self {
        Self {
            elapsed_ms: 0,
            ..self.clone()
        }
    }
}

/// Registered anchors: the statement each claim checks, in words.
pub mod anchors {
    pub const GAP_BOUND: &str = "p_{k+1} - p_k <= 2c sqrt(p_k) log p_k over the first primes";
    pub const SQRT_COUNT: &str =
        "p_{n+ceil(sqrt p_n)} - p_n <= 2(c+1) sqrt(p_n) log p_n over the first primes";
    pub const LEGENDRE: &str =
        "a prime lies in (n^2, (n + alpha log n)^2), alpha = 1 + 2/log n + 1/log^2 n";
    pub const LEGENDRE_CONTAINMENT: &str =
        "(x - c sqrt(x) log x, x + c sqrt(x) log x) lies inside (n^2, (n + alpha log n)^2) at the midpoint x";
    pub const MAX_GAP: &str = "p_{k+1} - p_k < log^2 p_k for p_k >= 11";
    pub const PSI_THETA: &str =
        "0.9986 sqrt(x) <= psi(x) - theta(x) <= (1 + 1e-6) sqrt(x) + 3 x^(1/3) for x >= 121";
    pub const COROLLARY2: &str =
        "p_{k+1} - p_k >= alpha log p_k + alpha^2 log^2 p_k / (2 p_k) gives a prime in (p_k^2, p_{k+1}^2)";
    pub const KERNEL_IDENTITY: &str =
        "sum Lambda(n) K(x - n; h) = psi1(x + h) - 2 psi1(x) + psi1(x - h)";
    pub const LEMMA_RESIDUAL: &str =
        "|(1+r)^{3/2+i gamma} - 2 + (1-r)^{3/2+i gamma} + 4 sin^2(gamma r/2)| <= (2|gamma| + 1) r^2";
    pub const SIN2_LINEAR: &str = "sin^2 v <= (3/4)|v|";
    pub const SIN2_IDENTITY: &str =
        "int_0^y sin^2 t / t^2 dt = pi/2 - 1/(2y) + theta/(2y^2), |theta| <= 1";
    pub const R_INTEGRAL: &str = "int_14^inf R(gamma)/gamma^2 d gamma <= 0.297";
    pub const F_ORACLE: &str = "F(y) by the overlap-length reduction equals the double integral";
    pub const MIN_ALPHA: &str =
        "alpha(beta) = (sqrt(beta F(beta)/6) + 2/beta)/pi has minimum 0.61019 at beta = 2.4934";
    pub const THRESHOLD_MAIN: &str =
        "Taylor-route lower bound with c = 1/2 + 2/log x, beta = log x/pi is positive for x >= 7.5e8";
    pub const THRESHOLD_MAIN_COUNT: &str =
        "sqrt(x) primes in (x - (c+1) sqrt(x) log x, x + (c+1) sqrt(x) log x) for x >= 1.4e5";
    pub const THRESHOLD_APPENDIX: &str =
        "mean-square lower bound with c = 0.6102, beta = 2.493 is positive for x >= 16000";
    pub const THRESHOLD_APPENDIX_COUNT: &str =
        "sqrt(x) primes in (x - 1.6102 sqrt(x) log x, x + 1.6102 sqrt(x) log x) for x >= 1500";
    pub const THRESHOLD_LOG: &str =
        "with c = 1/2 + 1.72/log x the lower bound holds only for x >= exp(590)";
    pub const SOUNDNESS: &str = "a positive lower bound at x implies a prime in (x - h, x + h)";
    pub const TRUDGIAN: &str = "|N(T) - W(T)| <= R(T) for T >= e";
    pub const SKEWES: &str =
        "sum_{gamma<=T} 1/gamma <= log^2 T/(4 pi) and sum_{gamma>0} 1/gamma^2 <= 1/40";
    pub const ZERO_COUNT_UPPER: &str = "N(T) <= (T/2pi) log T";
    pub const SIGMA2_TAIL: &str = "sum_{gamma>T} 1/gamma^2 <= log T/(pi T)";
    pub const SIGMA1_TAYLOR: &str = "|Sigma_1| is at most the Taylor-route bound";
    pub const SIGMA1_MEANSQUARE: &str = "|Sigma_1| is at most the mean-square bound";
    pub const MEAN_SQUARE: &str =
        "int_a^b |S_alpha(T)|^2 d alpha <= F(AT) T log^2(T/2pi)/pi^2 + H(A, T)";

    pub const ALL: &[&str] = &[
        GAP_BOUND,
        SQRT_COUNT,
        LEGENDRE,
        LEGENDRE_CONTAINMENT,
        MAX_GAP,
        PSI_THETA,
        COROLLARY2,
        KERNEL_IDENTITY,
        LEMMA_RESIDUAL,
        SIN2_LINEAR,
        SIN2_IDENTITY,
        R_INTEGRAL,
        F_ORACLE,
        MIN_ALPHA,
        THRESHOLD_MAIN,
        THRESHOLD_MAIN_COUNT,
        THRESHOLD_APPENDIX,
        THRESHOLD_APPENDIX_COUNT,
        THRESHOLD_LOG,
        SOUNDNESS,
        TRUDGIAN,
        SKEWES,
        ZERO_COUNT_UPPER,
        SIGMA2_TAIL,
        SIGMA1_TAYLOR,
        SIGMA1_MEANSQUARE,
        MEAN_SQUARE,
    ];

    pub fn is_registered(anchor: &str) -> bool {
        ALL.contains(&anchor)
    }
}

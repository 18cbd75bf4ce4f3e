//! Finite, sieve-backed checks of the prime-side claims.

use std::time::Instant;

use serde::{Deserialize, Serialize};
use serde_json::json;

use super::chebyshev::higher_prime_powers;
use super::sieve::{isqrt, Sieve};
use crate::error::{Error, Result};
use crate::explicit_bounds::{corollary2_condition, corollary2_threshold, legendre_alpha};
use crate::report::{anchors, ClaimReport, Witness};
use crate::sum::KahanSum;

/// The constant `c` in `2c √p log p`: fixed, or `1/2 + d / log p`.
#[derive(Clone, Copy, Debug, PartialEq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum GapConstant {
    Fixed(f64),
    LogScaled(f64),
}

impl GapConstant {
    pub fn at(self, p: f64) -> f64 {
        match self {
            GapConstant::Fixed(c) => c,
            GapConstant::LogScaled(d) => 0.5 + d / p.ln(),
        }
    }
}

/// Tracks the largest `lhs / rhs` and the first violation `lhs > rhs`.
#[derive(Default)]
struct Extremum {
    worst: Option<(f64, Witness)>,
    first_failure: Option<Witness>,
}

impl Extremum {
    fn offer(&mut self, w: Witness, fails: bool) {
        let ratio = w.lhs / w.rhs;
        if fails && self.first_failure.is_none() {
            self.first_failure = Some(w.clone());
        }
        if self.worst.as_ref().is_none_or(|(r, _)| ratio > *r) {
            self.worst = Some((ratio, w));
        }
    }

    fn finish(self, report: ClaimReport) -> ClaimReport {
        match (self.first_failure, self.worst) {
            (Some(w), _) => report.passed(false).with_witness(w),
            (None, Some((_, w))) => report.passed(true).with_witness(w),
            (None, None) => report.passed(true).with_note("no instances in range"),
        }
    }
}

fn ceil_sqrt(n: u64) -> u64 {
    let r = isqrt(n);
    if r * r < n {
        r + 1
    } else {
        r
    }
}

/// `p_{k+1} − p_k <= 2c √p_k log p_k` for `1 <= k <= k_max`.
pub fn verify_gap_bound(sieve: &Sieve, k_max: usize, c: GapConstant) -> Result<ClaimReport> {
    let start = Instant::now();
    if k_max == 0 {
        return Err(Error::Domain("k_max must be at least 1".into()));
    }
    let primes = sieve.first_primes(k_max + 1)?;
    let mut ext = Extremum::default();
    for (i, w) in primes.windows(2).enumerate() {
        let p = w[0] as f64;
        let gap = (w[1] - w[0]) as f64;
        let rhs = 2.0 * c.at(p) * p.sqrt() * p.ln();
        ext.offer(Witness::prime(i as u64 + 1, w[0], gap, rhs), gap > rhs);
    }
    let report = ClaimReport::new(
        "gap_bound",
        anchors::GAP_BOUND,
        json!({"k_max": k_max, "c": c}),
    )
    .with_range(1.0, k_max as f64);
    Ok(ext.finish(report).elapsed_since(start))
}

/// `p_{n+⌈√p_n⌉} − p_n <= 2(c+1) √p_n log p_n` for `1 <= n <= n_max`.
pub fn verify_sqrt_count(sieve: &Sieve, n_max: usize, c: f64) -> Result<ClaimReport> {
    let start = Instant::now();
    if n_max == 0 {
        return Err(Error::Domain("n_max must be at least 1".into()));
    }
    let head = sieve.first_primes(n_max)?;
    let needed = n_max + ceil_sqrt(head[n_max - 1]) as usize;
    let primes = sieve.first_primes(needed)?;
    let mut ext = Extremum::default();
    for n in 1..=n_max {
        let p = primes[n - 1];
        let q = primes[n + ceil_sqrt(p) as usize - 1];
        let pf = p as f64;
        let lhs = (q - p) as f64;
        let rhs = 2.0 * (c + 1.0) * pf.sqrt() * pf.ln();
        ext.offer(Witness::prime(n as u64, p, lhs, rhs), lhs > rhs);
    }
    let report = ClaimReport::new(
        "sqrt_count",
        anchors::SQRT_COUNT,
        json!({"n_max": n_max, "c": c}),
    )
    .with_range(1.0, n_max as f64);
    Ok(ext.finish(report).elapsed_since(start))
}

/// Upper end `(n + α(n) log n)²` of the interval attached to `n`.
pub fn legendre_upper(n: u64) -> f64 {
    let nf = n as f64;
    (nf + legendre_alpha(nf) * nf.ln()).powi(2)
}

/// A prime strictly inside `(n², (n + α log n)²)` for every `n_lo <= n <= n_hi`.
/// The witness is the `n` whose first prime sits furthest into its interval.
pub fn verify_legendre_interval(sieve: &Sieve, n_lo: u64, n_hi: u64) -> Result<ClaimReport> {
    let start = Instant::now();
    if !(2 <= n_lo && n_lo <= n_hi) {
        return Err(Error::InvalidRange(format!(
            "need 2 <= n_lo <= n_hi, got {n_lo}, {n_hi}"
        )));
    }
    let top = legendre_upper(n_hi).ceil() as u64 + 1;
    let range = sieve.sieve(n_lo * n_lo, top)?;
    let mut ext = Extremum::default();
    for n in n_lo..=n_hi {
        let lo = n * n;
        let hi = legendre_upper(n);
        let width = hi - lo as f64;
        match range.next_prime_after(lo) {
            Some(p) if (p as f64) < hi => {
                ext.offer(Witness::prime(n, p, (p - lo) as f64, width), false);
            }
            _ => ext.offer(Witness::prime(n, 0, f64::INFINITY, width), true),
        }
    }
    let report = ClaimReport::new(
        "legendre_interval",
        anchors::LEGENDRE,
        json!({"n_lo": n_lo, "n_hi": n_hi}),
    )
    .with_range(n_lo as f64, n_hi as f64);
    Ok(ext.finish(report).elapsed_since(start))
}

/// At the midpoint `x` of `(n², (n + α log n)²)` and `c = 1/2 + 2/log x`,
/// `n² <= x − c √x log x` (the interval around `x` then fits inside), and the
/// equivalent inequality
/// `√(1+b+b²/2) (2 log n + 4 + log(1+b+b²/2)) <= 2 log n + 4 + 2/log n + n b²`
/// with `b = α log n / n`.
pub fn verify_legendre_containment(n_lo: u64, n_hi: u64) -> Result<ClaimReport> {
    let start = Instant::now();
    if !(2 <= n_lo && n_lo <= n_hi) {
        return Err(Error::InvalidRange(format!(
            "need 2 <= n_lo <= n_hi, got {n_lo}, {n_hi}"
        )));
    }
    let mut ext = Extremum::default();
    let mut reduced_fails = None;
    for n in n_lo..=n_hi {
        let nf = n as f64;
        let ln = nf.ln();
        let lo = nf * nf;
        let x = 0.5 * (lo + legendre_upper(n));
        let c = 0.5 + 2.0 / x.ln();
        let left_end = x - c * x.sqrt() * x.ln();
        ext.offer(Witness::prime(n, n, lo, left_end), lo > left_end);

        let b = legendre_alpha(nf) * ln / nf;
        let s = 1.0 + b + b * b / 2.0;
        let lhs = s.sqrt() * (2.0 * ln + 4.0 + s.ln());
        let rhs = 2.0 * ln + 4.0 + 2.0 / ln + nf * b * b;
        if lhs > rhs && reduced_fails.is_none() {
            reduced_fails = Some(n);
        }
    }
    let report = ClaimReport::new(
        "legendre_containment",
        anchors::LEGENDRE_CONTAINMENT,
        json!({"n_lo": n_lo, "n_hi": n_hi}),
    )
    .with_range(n_lo as f64, n_hi as f64);
    let mut report = ext.finish(report);
    if let Some(n) = reduced_fails {
        report = report
            .passed(false)
            .with_note(format!("reduced inequality fails at n = {n}"));
    }
    Ok(report.elapsed_since(start))
}

/// Per-segment summary for the maximal-gap sweep.
struct GapSummary {
    first: Option<u64>,
    last: Option<u64>,
    worst: Option<(f64, u64, u64)>,
    violation: Option<(u64, u64)>,
}

fn gap_ratio(p: u64, q: u64) -> f64 {
    let l = (p as f64).ln();
    (q - p) as f64 / (l * l)
}

/// `p_{k+1} − p_k < log² p_k` for every prime `11 <= p_k <= cap`.
pub fn verify_max_gap(sieve: &Sieve, cap: u64) -> Result<ClaimReport> {
    let start = Instant::now();
    if cap < 11 {
        return Err(Error::Domain(format!("cap must be at least 11, got {cap}")));
    }
    let summaries = sieve.map_segments(11, cap, |seg| {
        let mut s = GapSummary {
            first: None,
            last: None,
            worst: None,
            violation: None,
        };
        for p in seg.primes() {
            if let Some(prev) = s.last {
                let r = gap_ratio(prev, p);
                if r >= 1.0 && s.violation.is_none() {
                    s.violation = Some((prev, p));
                }
                if s.worst.is_none_or(|(w, _, _)| r > w) {
                    s.worst = Some((r, prev, p));
                }
            } else {
                s.first = Some(p);
            }
            s.last = Some(p);
        }
        s
    })?;

    let mut worst: Option<(f64, u64, u64)> = None;
    let mut violation: Option<(u64, u64)> = None;
    let note_pair = |p: u64, q: u64, worst: &mut Option<(f64, u64, u64)>| {
        let r = gap_ratio(p, q);
        if worst.is_none_or(|(w, _, _)| r > w) {
            *worst = Some((r, p, q));
        }
        r
    };
    let mut prev_last: Option<u64> = None;
    for s in &summaries {
        if let (Some(p), Some(q)) = (prev_last, s.first) {
            if note_pair(p, q, &mut worst) >= 1.0 && violation.is_none() {
                violation = Some((p, q));
            }
        }
        if let Some(w) = s.worst {
            if worst.is_none_or(|(r, _, _)| w.0 > r) {
                worst = Some(w);
            }
        }
        if violation.is_none() {
            violation = s.violation;
        }
        if s.last.is_some() {
            prev_last = s.last;
        }
    }
    // the last prime below the cap is paired with its successor beyond it
    if let Some(p) = prev_last {
        let q = sieve.next_prime_after(p)?;
        if note_pair(p, q, &mut worst) >= 1.0 && violation.is_none() {
            violation = Some((p, q));
        }
    }
    let witness = |(p, q): (u64, u64)| {
        let l = (p as f64).ln();
        Witness {
            p_k: Some(p),
            ..Witness::at(p as f64, (q - p) as f64, l * l)
        }
    };
    let report = ClaimReport::new("max_gap", anchors::MAX_GAP, json!({"cap": cap}))
        .with_range(11.0, cap as f64);
    let report = match (violation, worst) {
        (Some(v), _) => report.passed(false).with_witness(witness(v)),
        (None, Some((_, p, q))) => report.passed(true).with_witness(witness((p, q))),
        (None, None) => report.passed(true),
    };
    Ok(report.elapsed_since(start))
}

/// The sandwich on `ψ(x) − θ(x)` for every real `x ∈ [lo, hi]`.
///
/// `ψ − θ` is a step function jumping at the prime powers `p^m`, `m >= 2`,
/// and both bounds increase with `x`; so the lower bound is tightest just
/// before each jump (and at `hi`) and the upper bound right at each jump (and
/// at `lo`). All those points are checked.
pub fn verify_psi_theta_sandwich(sieve: &Sieve, lo: f64, hi: f64) -> Result<ClaimReport> {
    use crate::explicit_bounds::psi_theta_bounds;
    let start = Instant::now();
    if !(121.0 <= lo && lo < hi) {
        return Err(Error::InvalidRange(format!(
            "need 121 <= lo < hi, got [{lo}, {hi}]"
        )));
    }
    let powers = higher_prime_powers(sieve, hi.floor() as u64);
    let split = powers.partition_point(|&(q, _)| (q as f64) <= lo);
    let mut value = powers[..split]
        .iter()
        .map(|&(_, p)| (p as f64).ln())
        .collect::<KahanSum>();
    let mut ext = Extremum::default();
    let check = |x: f64, v: f64, lower_side: bool, ext: &mut Extremum| -> Result<()> {
        let (b_lo, b_hi) = psi_theta_bounds(x)?;
        if lower_side {
            ext.offer(Witness::at(x, b_lo, v), b_lo > v);
        } else {
            ext.offer(Witness::at(x, v, b_hi), v > b_hi);
        }
        Ok(())
    };
    check(lo, value.value(), false, &mut ext)?;
    for &(q, p) in &powers[split..] {
        let before = (q as f64) * (1.0 - f64::EPSILON);
        check(before.max(lo), value.value(), true, &mut ext)?;
        value += (p as f64).ln();
        check(q as f64, value.value(), false, &mut ext)?;
    }
    check(hi, value.value(), true, &mut ext)?;
    let report = ClaimReport::new(
        "psi_theta_sandwich",
        anchors::PSI_THETA,
        json!({"lo": lo, "hi": hi}),
    )
    .with_range(lo, hi);
    Ok(ext.finish(report).elapsed_since(start))
}

/// Every consecutive pair with `p_{k+1}² <= limit` meeting the gap condition
/// has a prime in `(p_k², p_{k+1}²)`.
pub fn verify_corollary2(sieve: &Sieve, limit: u64) -> Result<ClaimReport> {
    let start = Instant::now();
    let root = isqrt(limit);
    if root < 3 {
        return Err(Error::Domain(format!("limit too small: {limit}")));
    }
    let primes = sieve.primes_in(2, root)?;
    let range = sieve.sieve(2, limit)?;
    let mut instances = 0u64;
    let mut ext = Extremum::default();
    for (i, w) in primes.windows(2).enumerate() {
        let (p, q) = (w[0], w[1]);
        if !corollary2_condition(p as f64, (q - p) as f64) {
            continue;
        }
        instances += 1;
        let found = range.next_prime_after(p * p).filter(|&r| r < q * q);
        let lhs = corollary2_threshold(p as f64);
        ext.offer(
            Witness::prime(i as u64 + 1, p, lhs, (q - p) as f64),
            found.is_none(),
        );
    }
    let report = ClaimReport::new("corollary2", anchors::COROLLARY2, json!({"limit": limit}))
        .with_range(2.0, limit as f64);
    Ok(ext
        .finish(report)
        .with_note(format!("{instances} gaps meet the condition"))
        .elapsed_since(start))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::report::Status;

    fn sieve() -> &'static Sieve {
        Sieve::shared()
    }

    #[test]
    fn gap_bound_first_pair() {
        let r = verify_gap_bound(sieve(), 1, GapConstant::Fixed(0.6102)).unwrap();
        assert!(r.pass);
        let w = r.witness.unwrap();
        assert_eq!((w.k, w.p_k, w.lhs), (Some(1), Some(2), 1.0));
        assert!((w.rhs - 2.0 * 0.6102 * 2f64.sqrt() * 2f64.ln()).abs() < 1e-12);
        assert!((w.rhs - 1.196).abs() < 1e-3);
    }

    #[test]
    fn gap_bound_fails_for_tiny_constant() {
        let r = verify_gap_bound(sieve(), 100, GapConstant::Fixed(0.05)).unwrap();
        assert_eq!(r.status, Status::Fail);
    }

    #[test]
    fn sqrt_count_first_index() {
        let r = verify_sqrt_count(sieve(), 1, 0.6102).unwrap();
        assert!(r.pass);
        let w = r.witness.unwrap();
        assert_eq!(w.lhs, 3.0);
        assert!((w.rhs - 3.157).abs() < 1e-3);
        let r = verify_sqrt_count(sieve(), 251, 0.0).unwrap();
        assert!(!r.pass);
    }

    #[test]
    fn legendre_small_n() {
        let r = verify_legendre_interval(sieve(), 2, 2).unwrap();
        assert!(r.pass);
        assert_eq!(r.witness.unwrap().p_k, Some(5));
        assert!(verify_legendre_interval(sieve(), 2, 2000).unwrap().pass);
        assert!(verify_legendre_containment(2, 2000).unwrap().pass);
        assert!(verify_legendre_interval(sieve(), 1, 5).is_err());
    }

    #[test]
    fn max_gap_small_cap_against_direct_scan() {
        let s = Sieve::new(crate::primes::sieve::SieveConfig {
            max: 1_000_000_000,
            segment_bits: 256,
        });
        let r = verify_max_gap(&s, 100_000).unwrap();
        assert!(r.pass);
        let primes = s.primes_in(2, 100_200).unwrap();
        let (mut best, mut at) = (0.0, 0);
        for w in primes.windows(2).filter(|w| w[0] >= 11 && w[0] <= 100_000) {
            let r = gap_ratio(w[0], w[1]);
            if r > best {
                best = r;
                at = w[0];
            }
        }
        assert_eq!(r.witness.unwrap().p_k, Some(at));
    }

    #[test]
    fn psi_theta_sandwich_small() {
        let r = verify_psi_theta_sandwich(sieve(), 121.0, 1e5).unwrap();
        assert!(r.pass, "{:?}", r.witness);
    }

    #[test]
    fn corollary2_small() {
        let r = verify_corollary2(sieve(), 1_000_000).unwrap();
        assert!(r.pass);
        assert!(r
            .note
            .unwrap()
            .starts_with(|c: char| c.is_ascii_digit() && c != '0'));
    }

    #[test]
    fn decade_counts_match_trial_division() {
        fn is_prime(n: u64) -> bool {
            n >= 2
                && (2..)
                    .take_while(|d| d * d <= n)
                    .all(|d| !n.is_multiple_of(d))
        }
        let mut lo = 2;
        for hi in [10, 100, 1_000, 10_000, 100_000, 1_000_000] {
            let got = sieve().sieve(lo, hi).unwrap().count();
            let want = (lo..=hi).filter(|&n| is_prime(n)).count();
            assert_eq!(got, want, "[{lo}, {hi}]");
            lo = hi + 1;
        }
    }
}

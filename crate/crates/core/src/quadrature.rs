//! Adaptive Gauss–Kronrod integration and the integrals built on it.

use std::cmp::Ordering;
use std::collections::BinaryHeap;
use std::f64::consts::PI;

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::sum::KahanSum;

/// Evaluation budget of [`integrate_adaptive`].
pub const MAX_EVALUATIONS: usize = 2_000_000;

/// Smallest tolerance accepted by [`f_integral`].
pub const MIN_TOL: f64 = 1e-10;

#[derive(Clone, Copy, Debug, PartialEq, Serialize, Deserialize)]
pub struct QuadResult {
    pub value: f64,
    pub err_estimate: f64,
    pub evaluations: usize,
}

// 15-point Kronrod abscissae on [-1, 1] (nonnegative half) with the weights of
// the embedded 7-point Gauss rule at the odd positions.
const XK: [f64; 8] = [
    0.991_455_371_120_812_6,
    0.949_107_912_342_758_5,
    0.864_864_423_359_769_1,
    0.741_531_185_599_394_5,
    0.586_087_235_467_691_1,
    0.405_845_151_377_397_2,
    0.207_784_955_007_898_48,
    0.000000000000000000000000000000000,
];
const WK: [f64; 8] = [
    0.022_935_322_010_529_224,
    0.063_092_092_629_978_56,
    0.104_790_010_322_250_19,
    0.140_653_259_715_525_92,
    0.169_004_726_639_267_9,
    0.190_350_578_064_785_42,
    0.204_432_940_075_298_89,
    0.209_482_141_084_727_82,
];
const WG: [f64; 4] = [
    0.129_484_966_168_869_7,
    0.279_705_391_489_276_64,
    0.381_830_050_505_118_9,
    0.417_959_183_673_469_4,
];

struct Panel {
    lo: f64,
    hi: f64,
    value: f64,
    err: f64,
}

impl PartialEq for Panel {
    fn eq(&self, other: &Self) -> bool {
        self.cmp(other) == Ordering::Equal
    }
}
impl Eq for Panel {}
impl PartialOrd for Panel {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        Some(self.cmp(other))
    }
}
impl Ord for Panel {
    // largest error first; ties broken by position so the refinement order is fixed
    fn cmp(&self, other: &Self) -> Ordering {
        self.err
            .total_cmp(&other.err)
            .then_with(|| other.lo.total_cmp(&self.lo))
    }
}

fn gauss_kronrod<F: Fn(f64) -> f64>(f: &F, lo: f64, hi: f64) -> Panel {
    let c = 0.5 * (lo + hi);
    let r = 0.5 * (hi - lo);
    let fc = f(c);
    let mut k = WK[7] * fc;
    let mut g = WG[3] * fc;
    for j in 0..7 {
        let dx = r * XK[j];
        let s = f(c - dx) + f(c + dx);
        k += WK[j] * s;
        if j % 2 == 1 {
            g += WG[j / 2] * s;
        }
    }
    Panel {
        lo,
        hi,
        value: k * r,
        err: ((k - g) * r).abs(),
    }
}

/// Adaptive G7–K15 quadrature of `f` over `[lo, hi]`.
///
/// The interval is first split at every point of `kinks` inside `(lo, hi)`;
/// the panel with the largest error estimate is then bisected until the summed
/// estimate is at most `tol` (absolute).
pub fn integrate_adaptive<F>(f: F, lo: f64, hi: f64, tol: f64, kinks: &[f64]) -> Result<QuadResult>
where
    F: Fn(f64) -> f64,
{
    if !(lo < hi) || !lo.is_finite() || !hi.is_finite() {
        return Err(Error::InvalidRange(format!(
            "integration bounds [{lo}, {hi}]"
        )));
    }
    if !(tol > 0.0) {
        return Err(Error::Domain(format!(
            "tolerance must be positive, got {tol}"
        )));
    }
    let mut cuts: Vec<f64> = kinks
        .iter()
        .copied()
        .filter(|&k| k > lo && k < hi)
        .collect();
    cuts.sort_by(f64::total_cmp);
    cuts.dedup();
    let mut edges = Vec::with_capacity(cuts.len() + 2);
    edges.push(lo);
    edges.extend(cuts);
    edges.push(hi);

    let mut heap = BinaryHeap::new();
    let mut evaluations = 0;
    let mut err_total = 0.0;
    let mut value_total = 0.0;
    for w in edges.windows(2) {
        let p = gauss_kronrod(&f, w[0], w[1]);
        evaluations += 15;
        err_total += p.err;
        value_total += p.value;
        heap.push(p);
    }
    let mut done = Vec::new();
    loop {
        let target = tol.max(50.0 * f64::EPSILON * value_total.abs());
        if err_total <= target {
            break;
        }
        let Some(worst) = heap.pop() else { break };
        let mid = 0.5 * (worst.lo + worst.hi);
        if !(mid > worst.lo && mid < worst.hi) {
            // cannot split further; keep its estimate
            done.push(worst);
            continue;
        }
        if evaluations + 30 > MAX_EVALUATIONS {
            heap.push(worst);
            return Err(Error::QuadBudget {
                budget: MAX_EVALUATIONS,
                err_estimate: err_total,
            });
        }
        let left = gauss_kronrod(&f, worst.lo, mid);
        let right = gauss_kronrod(&f, mid, worst.hi);
        evaluations += 30;
        err_total += left.err + right.err - worst.err;
        value_total += left.value + right.value - worst.value;
        heap.push(left);
        heap.push(right);
    }
    let mut panels: Vec<Panel> = heap.into_vec();
    panels.extend(done);
    panels.sort_by(|a, b| a.lo.total_cmp(&b.lo));
    let value = panels.iter().map(|p| p.value).collect::<KahanSum>().value();
    let err_estimate = panels.iter().map(|p| p.err).sum();
    Ok(QuadResult {
        value,
        err_estimate,
        evaluations,
    })
}

/// `sin x / x`, with `sinc 0 = 1`.
pub fn sinc(x: f64) -> f64 {
    if x.abs() < 1e-4 {
        let x2 = x * x;
        1.0 - x2 / 6.0 * (1.0 - x2 / 20.0)
    } else {
        x.sin() / x
    }
}

/// Length of `{u ∈ [0, y] : u − t ∈ [−y, y]}`.
fn overlap(t: f64, y: f64) -> f64 {
    ((t + y).min(y) - (t - y).max(0.0)).max(0.0)
}

/// `F(y) = (1/y) ∫_0^y ∫_{−y}^{y} |sinc(u − u')| du' du`, reduced to
/// `(1/y) ∫_{−y}^{2y} L(t) |sinc t| dt` with `L` the overlap length.
pub fn f_integral(y: f64, tol: f64) -> Result<QuadResult> {
    if !(y > 0.0) || !y.is_finite() {
        return Err(Error::Domain(format!("F(y) requires y > 0, got {y}")));
    }
    if !(tol >= MIN_TOL) {
        return Err(Error::Domain(format!(
            "F(y) requires tol >= {MIN_TOL:e}, got {tol}"
        )));
    }
    let mut kinks = vec![0.0, y];
    let k_lo = (-y / PI).ceil() as i64;
    let k_hi = (2.0 * y / PI).floor() as i64;
    kinks.extend((k_lo..=k_hi).map(|k| k as f64 * PI));
    let q = integrate_adaptive(
        |t| overlap(t, y) * sinc(t).abs(),
        -y,
        2.0 * y,
        tol * y,
        &kinks,
    )?;
    Ok(QuadResult {
        value: q.value / y,
        err_estimate: q.err_estimate / y,
        evaluations: q.evaluations,
    })
}

/// `∫_0^y sin²t/t² dt` together with its distance from `π/2 − 1/(2y)`.
#[derive(Clone, Copy, Debug, PartialEq, Serialize, Deserialize)]
pub struct Sin2Integral {
    pub value: f64,
    pub err_estimate: f64,
    /// `|value − (π/2 − 1/(2y))|`.
    pub residual: f64,
    /// `1/(2y²)`, the allowed size of the residual.
    pub bound: f64,
}

pub fn sin2_over_t2_integral(y: f64, tol: f64) -> Result<Sin2Integral> {
    if !(y > 0.0) || !y.is_finite() {
        return Err(Error::Domain(format!("requires y > 0, got {y}")));
    }
    let kinks: Vec<f64> = (1..=(y / PI) as i64).map(|k| k as f64 * PI).collect();
    let q = integrate_adaptive(|t| sinc(t).powi(2), 0.0, y, tol, &kinks)?;
    Ok(Sin2Integral {
        value: q.value,
        err_estimate: q.err_estimate,
        residual: (q.value - (PI / 2.0 - 0.5 / y)).abs(),
        bound: 0.5 / (y * y),
    })
}

/// Brute-force midpoint rule for the double integral defining `F`, with `n`
/// cells per axis. Slow; kept as an independent check of [`f_integral`].
pub fn f_integral_2d(y: f64, n: usize) -> f64 {
    let du = y / n as f64;
    let dv = 2.0 * y / n as f64;
    let mut total = KahanSum::new();
    for i in 0..n {
        let u = (i as f64 + 0.5) * du;
        let row: f64 = (0..n)
            .map(|j| sinc(u - (-y + (j as f64 + 0.5) * dv)).abs())
            .sum();
        total += row;
    }
    total.value() * du * dv / y
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn elementary_integrals() {
        let q = integrate_adaptive(|_| 1.0, 0.0, 1.0, 1e-12, &[]).unwrap();
        assert!((q.value - 1.0).abs() < 1e-15);
        let q = integrate_adaptive(|t| t, 0.0, 1.0, 1e-12, &[]).unwrap();
        assert!((q.value - 0.5).abs() <= f64::EPSILON);
        let q = integrate_adaptive(|t: f64| t.cos().abs(), 0.0, PI, 1e-12, &[PI / 2.0]).unwrap();
        assert!((q.value - 2.0).abs() < 1e-13);
        assert_eq!(q.evaluations, 30);
    }

    #[test]
    fn rejects_bad_input() {
        assert!(integrate_adaptive(|t| t, 1.0, 1.0, 1e-8, &[]).is_err());
        assert!(integrate_adaptive(|t| t, 0.0, 1.0, 0.0, &[]).is_err());
        assert!(f_integral(0.0, 1e-8).is_err());
        assert!(f_integral(1.0, 1e-12).is_err());
    }

    #[test]
    fn budget_exhaustion_reports_estimate() {
        // 1/sqrt(t) near 0 cannot reach this tolerance within the budget
        let e = integrate_adaptive(|t: f64| (1.0 / t).sin() / t.sqrt(), 1e-300, 1.0, 1e-15, &[])
            .unwrap_err();
        assert!(matches!(e, Error::QuadBudget { .. }));
    }

    #[test]
    fn error_estimate_is_honest() {
        type Case = (fn(f64) -> f64, f64, f64, f64);
        let cases: [Case; 4] = [
            (|t| t.exp(), 0.0, 3.0, 3f64.exp() - 1.0),
            (|t| 1.0 / (1.0 + t * t), -5.0, 5.0, 2.0 * 5f64.atan()),
            (|t| t.sqrt(), 0.0, 2.0, 2.0 / 3.0 * 2f64.powf(1.5)),
            (|t| (10.0 * t).sin(), 0.0, 7.0, (1.0 - (70f64).cos()) / 10.0),
        ];
        for (f, a, b, exact) in cases {
            for tol in [1e-4, 1e-8, 1e-12] {
                let q = integrate_adaptive(f, a, b, tol, &[]).unwrap();
                let err = (q.value - exact).abs();
                assert!(
                    err <= 10.0 * q.err_estimate.max(f64::EPSILON * exact.abs()),
                    "{err} vs {}",
                    q.err_estimate
                );
                assert!(err <= tol.max(1e-14));
            }
        }
    }

    #[test]
    fn kinks_save_evaluations() {
        let kinks: Vec<f64> = (1..10).map(|k| k as f64 * PI).collect();
        let f = |t: f64| sinc(t).abs();
        let with = integrate_adaptive(f, 0.0, 10.0 * PI, 1e-10, &kinks).unwrap();
        let without = integrate_adaptive(f, 0.0, 10.0 * PI, 1e-10, &[]).unwrap();
        assert!((with.value - without.value).abs() < 1e-10);
        assert!(with.evaluations < without.evaluations);
    }

    #[test]
    fn sinc_values() {
        assert_eq!(sinc(0.0), 1.0);
        assert!(sinc(PI).abs() < 1e-16);
        // series branch joins the direct formula smoothly
        for x in [9.9e-5, 1.01e-4, -5e-5] {
            assert!((sinc(x) - x.sin() / x).abs() < 4e-16);
        }
        // |sinc| <= 1, |sinc'| <= 1/2, |sinc''| <= 1/3 by finite differences
        let d = 1e-3;
        for i in 0..20000 {
            let x = -50.0 + i as f64 * 0.005;
            let d1 = (sinc(x + d) - sinc(x - d)) / (2.0 * d);
            let d2 = (sinc(x + d) - 2.0 * sinc(x) + sinc(x - d)) / (d * d);
            assert!(sinc(x).abs() <= 1.0);
            assert!(d1.abs() <= 0.5 + 1e-6, "x = {x}");
            assert!(d2.abs() <= 1.0 / 3.0 + 1e-5, "x = {x}");
        }
    }

    #[test]
    fn f_small_y_and_trivial_bound() {
        let y = 1e-3;
        let f = f_integral(y, 1e-10).unwrap().value;
        assert!((f - 2.0 * y).abs() < 1e-6 * y, "{f}");
        for y in [0.1, 0.5, 1.0, 2.0, 5.0, 10.0, 20.0] {
            let f = f_integral(y, 1e-10).unwrap().value;
            assert!(f <= 2.0 * y);
            if y >= 1.0 {
                assert!(f < 2.0 * y);
            }
        }
    }

    #[test]
    fn f_increasing() {
        let mut prev = 0.0;
        for i in 0..=199 {
            let y = 0.1 + i as f64 * 0.1;
            let f = f_integral(y, 1e-10).unwrap().value;
            assert!(f > prev, "y = {y}");
            prev = f;
        }
    }

    #[test]
    fn f_matches_double_integral() {
        for y in [0.5, 1.0, 2.4934] {
            let one = f_integral(y, 1e-10).unwrap();
            let two = f_integral_2d(y, 2000);
            assert!(
                (one.value - two).abs() < 1e-5,
                "y = {y}: {} vs {two}",
                one.value
            );
        }
    }

    #[test]
    fn sin2_identity() {
        let r = sin2_over_t2_integral(1.0, 1e-12).unwrap();
        assert!((r.value - 0.897_339_558_5).abs() < 1e-9);
        assert!((r.residual - 0.173_456_768).abs() < 1e-8);
        for y in [1.0, 2.0, 5.0, 10.0, 100.0] {
            let r = sin2_over_t2_integral(y, 1e-12).unwrap();
            assert!(r.residual <= r.bound, "y = {y}");
        }
        let r = sin2_over_t2_integral(1e4, 1e-12).unwrap();
        assert!((r.value - PI / 2.0).abs() < 1e-4);
    }
}

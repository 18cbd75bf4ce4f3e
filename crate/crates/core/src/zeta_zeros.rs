//! Tables of zeta-zero ordinates and the sums over zeros built from them.
//!
//! Ordinates are taken as exact and the zeros as lying on the critical line,
//! `ρ = 1/2 + iγ`. Sums over `|γ| <= T` are formed from the positive
//! ordinates, each pair `±γ` contributing twice the real part.

use std::f64::consts::{E, PI};
use std::path::Path;
use std::sync::OnceLock;

use num_complex::Complex64;
use rayon::prelude::*;
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::explicit_bounds::{trudgian_r, zero_count_main_term};
use crate::sum::KahanSum;

const TWO_PI: f64 = 2.0 * PI;

/// Default limit on `N(T)` for the quadratic pair sum.
pub const DEFAULT_PAIR_BUDGET: usize = 4000;

/// Largest `x` for which the phase `γ log x` is trusted in binary64.
pub const SIGMA1_MAX_X: f64 = 1e12;

const BUNDLED_10K: &str = include_str!("../data/zeros_10k.txt");
const FIXTURE_100: &str = include_str!("../data/zeros_100.txt");

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct ZeroTable {
    gammas: Vec<f64>,
    pub source: String,
    /// Fewest significant digits among the parsed entries.
    pub precision_digits: usize,
    pub warnings: Vec<String>,
}

fn significant_digits(token: &str) -> usize {
    let mantissa = token
        .trim_start_matches(['+', '-'])
        .split(['e', 'E'])
        .next()
        .unwrap_or("");
    let digits: String = mantissa.chars().filter(char::is_ascii_digit).collect();
    digits.trim_start_matches('0').len()
}

impl ZeroTable {
    /// Parse one ordinate per line; blank lines and `#` comments are ignored.
    pub fn parse(text: &str, source: impl Into<String>) -> Result<Self> {
        let mut gammas = Vec::new();
        let mut precision = usize::MAX;
        for (i, raw) in text.lines().enumerate() {
            let line = i + 1;
            let body = raw.split('#').next().unwrap_or("").trim();
            if body.is_empty() {
                continue;
            }
            let token = body.split_whitespace().next().unwrap_or(body);
            let value: f64 = token.parse().map_err(|_| Error::Parse {
                line,
                msg: format!("not a number: {token:?}"),
            })?;
            if !value.is_finite() {
                return Err(Error::Parse {
                    line,
                    msg: format!("not finite: {token:?}"),
                });
            }
            if value <= TWO_PI {
                return Err(Error::BelowTwoPi { line, value });
            }
            if let Some(&prev) = gammas.last() {
                if value <= prev {
                    return Err(Error::NotMonotone { line, value, prev });
                }
            }
            precision = precision.min(significant_digits(token));
            gammas.push(value);
        }
        if gammas.is_empty() {
            return Err(Error::EmptyTable);
        }
        let mut warnings = Vec::new();
        if precision < 6 {
            warnings.push(format!(
                "ordinates carry as few as {precision} significant digits; at least 6 expected"
            ));
        }
        Ok(Self {
            gammas,
            source: source.into(),
            precision_digits: precision,
            warnings,
        })
    }

    pub fn load(path: impl AsRef<Path>) -> Result<Self> {
        let path = path.as_ref();
        let text = std::fs::read_to_string(path).map_err(|source| Error::Io {
            path: path.to_path_buf(),
            source,
        })?;
        Self::parse(&text, path.display().to_string())
    }

    /// The first 10⁴ ordinates, shipped with the crate.
    pub fn bundled() -> &'static ZeroTable {
        static TABLE: OnceLock<ZeroTable> = OnceLock::new();
        TABLE.get_or_init(|| {
            Self::parse(BUNDLED_10K, "bundled:zeros_10k").expect("bundled zero table is valid")
        })
    }

    /// The first 100 ordinates; a small table for tests.
    pub fn fixture() -> &'static ZeroTable {
        static TABLE: OnceLock<ZeroTable> = OnceLock::new();
        TABLE.get_or_init(|| {
            Self::parse(FIXTURE_100, "bundled:zeros_100").expect("fixture zero table is valid")
        })
    }

    /// A table from in-memory ordinates, validated like a file.
    pub fn from_ordinates(gammas: &[f64], source: impl Into<String>) -> Result<Self> {
        let text: String = gammas.iter().map(|g| format!("{g:?}\n")).collect();
        Self::parse(&text, source)
    }

    pub fn gammas(&self) -> &[f64] {
        &self.gammas
    }

    pub fn len(&self) -> usize {
        self.gammas.len()
    }

    pub fn is_empty(&self) -> bool {
        self.gammas.is_empty()
    }

    /// Largest ordinate; heights up to here are fully covered.
    pub fn max_height(&self) -> f64 {
        *self.gammas.last().expect("tables are never empty")
    }

    fn covered(&self, t: f64) -> Result<()> {
        if t > 0.0 && t <= self.max_height() {
            Ok(())
        } else {
            Err(Error::OutsideTable {
                t,
                max: self.max_height(),
            })
        }
    }

    /// Ordinates `γ <= t`.
    pub fn up_to(&self, t: f64) -> &[f64] {
        let n = self.gammas.partition_point(|&g| g <= t);
        &self.gammas[..n]
    }

    /// `N(T)`, `W(T)` and `R'(T) = N(T) − W(T)` for `0 < T <= max_height`.
    pub fn count(&self, t: f64) -> Result<ZeroCounts> {
        self.covered(t)?;
        let n = self.up_to(t).len();
        let w = zero_count_main_term(t);
        Ok(ZeroCounts {
            t,
            n,
            w,
            rprime: n as f64 - w,
        })
    }

    /// `Σ 1/γ` and `Σ 1/γ²` over `γ <= T`, with the two reciprocal-sum bounds.
    pub fn partial_sums(&self, t: f64) -> Result<PartialSums> {
        self.covered(t)?;
        let zs = self.up_to(t);
        let sum_inv = zs.iter().map(|g| 1.0 / g).collect::<KahanSum>().value();
        let sum_inv_sq = zs
            .iter()
            .map(|g| 1.0 / (g * g))
            .collect::<KahanSum>()
            .value();
        let inv_bound = t.ln().powi(2) / (4.0 * PI);
        let t_max = self.max_height();
        let full_inv_sq = self
            .gammas
            .iter()
            .map(|g| 1.0 / (g * g))
            .collect::<KahanSum>()
            .value()
            + t_max.ln() / (PI * t_max);
        let inv_holds = sum_inv <= inv_bound;
        let inv_sq_holds = full_inv_sq <= 1.0 / 40.0;
        Ok(PartialSums {
            t,
            sum_inv,
            sum_inv_sq,
            inv_bound,
            full_inv_sq_upper: full_inv_sq,
            tail_inv_sq_bound_check: inv_holds && inv_sq_holds,
        })
    }

    /// `S_α(T) = Σ_{|γ|<=T} e^{iαγ} = 2 Σ_{0<γ<=T} cos(αγ)`.
    pub fn s_alpha(&self, alpha: f64, t: f64) -> Result<Complex64> {
        self.covered(t)?;
        Ok(Complex64::new(s_alpha_real(self.up_to(t), alpha), 0.0))
    }

    /// `Σ_{|γ|<=T} ((x+h)^{ρ+1} − 2x^{ρ+1} + (x−h)^{ρ+1}) / (ρ(ρ+1))`.
    pub fn sigma1_exact(&self, x: f64, h: f64, t: f64) -> Result<f64> {
        if !(h > 0.0 && h < x) {
            return Err(Error::Domain(format!("need 0 < h < x, got x={x}, h={h}")));
        }
        if x > SIGMA1_MAX_X {
            return Err(Error::Domain(format!(
                "x <= {SIGMA1_MAX_X:e} required, got {x}"
            )));
        }
        self.covered(t)?;
        let scale = x.powf(1.5);
        if !scale.is_finite() {
            return Err(Error::Overflow("x^(3/2)"));
        }
        let r = h / x;
        let (lp, lm, lx) = (r.ln_1p(), (-r).ln_1p(), x.ln());
        let sum = self
            .up_to(t)
            .iter()
            .map(|&g| {
                let rho = Complex64::new(0.5, g);
                let pow = |l: f64| Complex64::from_polar((1.5 * l).exp(), g * l);
                // second difference of (1 + s)^{ρ+1} at s = 0, step r
                let diff = pow(lp) - 2.0 + pow(lm);
                let lead = Complex64::from_polar(scale, g * lx);
                2.0 * (lead * diff / (rho * (rho + 1.0))).re
            })
            .collect::<KahanSum>();
        Ok(sum.value())
    }

    /// `∫_a^b |S_α(T)|² dα` by the exact pair sum, with `N(T) <= budget`.
    pub fn mean_square_s(&self, a: f64, b: f64, t: f64, budget: usize) -> Result<f64> {
        if !(a < b) {
            return Err(Error::InvalidRange(format!("need a < b, got [{a}, {b}]")));
        }
        self.covered(t)?;
        let zs = self.up_to(t);
        if zs.len() > budget {
            return Err(Error::PairBudget {
                zeros: zs.len(),
                budget,
            });
        }
        let half = (b - a) / 2.0;
        let mid = (a + b) / 2.0;
        let kernel = |d: f64| {
            if d.abs() < 1e-9 {
                let ad = half * d;
                half * (1.0 - ad * ad / 6.0)
            } else {
                (mid * d).cos() * (half * d).sin() / d
            }
        };
        let rows: Vec<f64> = zs
            .par_iter()
            .map(|&g| {
                let mut row = KahanSum::new();
                for &g2 in zs {
                    row += kernel(g - g2);
                    row += kernel(g + g2);
                }
                row.value()
            })
            .collect();
        Ok(4.0 * rows.into_iter().collect::<KahanSum>().value())
    }

    /// `|N(T) − W(T)| <= R(T)` at every zero (from both sides) and on a
    /// uniform grid of `grid` heights in `[e, max_height]`.
    pub fn trudgian_check(&self, grid: usize) -> Result<CountCheck> {
        let mut worst: Option<(f64, f64, f64)> = None;
        let mut checked = 0;
        let mut consider = |t: f64, n: usize| -> Result<()> {
            let dev = (n as f64 - zero_count_main_term(t)).abs();
            let r = trudgian_r(t)?;
            checked += 1;
            if worst.is_none_or(|(_, d, rr)| dev / r > d / rr) {
                worst = Some((t, dev, r));
            }
            Ok(())
        };
        for (i, &g) in self.gammas.iter().enumerate() {
            // just below γ_{i+1} the count is i, at γ_{i+1} it is i + 1
            let below = g * (1.0 - 1e-15);
            if below >= E {
                consider(below, i)?;
            }
            consider(g, i + 1)?;
        }
        let t_max = self.max_height();
        for j in 0..grid {
            let t = E + (t_max - E) * j as f64 / (grid.max(2) - 1) as f64;
            consider(t, self.up_to(t).len())?;
        }
        let (t, dev, r) = worst.expect("at least one height checked");
        Ok(CountCheck {
            checked,
            worst_t: t,
            lhs: dev,
            rhs: r,
            holds: dev <= r,
        })
    }

    /// `N(T) <= (T/2π) log T` on the same heights as [`Self::trudgian_check`].
    pub fn zero_count_upper_check(&self, grid: usize) -> CountCheck {
        let mut worst: Option<(f64, f64, f64)> = None;
        let mut checked = 0;
        let mut consider = |t: f64, n: usize| {
            let rhs = t / TWO_PI * t.ln();
            checked += 1;
            if worst.is_none_or(|(_, l, r)| n as f64 - rhs > l - r) {
                worst = Some((t, n as f64, rhs));
            }
        };
        for (i, &g) in self.gammas.iter().enumerate() {
            consider(g, i + 1);
        }
        let t_max = self.max_height();
        for j in 0..grid {
            let t = E + (t_max - E) * j as f64 / (grid.max(2) - 1) as f64;
            consider(t, self.up_to(t).len());
        }
        let (t, lhs, rhs) = worst.expect("at least one height checked");
        CountCheck {
            checked,
            worst_t: t,
            lhs,
            rhs,
            holds: lhs <= rhs,
        }
    }

    /// `Σ_{T<γ<=T_max} 1/γ² <= log T / (π T)`, the tail estimate behind the
    /// bound on the zeros above height `T`.
    pub fn inv_sq_tail_check(&self, t: f64) -> Result<(f64, f64)> {
        self.covered(t)?;
        let n = self.up_to(t).len();
        let tail = self.gammas[n..]
            .iter()
            .map(|g| 1.0 / (g * g))
            .collect::<KahanSum>()
            .value();
        Ok((tail, t.ln() / (PI * t)))
    }
}

/// `2 Σ cos(αγ)` over the given positive ordinates.
pub fn s_alpha_real(gammas: &[f64], alpha: f64) -> f64 {
    2.0 * gammas
        .iter()
        .map(|g| (alpha * g).cos())
        .collect::<KahanSum>()
        .value()
}

#[derive(Clone, Copy, Debug, PartialEq, Serialize, Deserialize)]
pub struct ZeroCounts {
    pub t: f64,
    pub n: usize,
    pub w: f64,
    pub rprime: f64,
}

#[derive(Clone, Copy, Debug, PartialEq, Serialize, Deserialize)]
pub struct PartialSums {
    pub t: f64,
    pub sum_inv: f64,
    pub sum_inv_sq: f64,
    /// `log² T / (4π)`.
    pub inv_bound: f64,
    /// `Σ 1/γ²` over the whole table plus `log T_max / (π T_max)`.
    pub full_inv_sq_upper: f64,
    /// Both `Σ 1/γ <= log² T/(4π)` and `Σ_{γ>0} 1/γ² <= 1/40` hold.
    pub tail_inv_sq_bound_check: bool,
}

/// Outcome of a check over many heights; `worst_t` is where `lhs/rhs` (or
/// `lhs − rhs`) is largest.
#[derive(Clone, Copy, Debug, PartialEq, Serialize, Deserialize)]
pub struct CountCheck {
    pub checked: usize,
    pub worst_t: f64,
    pub lhs: f64,
    pub rhs: f64,
    pub holds: bool,
}

use super::sieve::{isqrt, Sieve};
use crate::error::{Error, Result};
use crate::sum::KahanSum;

/// Triangular kernel `K(u; h) = max(h − |u|, 0)`.
pub fn kernel(u: f64, h: f64) -> f64 {
    (h - u.abs()).max(0.0)
}

/// Pairs `(n, Λ(n))` with `Λ(n) > 0` for integers `n` in the open interval
/// `(lo, hi)`, sorted by `n`.
pub fn von_mangoldt_window(sieve: &Sieve, lo: f64, hi: f64) -> Result<Vec<(u64, f64)>> {
    if !(lo < hi) {
        return Err(Error::InvalidRange(format!("empty window ({lo}, {hi})")));
    }
    let n_lo = if lo < 1.0 {
        2
    } else {
        (lo.floor() as u64 + 1).max(2)
    };
    let n_hi = hi.ceil() as u64;
    if n_hi < 1 || n_lo > n_hi - 1 {
        return Ok(Vec::new());
    }
    let n_hi = n_hi - 1;
    let mut out: Vec<(u64, f64)> = sieve
        .sieve(n_lo, n_hi.max(n_lo + 1))?
        .primes()
        .take_while(|&p| p <= n_hi)
        .map(|p| (p, (p as f64).ln()))
        .collect();
    let root = isqrt(n_hi);
    if root >= 2 {
        for p in sieve.sieve(2, root.max(3))?.primes().filter(|&p| p <= root) {
            let mut q = p * p;
            while q <= n_hi {
                if q >= n_lo {
                    out.push((q, (p as f64).ln()));
                }
                match q.checked_mul(p) {
                    Some(next) => q = next,
                    None => break,
                }
            }
        }
    }
    out.sort_unstable_by_key(|&(n, _)| n);
    Ok(out)
}

/// `Σ_n Λ(n) K(x − n; h)` over the prime powers of `(x − h, x + h)`.
pub fn kernel_sum_with(sieve: &Sieve, x: f64, h: f64) -> Result<f64> {
    if !(h > 0.0 && h < x) {
        return Err(Error::Domain(format!(
            "kernel_sum requires 0 < h < x, got x={x}, h={h}"
        )));
    }
    let terms = von_mangoldt_window(sieve, x - h, x + h)?;
    Ok(terms
        .into_iter()
        .map(|(n, l)| l * kernel(x - n as f64, h))
        .collect::<KahanSum>()
        .value())
}

pub fn kernel_sum(x: f64, h: f64) -> Result<f64> {
    kernel_sum_with(Sieve::shared(), x, h)
}

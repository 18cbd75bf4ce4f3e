use serde::{Deserialize, Serialize};

use super::sieve::{isqrt, Sieve};
use crate::sum::KahanSum;

/// von Mangoldt function: `ln p` when `n = p^m`, else 0.
pub fn lambda(n: u64) -> f64 {
    if n < 2 {
        return 0.0;
    }
    let p = smallest_prime_factor(n);
    let mut m = n;
    while m.is_multiple_of(p) {
        m /= p;
    }
    if m == 1 {
        (p as f64).ln()
    } else {
        0.0
    }
}

fn smallest_prime_factor(n: u64) -> u64 {
    if n.is_multiple_of(2) {
        return 2;
    }
    let mut d = 3;
    while d * d <= n {
        if n.is_multiple_of(d) {
            return d;
        }
        d += 2;
    }
    n
}

/// θ(x), ψ(x) and ψ⁽¹⁾(x) = Σ_{n≤x} Λ(n)(x − n), all in nats.
#[derive(Clone, Copy, Debug, PartialEq, Serialize, Deserialize)]
pub struct ChebyshevValue {
    pub x: f64,
    pub theta: f64,
    pub psi: f64,
    pub psi1: f64,
}

/// Prime powers `p^m` with `m >= 2` and `p^m <= limit`, sorted, paired with `p`.
pub fn higher_prime_powers(sieve: &Sieve, limit: u64) -> Vec<(u64, u64)> {
    let root = isqrt(limit);
    if root < 2 {
        return Vec::new();
    }
    let hi = root.max(3);
    let mut out = Vec::new();
    let primes = sieve
        .sieve(2, hi)
        .expect("square root of a sieve-capped limit is in range");
    for p in primes.primes().filter(|&p| p <= root) {
        let mut q = p * p;
        loop {
            out.push((q, p));
            match q.checked_mul(p) {
                Some(next) if next <= limit => q = next,
                _ => break,
            }
        }
    }
    out.sort_unstable();
    out
}

/// Exact Chebyshev sums at `x` using `sieve` for the primes up to `x`.
///
/// # Panics
/// If `x` exceeds the sieve's capacity.
pub fn chebyshev_with(sieve: &Sieve, x: f64) -> ChebyshevValue {
    assert!(x >= 0.0, "chebyshev requires x >= 0");
    let n = x.floor() as u64;
    let mut theta = KahanSum::new();
    let mut extra = KahanSum::new();
    let mut psi1 = KahanSum::new();
    if n >= 2 {
        let range = sieve
            .sieve(2, n.max(3))
            .expect("chebyshev argument exceeds sieve capacity");
        for p in range.primes().take_while(|&p| p <= n) {
            let lp = (p as f64).ln();
            theta += lp;
            psi1 += lp * (x - p as f64);
        }
        for (q, p) in higher_prime_powers(sieve, n) {
            let lp = (p as f64).ln();
            extra += lp;
            psi1 += lp * (x - q as f64);
        }
    }
    let theta = theta.value();
    ChebyshevValue {
        x,
        theta,
        psi: theta + extra.value(),
        psi1: psi1.value(),
    }
}

/// [`chebyshev_with`] on a default sieve.
pub fn chebyshev(x: f64) -> ChebyshevValue {
    chebyshev_with(Sieve::shared(), x)
}

//! Segmented, odd-only sieve of Eratosthenes.
//!
//! A [`SievedRange`] stores one bit per odd integer of `[lo, hi]`; the prime 2
//! is tracked separately. Large ranges are cut into segments of
//! `segment_bits` odd numbers. Segments are sieved independently (in parallel
//! via rayon) and merged in index order, so the result does not depend on
//! scheduling.

use std::sync::OnceLock;

use rayon::prelude::*;

use crate::error::{Error, Result};

/// Default upper limit accepted by [`Sieve::sieve`].
pub const DEFAULT_MAX: u64 = 1_000_000_000_000;

/// Default number of odd integers per segment (2 MiB of bits).
pub const DEFAULT_SEGMENT_BITS: usize = 1 << 24;

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct SieveConfig {
    pub max: u64,
    /// Odd integers per segment; rounded up to a multiple of 64.
    pub segment_bits: usize,
}

impl Default for SieveConfig {
    fn default() -> Self {
        Self {
            max: DEFAULT_MAX,
            segment_bits: DEFAULT_SEGMENT_BITS,
        }
    }
}

/// Exact primality over an integer interval `[lo, hi]`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct SievedRange {
    lo: u64,
    hi: u64,
    /// Smallest odd integer `>= lo`; bit `i` describes `odd_base + 2i`.
    odd_base: u64,
    odd_len: usize,
    bits: Vec<u64>,
}

impl SievedRange {
    pub fn lo(&self) -> u64 {
        self.lo
    }

    pub fn hi(&self) -> u64 {
        self.hi
    }

    fn contains_two(&self) -> bool {
        self.lo <= 2 && 2 <= self.hi
    }

    /// Primality of `n`.
    ///
    /// # Panics
    /// If `n` lies outside `[lo, hi]`.
    pub fn is_prime(&self, n: u64) -> bool {
        assert!(
            (self.lo..=self.hi).contains(&n),
            "{n} outside sieved range [{}, {}]",
            self.lo,
            self.hi
        );
        if n == 2 {
            return true;
        }
        if n.is_multiple_of(2) {
            return false;
        }
        let i = ((n - self.odd_base) / 2) as usize;
        self.bits[i / 64] >> (i % 64) & 1 == 1
    }

    /// Primes of the range in increasing order.
    pub fn primes(&self) -> Primes<'_> {
        Primes {
            range: self,
            emit_two: self.contains_two(),
            word: 0,
            current: self.bits.first().copied().unwrap_or(0),
        }
    }

    pub fn count(&self) -> usize {
        let odd: u32 = self.bits.iter().map(|w| w.count_ones()).sum();
        odd as usize + usize::from(self.contains_two())
    }

    pub fn first_prime(&self) -> Option<u64> {
        self.primes().next()
    }

    pub fn last_prime(&self) -> Option<u64> {
        if let Some((w, &word)) = self.bits.iter().enumerate().rev().find(|(_, w)| **w != 0) {
            let i = w * 64 + 63 - word.leading_zeros() as usize;
            return Some(self.odd_base + 2 * i as u64);
        }
        self.contains_two().then_some(2)
    }

    /// Smallest prime strictly greater than `n` inside the range.
    pub fn next_prime_after(&self, n: u64) -> Option<u64> {
        if n < 2 && self.contains_two() {
            return Some(2);
        }
        let start = n.saturating_add(1).max(self.odd_base);
        if start > self.hi {
            return None;
        }
        let start_odd = start | 1;
        if start_odd > self.hi {
            return None;
        }
        let mut i = ((start_odd - self.odd_base) / 2) as usize;
        while i < self.odd_len {
            let w = i / 64;
            let word = self.bits[w] >> (i % 64);
            if word != 0 {
                let j = i + word.trailing_zeros() as usize;
                return Some(self.odd_base + 2 * j as u64);
            }
            i = (w + 1) * 64;
        }
        None
    }
}

/// Iterator over the primes of a [`SievedRange`].
pub struct Primes<'a> {
    range: &'a SievedRange,
    emit_two: bool,
    word: usize,
    current: u64,
}

impl Iterator for Primes<'_> {
    type Item = u64;

    fn next(&mut self) -> Option<u64> {
        if self.emit_two {
            self.emit_two = false;
            return Some(2);
        }
        loop {
            if self.current != 0 {
                let tz = self.current.trailing_zeros() as usize;
                self.current &= self.current - 1;
                let i = self.word * 64 + tz;
                return Some(self.range.odd_base + 2 * i as u64);
            }
            self.word += 1;
            self.current = *self.range.bits.get(self.word)?;
        }
    }
}

/// Odd primes up to `limit` by a plain sieve; used as base primes.
fn odd_base_primes(limit: u64) -> Vec<u64> {
    if limit < 3 {
        return Vec::new();
    }
    let n = limit as usize;
    let mut composite = vec![false; n / 2 + 1];
    let mut out = Vec::new();
    let mut p = 3usize;
    while p <= n {
        if !composite[p / 2] {
            out.push(p as u64);
            let mut m = p * p;
            while m <= n {
                composite[m / 2] = true;
                m += 2 * p;
            }
        }
        p += 2;
    }
    out
}

/// Integer square root (floor).
pub fn isqrt(n: u64) -> u64 {
    if n < 2 {
        return n;
    }
    let mut r = (n as f64).sqrt() as u64;
    while r.checked_mul(r).is_none_or(|sq| sq > n) {
        r -= 1;
    }
    while (r + 1).checked_mul(r + 1).is_some_and(|sq| sq <= n) {
        r += 1;
    }
    r
}

fn sieve_odd_segment(odd_base: u64, odd_len: usize, base: &[u64]) -> Vec<u64> {
    let words = odd_len.div_ceil(64);
    let mut bits = vec![!0u64; words];
    if !odd_len.is_multiple_of(64) {
        bits[words - 1] = (1u64 << (odd_len % 64)) - 1;
    }
    if odd_len == 0 {
        return bits;
    }
    let last = odd_base + 2 * (odd_len as u64 - 1);
    if odd_base == 1 {
        bits[0] &= !1;
    }
    for &p in base {
        let sq = p * p;
        if sq > last {
            break;
        }
        let mut start = if sq >= odd_base {
            sq
        } else {
            odd_base.div_ceil(p) * p
        };
        if start % 2 == 0 {
            start += p;
        }
        let mut i = ((start - odd_base) / 2) as usize;
        let step = p as usize;
        while i < odd_len {
            bits[i / 64] &= !(1u64 << (i % 64));
            i += step;
        }
    }
    bits
}

/// Sieve engine holding its configuration and the base primes.
#[derive(Clone, Debug)]
pub struct Sieve {
    config: SieveConfig,
    base: Vec<u64>,
}

impl Default for Sieve {
    fn default() -> Self {
        Self::new(SieveConfig::default())
    }
}

impl Sieve {
    pub fn new(mut config: SieveConfig) -> Self {
        config.segment_bits = config.segment_bits.max(64).next_multiple_of(64);
        // one extra prime beyond sqrt(max) so every square check terminates
        let base = odd_base_primes(isqrt(config.max) + 1);
        Self { config, base }
    }

    /// Process-wide engine with the default configuration.
    pub fn shared() -> &'static Sieve {
        static SHARED: OnceLock<Sieve> = OnceLock::new();
        SHARED.get_or_init(Sieve::default)
    }

    /// Engine capped at `max`.
    pub fn with_max(max: u64) -> Self {
        Self::new(SieveConfig {
            max,
            ..SieveConfig::default()
        })
    }

    pub fn config(&self) -> &SieveConfig {
        &self.config
    }

    pub fn max(&self) -> u64 {
        self.config.max
    }

    fn check(&self, lo: u64, hi: u64) -> Result<()> {
        if lo < 2 || lo >= hi {
            return Err(Error::InvalidRange(format!(
                "sieve requires 2 <= lo < hi, got [{lo}, {hi}]"
            )));
        }
        if hi > self.config.max {
            return Err(Error::Capacity {
                lo,
                hi,
                max: self.config.max,
            });
        }
        Ok(())
    }

    /// Segment boundaries covering `[lo, hi]`: consecutive, disjoint, and
    /// each holding `segment_bits` odd integers (the last one possibly fewer).
    pub fn segments(&self, lo: u64, hi: u64) -> Result<Vec<(u64, u64)>> {
        self.check(lo, hi)?;
        let span = 2 * self.config.segment_bits as u64;
        let mut out = Vec::new();
        let mut start = lo;
        loop {
            let end = start.saturating_add(span - 1).min(hi);
            out.push((start, end));
            if end == hi {
                break;
            }
            start = end + 1;
        }
        Ok(out)
    }

    /// Sieve a single window without segmentation or capacity checks beyond
    /// the base-prime limit.
    fn sieve_window(&self, lo: u64, hi: u64) -> SievedRange {
        let odd_base = lo | 1;
        let odd_len = if odd_base > hi {
            0
        } else {
            ((hi - odd_base) / 2 + 1) as usize
        };
        let bits = sieve_odd_segment(odd_base, odd_len, &self.base);
        SievedRange {
            lo,
            hi,
            odd_base,
            odd_len,
            bits,
        }
    }

    /// Exact primality over `[lo, hi]`.
    pub fn sieve(&self, lo: u64, hi: u64) -> Result<SievedRange> {
        let segs = self.segments(lo, hi)?;
        if segs.len() == 1 {
            return Ok(self.sieve_window(lo, hi));
        }
        let parts: Vec<SievedRange> = segs
            .par_iter()
            .map(|&(a, b)| self.sieve_window(a, b))
            .collect();
        let odd_base = lo | 1;
        let odd_len: usize = parts.iter().map(|p| p.odd_len).sum();
        let mut bits = Vec::with_capacity(odd_len.div_ceil(64));
        for p in &parts {
            // every segment except the last holds a multiple of 64 odd numbers
            bits.extend_from_slice(&p.bits);
        }
        Ok(SievedRange {
            lo,
            hi,
            odd_base,
            odd_len,
            bits,
        })
    }

    /// Apply `f` to every segment of `[lo, hi]` in parallel; results are
    /// returned in segment order.
    pub fn map_segments<T, F>(&self, lo: u64, hi: u64, f: F) -> Result<Vec<T>>
    where
        T: Send,
        F: Fn(&SievedRange) -> T + Sync,
    {
        let segs = self.segments(lo, hi)?;
        Ok(segs
            .par_iter()
            .map(|&(a, b)| f(&self.sieve_window(a, b)))
            .collect())
    }

    /// All primes in `[lo, hi]`.
    pub fn primes_in(&self, lo: u64, hi: u64) -> Result<Vec<u64>> {
        Ok(self.sieve(lo, hi)?.primes().collect())
    }

    /// Smallest prime strictly greater than `n`.
    pub fn next_prime_after(&self, n: u64) -> Result<u64> {
        let mut lo = n.saturating_add(1).max(2);
        let ln = (n.max(16) as f64).ln();
        let mut width = ((ln * ln) as u64).max(256);
        loop {
            let hi = lo.saturating_add(width);
            if hi > self.config.max {
                return Err(Error::Capacity {
                    lo,
                    hi,
                    max: self.config.max,
                });
            }
            if let Some(p) = self.sieve_window(lo, hi).next_prime_after(n) {
                return Ok(p);
            }
            lo = hi + 1;
            width *= 2;
        }
    }

    /// Whether some prime lies in the open real interval `(a, b)`; returns
    /// the smallest one.
    pub fn prime_in_open_interval(&self, a: f64, b: f64) -> Result<Option<u64>> {
        if !(a < b) || b <= 2.0 {
            return Ok(None);
        }
        let start = if a < 0.0 { 0 } else { a.floor() as u64 };
        let p = self.next_prime_after(start)?;
        Ok(((p as f64) > a && (p as f64) < b).then_some(p))
    }

    /// The first `count` primes.
    pub fn first_primes(&self, count: usize) -> Result<Vec<u64>> {
        if count == 0 {
            return Ok(Vec::new());
        }
        // p_n < n (ln n + ln ln n) for n >= 6
        let n = count.max(6) as f64;
        let mut hi = (n * (n.ln() + n.ln().ln())).ceil() as u64 + 16;
        loop {
            let hi_capped = hi.min(self.config.max);
            let mut primes: Vec<u64> = self.sieve(2, hi_capped)?.primes().collect();
            if primes.len() >= count {
                primes.truncate(count);
                return Ok(primes);
            }
            if hi_capped == self.config.max {
                return Err(Error::Capacity {
                    lo: 2,
                    hi: hi.saturating_mul(2),
                    max: self.config.max,
                });
            }
            hi = hi.saturating_mul(2);
        }
    }
}

//! Compensated summation.

use std::iter::Sum;
use std::ops::AddAssign;

/// Kahan-Babuška (Neumaier) accumulator.
#[derive(Clone, Copy, Debug, Default, PartialEq)]
pub struct KahanSum {
    sum: f64,
    comp: f64,
}

impl KahanSum {
    pub fn new() -> Self {
        Self::default()
    }

    pub fn add(&mut self, x: f64) {
        let t = self.sum + x;
        if self.sum.abs() >= x.abs() {
            self.comp += (self.sum - t) + x;
        } else {
            self.comp += (x - t) + self.sum;
        }
        self.sum = t;
    }

    pub fn value(&self) -> f64 {
        self.sum + self.comp
    }
}

impl AddAssign<f64> for KahanSum {
    fn add_assign(&mut self, rhs: f64) {
        self.add(rhs);
    }
}

impl AddAssign<KahanSum> for KahanSum {
    fn add_assign(&mut self, rhs: KahanSum) {
        self.add(rhs.sum);
        self.add(rhs.comp);
    }
}

impl Sum<f64> for KahanSum {
    fn sum<I: Iterator<Item = f64>>(iter: I) -> Self {
        let mut acc = KahanSum::new();
        for x in iter {
            acc.add(x);
        }
        acc
    }
}

impl FromIterator<f64> for KahanSum {
    fn from_iter<I: IntoIterator<Item = f64>>(iter: I) -> Self {
        iter.into_iter().sum()
    }
}

/// Compensated sum of an iterator of `f64`.
pub fn kahan_sum<I: IntoIterator<Item = f64>>(iter: I) -> f64 {
    iter.into_iter().collect::<KahanSum>().value()
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn recovers_small_terms_lost_by_naive_sum() {
        let xs = [1.0, 1e100, 1.0, -1e100];
        let naive: f64 = xs.iter().sum();
        assert_eq!(naive, 0.0);
        assert_eq!(kahan_sum(xs), 2.0);
    }

    #[test]
    fn many_tenths() {
        let s = kahan_sum(std::iter::repeat_n(0.1, 1_000_000));
        assert!((s - 100_000.0).abs() < 1e-9);
    }

    #[test]
    fn merge_accumulators() {
        let mut a: KahanSum = (0..1000).map(|i| i as f64 * 0.001).collect();
        let b: KahanSum = (1000..2000).map(|i| i as f64 * 0.001).collect();
        a += b;
        let direct = kahan_sum((0..2000).map(|i| i as f64 * 0.001));
        assert!((a.value() - direct).abs() < 1e-12);
    }
}

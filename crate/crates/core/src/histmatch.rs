//! Monotone 1-D histogram matching.

use alloc::vec;
use alloc::vec::Vec;

use crate::{Error, Result};

/// Number of uniform bins spanning the joint range of source and reference.
pub const MATCH_BINS: usize = 256;

struct Histogram {
    lo: f64,
    width: f64,
    counts: Vec<usize>,
    // Fraction of samples in bins strictly before `k`.
    before: Vec<f64>,
    total: f64,
}

impl Histogram {
    fn new(samples: &[f64], lo: f64, width: f64) -> Self {
        let mut counts = vec![0usize; MATCH_BINS];
        for &v in samples {
            counts[bin_of(v, lo, width)] += 1;
        }
        let total = samples.len() as f64;
        let mut before = Vec::with_capacity(MATCH_BINS);
        let mut acc = 0usize;
        for &c in &counts {
            before.push(acc as f64 / total);
            acc += c;
        }
        Self {
            lo,
            width,
            counts,
            before,
            total,
        }
    }

    fn mass(&self, k: usize) -> f64 {
        self.counts[k] as f64 / self.total
    }

    /// Inverse of the piecewise-linear CDF that spreads each bin's mass
    /// uniformly across the bin, restricted to occupied bins.
    fn quantile(&self, p: f64) -> f64 {
        let p = p.clamp(0.0, 1.0);
        let k = (0..MATCH_BINS)
            .find(|&k| self.counts[k] > 0 && self.before[k] + self.mass(k) >= p)
            .unwrap_or_else(|| {
                // Rounding can leave p just above the final cumulative sum.
                (0..MATCH_BINS).rev().find(|&k| self.counts[k] > 0).unwrap_or(0)
            });
        let t = ((p - self.before[k]) / self.mass(k)).clamp(0.0, 1.0);
        self.lo + (k as f64 + t) * self.width
    }
}

fn bin_of(v: f64, lo: f64, width: f64) -> usize {
    let k = libm::floor((v - lo) / width);
    if k <= 0.0 {
        0
    } else {
        (k as usize).min(MATCH_BINS - 1)
    }
}

/// Mid-rank empirical CDF of every sample; tied samples share a value.
fn empirical_cdf(values: &[f64]) -> Vec<f64> {
    let n = values.len();
    let mut order: Vec<usize> = (0..n).collect();
    order.sort_by(|&a, &b| values[a].total_cmp(&values[b]));
    let mut p = vec![0.0; n];
    let mut start = 0;
    while start < n {
        let mut end = start + 1;
        while end < n && values[order[end]] == values[order[start]] {
            end += 1;
        }
        let mid = 0.5 * (start + end) as f64 / n as f64;
        for &i in &order[start..end] {
            p[i] = mid;
        }
        start = end;
    }
    p
}

/// Remaps `values` so their distribution follows `reference`, preserving the
/// rank order of `values`.
///
/// Source samples are ranked exactly; the reference is summarised by
/// [`MATCH_BINS`] uniform bins over the joint range and inverted with linear
/// interpolation inside each bin.
pub fn histogram_match_1d(values: &[f64], reference: &[f64]) -> Result<Vec<f64>> {
    if values.is_empty() || reference.is_empty() {
        return Err(Error::Empty);
    }
    let (lo, hi) = values
        .iter()
        .chain(reference)
        .fold((f64::INFINITY, f64::NEG_INFINITY), |(lo, hi), &v| {
            (lo.min(v), hi.max(v))
        });
    if hi <= lo {
        return Ok(values.to_vec());
    }
    let width = (hi - lo) / MATCH_BINS as f64;
    let dst = Histogram::new(reference, lo, width);
    Ok(empirical_cdf(values).into_iter().map(|p| dst.quantile(p)).collect())
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn empty_inputs_error() {
        assert_eq!(histogram_match_1d(&[], &[1.0]), Err(Error::Empty));
        assert_eq!(histogram_match_1d(&[1.0], &[]), Err(Error::Empty));
    }

    #[test]
    fn self_match_is_identity_within_a_bin() {
        let v: Vec<f64> = (0..500).map(|i| libm::sin(i as f64 * 0.37) * (i % 7) as f64).collect();
        let (lo, hi) = v.iter().fold((f64::MAX, f64::MIN), |(a, b), &x| (a.min(x), b.max(x)));
        let bin = (hi - lo) / MATCH_BINS as f64;
        let out = histogram_match_1d(&v, &v).unwrap();
        for (a, b) in v.iter().zip(&out) {
            assert!((a - b).abs() <= bin, "{a} -> {b}");
        }
    }

    #[test]
    fn uniform_to_double_width_uniform() {
        let n = 1001;
        let v: Vec<f64> = (0..n).map(|i| i as f64 / (n - 1) as f64).collect();
        let r: Vec<f64> = v.iter().map(|x| 2.0 * x).collect();
        let bin = 2.0 / MATCH_BINS as f64;
        let out = histogram_match_1d(&v, &r).unwrap();
        for (x, y) in v.iter().zip(&out) {
            assert!((2.0 * x - y).abs() <= bin, "{x} -> {y}");
        }
    }

    #[test]
    fn constant_inputs_pass_through() {
        assert_eq!(histogram_match_1d(&[3.0, 3.0], &[3.0]).unwrap(), vec![3.0, 3.0]);
    }
}

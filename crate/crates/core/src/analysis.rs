//! Luminance gradient statistics and KL divergences between them.

use alloc::vec;
use alloc::vec::Vec;

use crate::color::rgb_to_lab;
use crate::field::GradientField;
use crate::gradient::forward_gradient;
use crate::image::{ColorSpace, RasterImage};
use crate::{Error, Result};

/// Additive smoothing applied to every bin count before normalising.
pub const SMOOTHING: f64 = 1e-8;

pub const DEFAULT_BINS: usize = 101;

/// Histogram of signed luminance gradients over uniform bins on `[-R, R]`.
#[derive(Debug, Clone, PartialEq)]
pub struct GradientHistogram {
    bin_edges: Vec<f64>,
    counts: Vec<u64>,
    probabilities: Vec<f64>,
}

impl GradientHistogram {
    fn from_samples(samples: impl Iterator<Item = f64>, bins: usize, range: f64) -> Self {
        let mut counts = vec![0u64; bins];
        let scale = bins as f64 / (2.0 * range);
        for v in samples {
            let k = libm::floor((v + range) * scale);
            let k = if k <= 0.0 { 0 } else { (k as usize).min(bins - 1) };
            counts[k] += 1;
        }
        let total = counts.iter().sum::<u64>() as f64 + SMOOTHING * bins as f64;
        let probabilities = counts.iter().map(|&c| (c as f64 + SMOOTHING) / total).collect();
        let bin_edges = (0..=bins)
            .map(|k| -range + 2.0 * range * k as f64 / bins as f64)
            .collect();
        Self {
            bin_edges,
            counts,
            probabilities,
        }
    }

    pub fn bin_edges(&self) -> &[f64] {
        &self.bin_edges
    }

    pub fn counts(&self) -> &[u64] {
        &self.counts
    }

    pub fn probabilities(&self) -> &[f64] {
        &self.probabilities
    }

    pub fn bins(&self) -> usize {
        self.counts.len()
    }

    /// Half-width `R` of the binned interval.
    pub fn range(&self) -> f64 {
        self.bin_edges[self.bins()]
    }

    pub fn total_count(&self) -> u64 {
        self.counts.iter().sum()
    }

    /// Index of the bin containing zero.
    pub fn center_bin(&self) -> usize {
        self.bins() / 2
    }

    pub fn bin_centers(&self) -> impl Iterator<Item = f64> + '_ {
        self.bin_edges.windows(2).map(|e| 0.5 * (e[0] + e[1]))
    }

    /// Index of the most probable bin (first on ties).
    pub fn mode(&self) -> usize {
        let mut best = 0;
        for (k, &c) in self.counts.iter().enumerate() {
            if c > self.counts[best] {
                best = k;
            }
        }
        best
    }
}

/// Forward gradients of the luminance of `image`: the L channel for sRGB or
/// Lab input, the only channel for single-channel input.
pub fn luminance_gradient(image: &RasterImage) -> Result<GradientField> {
    let l = match (image.color_space(), image.channels()) {
        (ColorSpace::Srgb, 3) => rgb_to_lab(image)?.channel(0)?,
        (ColorSpace::Lab, 3) | (_, 1) => image.channel(0)?,
        (_, n) => return Err(Error::UnsupportedChannels(n)),
    };
    Ok(forward_gradient(&l))
}

fn max_abs(g: &GradientField) -> f64 {
    g.interior_samples().map(libm::fabs).fold(0.0, f64::max)
}

fn check_bins(bins: usize) -> Result<()> {
    if bins < 3 || bins % 2 == 0 {
        return Err(Error::InvalidBins(bins));
    }
    Ok(())
}

fn histogram_of(g: &GradientField, bins: usize, range: f64) -> GradientHistogram {
    let range = if range > 0.0 { range } else { 1.0 };
    GradientHistogram::from_samples(g.interior_samples(), bins, range)
}

/// Histogram of pooled interior `gx` and `gy` luminance gradients.
///
/// `range` fixes `R`; `None` uses the image's own largest absolute gradient.
/// A zero range (constant image) falls back to `R = 1`.
pub fn gradient_histogram(image: &RasterImage, bins: usize, range: Option<f64>) -> Result<GradientHistogram> {
    check_bins(bins)?;
    let g = luminance_gradient(image)?;
    let range = range.unwrap_or_else(|| max_abs(&g));
    if !range.is_finite() || range < 0.0 {
        return Err(Error::InvalidOption("histogram range must be finite and non-negative"));
    }
    Ok(histogram_of(&g, bins, range))
}

/// `sum_i p_i ln(p_i / q_i)` over the smoothed probabilities.
pub fn kl_divergence(p: &GradientHistogram, q: &GradientHistogram) -> Result<f64> {
    if p.bin_edges != q.bin_edges {
        return Err(Error::BinningMismatch);
    }
    Ok(p.probabilities
        .iter()
        .zip(&q.probabilities)
        .map(|(&a, &b)| a * libm::log(a / b))
        .sum())
}

/// Three histograms over one shared binning plus their divergences from the
/// content histogram.
#[derive(Debug, Clone, PartialEq)]
pub struct AnalysisReport {
    pub content: GradientHistogram,
    pub stylized: GradientHistogram,
    pub output: GradientHistogram,
    /// `D(stylized || content)`.
    pub kl_stylized_vs_content: f64,
    /// `D(output || content)`.
    pub kl_output_vs_content: f64,
}

pub fn analysis_report(
    content: &RasterImage,
    stylized: &RasterImage,
    output: &RasterImage,
    bins: usize,
) -> Result<AnalysisReport> {
    check_bins(bins)?;
    content.ensure_same_dims(stylized)?;
    content.ensure_same_dims(output)?;
    let gc = luminance_gradient(content)?;
    let gs = luminance_gradient(stylized)?;
    let go = luminance_gradient(output)?;
    let range = max_abs(&gc).max(max_abs(&gs)).max(max_abs(&go));

    let content = histogram_of(&gc, bins, range);
    let stylized = histogram_of(&gs, bins, range);
    let output = histogram_of(&go, bins, range);
    let kl_stylized_vs_content = kl_divergence(&stylized, &content)?;
    let kl_output_vs_content = kl_divergence(&output, &content)?;
    Ok(AnalysisReport {
        content,
        stylized,
        output,
        kl_stylized_vs_content,
        kl_output_vs_content,
    })
}

#[cfg(test)]
mod tests {
    use super::*;

    fn scalar(h: usize, w: usize, f: impl Fn(usize, usize) -> f64) -> RasterImage {
        let data = (0..h * w).map(|k| f(k / w, k % w)).collect();
        RasterImage::new(h, w, 1, data, ColorSpace::Scalar).unwrap()
    }

    fn two_bin(p: [f64; 2]) -> GradientHistogram {
        GradientHistogram {
            bin_edges: vec![-1.0, 0.0, 1.0],
            counts: vec![0, 0],
            probabilities: p.to_vec(),
        }
    }

    #[test]
    fn closed_form_two_bin_kl() {
        let d = kl_divergence(&two_bin([0.5, 0.5]), &two_bin([0.25, 0.75])).unwrap();
        let expected = 0.5 * libm::log(2.0) + 0.5 * libm::log(2.0 / 3.0);
        assert!((d - expected).abs() < 1e-15);
        assert!((d - 0.1438).abs() < 1e-4);
    }

    #[test]
    fn self_divergence_is_zero() {
        let img = scalar(6, 7, |i, j| ((i * 7 + j * 3) % 5) as f64);
        let h = gradient_histogram(&img, 11, None).unwrap();
        assert_eq!(kl_divergence(&h, &h).unwrap(), 0.0);
    }

    #[test]
    fn constant_image_puts_mass_in_center() {
        let h = gradient_histogram(&scalar(4, 5, |_, _| 2.0), 9, None).unwrap();
        assert_eq!(h.counts()[4], h.total_count());
        assert!(h.probabilities()[4] > 1.0 - 1e-6);
    }

    #[test]
    fn ramp_splits_between_unit_and_center_bins() {
        let (h, w) = (5, 6);
        let hist = gradient_histogram(&scalar(h, w, |_, j| j as f64), 5, Some(2.5)).unwrap();
        // Bins of width 1 centred on -2..=2; gx samples are 1, gy samples 0.
        assert_eq!(hist.counts(), &[0, 0, ((h - 1) * w) as u64, (h * (w - 1)) as u64, 0]);
    }

    #[test]
    fn mismatched_binning_is_rejected() {
        let img = scalar(3, 3, |i, j| (i + j) as f64);
        let a = gradient_histogram(&img, 5, None).unwrap();
        let b = gradient_histogram(&img, 7, None).unwrap();
        assert_eq!(kl_divergence(&a, &b), Err(Error::BinningMismatch));
    }

    #[test]
    fn even_or_tiny_bin_counts_are_rejected() {
        let img = scalar(3, 3, |_, _| 0.0);
        assert_eq!(gradient_histogram(&img, 4, None), Err(Error::InvalidBins(4)));
        assert_eq!(gradient_histogram(&img, 1, None), Err(Error::InvalidBins(1)));
    }
}

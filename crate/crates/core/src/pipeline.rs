//! Whole-image photorealism pass: Lab conversion, per-channel screened
//! Poisson solves, and conversion back to sRGB.

use alloc::vec::Vec;

use crate::color::{lab_to_rgb, rgb_to_lab};
use crate::dct::TransformPlanner;
use crate::field::GradientField;
use crate::gradient::{build_target_gradient, forward_gradient, GradientTermVariant};
use crate::image::{ColorSpace, RasterImage};
use crate::solver::{objective, ScreenedPoisson, SolveReport, SolverConfig};
use crate::Result;

/// Image-level choice of gradient term. See [`GradientTermVariant`] for the
/// per-channel construction.
#[derive(Debug, Clone, Default, PartialEq)]
pub enum GradientTerm {
    #[default]
    Original,
    Absolute,
    Squared,
    /// Histogram matching against the gradients of a style image (sRGB,
    /// any size of at least 2x2).
    HistogramMatched {
        style: RasterImage,
    },
}

impl GradientTerm {
    pub fn name(&self) -> &'static str {
        match self {
            GradientTerm::Original => "original",
            GradientTerm::Absolute => "abs",
            GradientTerm::Squared => "square",
            GradientTerm::HistogramMatched { .. } => "histmatch",
        }
    }
}

#[derive(Debug, Clone, PartialEq)]
pub struct Photorealized {
    /// Output in sRGB, clamped to `[0, 1]`.
    pub image: RasterImage,
    /// Unclamped Lab solution.
    pub lab: RasterImage,
    /// One report per Lab channel, in L, a, b order.
    pub reports: [SolveReport; 3],
}

fn check_rgb(image: &RasterImage) -> Result<()> {
    image.ensure_channels(3)?;
    image.ensure_color_space(ColorSpace::Srgb)
}

/// Runs the screened Poisson pass on every Lab channel of `stylized`,
/// pulling gradients toward those of `content`.
pub fn apply_photorealism<P: TransformPlanner>(
    solver: &mut ScreenedPoisson<P>,
    content: &RasterImage,
    stylized: &RasterImage,
    config: &SolverConfig,
) -> Result<Photorealized> {
    config.validate()?;
    check_rgb(content)?;
    check_rgb(stylized)?;
    content.ensure_same_dims(stylized)?;

    let content_lab = rgb_to_lab(content)?.split();
    let stylized_lab = rgb_to_lab(stylized)?.split();
    let style_grads: Option<Vec<GradientField>> = match &config.variant {
        GradientTerm::HistogramMatched { style } => {
            check_rgb(style)?;
            Some(rgb_to_lab(style)?.split().iter().map(forward_gradient).collect())
        }
        _ => None,
    };

    let mut channels = Vec::with_capacity(3);
    let mut reports = Vec::with_capacity(3);
    for c in 0..3 {
        let grad_content = forward_gradient(&content_lab[c]);
        let grad_stylized = forward_gradient(&stylized_lab[c]);
        let variant = match (&config.variant, &style_grads) {
            (GradientTerm::Original, _) => GradientTermVariant::Original,
            (GradientTerm::Absolute, _) => GradientTermVariant::Absolute,
            (GradientTerm::Squared, _) => GradientTermVariant::Squared,
            (GradientTerm::HistogramMatched { .. }, Some(g)) => {
                GradientTermVariant::HistogramMatched { reference: &g[c] }
            }
            (GradientTerm::HistogramMatched { .. }, None) => unreachable!(),
        };
        let target = build_target_gradient(variant, &grad_content, &grad_stylized)?;
        let (solution, report) =
            solver.solve(&stylized_lab[c], &target, config.lambda_for_channel(c), config.backend)?;
        channels.push(solution);
        reports.push(report);
    }

    let lab = RasterImage::from_channels(&channels, ColorSpace::Lab)?;
    let image = lab_to_rgb(&lab)?;
    Ok(Photorealized {
        image,
        lab,
        reports: [reports[0], reports[1], reports[2]],
    })
}

/// Sum over Lab channels of `||O - C_S||^2 + lambda_c * ||grad O - grad C||^2`
/// for a Lab-space output `output_lab`.
pub fn photorealism_objective(
    content: &RasterImage,
    stylized: &RasterImage,
    output_lab: &RasterImage,
    config: &SolverConfig,
) -> Result<f64> {
    check_rgb(content)?;
    check_rgb(stylized)?;
    output_lab.ensure_color_space(ColorSpace::Lab)?;
    content.ensure_same_dims(stylized)?;
    content.ensure_same_dims(output_lab)?;
    let c = rgb_to_lab(content)?.split();
    let s = rgb_to_lab(stylized)?.split();
    let o = output_lab.split();
    Ok((0..3)
        .map(|k| objective(&o[k], &s[k], &forward_gradient(&c[k]), config.lambda_for_channel(k)))
        .sum())
}

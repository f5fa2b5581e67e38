//! Discrete differential operators with Neumann boundaries.
//!
//! [`forward_gradient`] and [`divergence`] are exact negative adjoints, so
//! [`laplacian`] is symmetric negative semidefinite and is diagonalised by
//! the DCT-II.

use alloc::vec;
use alloc::vec::Vec;

use crate::field::{ChannelField, GradientField};
use crate::histmatch::histogram_match_1d;
use crate::Result;

pub fn forward_gradient(f: &ChannelField) -> GradientField {
    let (h, w) = f.dims();
    let d = f.data();
    let mut gx = vec![0.0; h * w];
    let mut gy = vec![0.0; h * w];
    for i in 0..h {
        let row = &d[i * w..(i + 1) * w];
        for j in 0..w - 1 {
            gx[i * w + j] = row[j + 1] - row[j];
        }
    }
    for i in 0..h - 1 {
        for j in 0..w {
            gy[i * w + j] = d[(i + 1) * w + j] - d[i * w + j];
        }
    }
    GradientField {
        gx: ChannelField::from_raw(h, w, gx),
        gy: ChannelField::from_raw(h, w, gy),
    }
}

/// Backward-difference divergence satisfying `<grad u, g> = -<u, div g>`.
pub fn divergence(g: &GradientField) -> ChannelField {
    let (h, w) = g.dims();
    let gx = g.gx.data();
    let gy = g.gy.data();
    let mut out = vec![0.0; h * w];
    for i in 0..h {
        for j in 0..w {
            let k = i * w + j;
            let mut v = 0.0;
            if j < w - 1 {
                v += gx[k];
            }
            if j > 0 {
                v -= gx[k - 1];
            }
            if i < h - 1 {
                v += gy[k];
            }
            if i > 0 {
                v -= gy[k - w];
            }
            out[k] = v;
        }
    }
    ChannelField::from_raw(h, w, out)
}

/// Neumann 5-point Laplacian, defined as `divergence(forward_gradient(f))`.
pub fn laplacian(f: &ChannelField) -> ChannelField {
    divergence(&forward_gradient(f))
}

/// Which target gradient field the output is pulled toward.
#[derive(Debug, Clone, Copy, PartialEq)]
pub enum GradientTermVariant<'a> {
    /// The content gradients themselves.
    Original,
    /// Content magnitudes carrying the stylized image's signs.
    Absolute,
    /// Same linearised target as [`Absolute`](Self::Absolute); the squared
    /// penalty has the same zero set `|grad O| = |g|`.
    Squared,
    /// Stylized gradients with each axis remapped onto the distribution of
    /// the reference field's corresponding axis.
    HistogramMatched { reference: &'a GradientField },
}

fn with_sign_of(magnitude: f64, sign_source: f64) -> f64 {
    // sign(0) = +1
    if sign_source >= 0.0 {
        libm::fabs(magnitude)
    } else {
        -libm::fabs(magnitude)
    }
}

fn sign_transfer(content: &ChannelField, stylized: &ChannelField) -> ChannelField {
    let data = content
        .data()
        .iter()
        .zip(stylized.data())
        .map(|(&c, &s)| with_sign_of(c, s))
        .collect();
    ChannelField::from_raw(content.height(), content.width(), data)
}

fn interior_x(f: &ChannelField) -> Vec<f64> {
    let w = f.width();
    (0..f.height())
        .flat_map(|i| f.row(i)[..w - 1].iter().copied())
        .collect()
}

fn interior_y(f: &ChannelField) -> Vec<f64> {
    f.data()[..(f.height() - 1) * f.width()].to_vec()
}

fn match_axis(
    source: &ChannelField,
    reference: &ChannelField,
    interior: fn(&ChannelField) -> Vec<f64>,
    horizontal: bool,
) -> Result<ChannelField> {
    let matched = histogram_match_1d(&interior(source), &interior(reference))?;
    let (h, w) = source.dims();
    let mut out = vec![0.0; h * w];
    if horizontal {
        for i in 0..h {
            out[i * w..i * w + w - 1].copy_from_slice(&matched[i * (w - 1)..(i + 1) * (w - 1)]);
        }
    } else {
        out[..(h - 1) * w].copy_from_slice(&matched);
    }
    Ok(ChannelField::from_raw(h, w, out))
}

pub fn build_target_gradient(
    variant: GradientTermVariant<'_>,
    grad_content: &GradientField,
    grad_stylized: &GradientField,
) -> Result<GradientField> {
    grad_content.gx.ensure_same_dims(&grad_stylized.gx)?;
    match variant {
        GradientTermVariant::Original => Ok(grad_content.clone()),
        GradientTermVariant::Absolute | GradientTermVariant::Squared => Ok(GradientField {
            gx: sign_transfer(&grad_content.gx, &grad_stylized.gx),
            gy: sign_transfer(&grad_content.gy, &grad_stylized.gy),
        }),
        GradientTermVariant::HistogramMatched { reference } => Ok(GradientField {
            gx: match_axis(&grad_stylized.gx, &reference.gx, interior_x, true)?,
            gy: match_axis(&grad_stylized.gy, &reference.gy, interior_y, false)?,
        }),
    }
}

//! Scalar grids and gradient pairs.

use alloc::vec;
use alloc::vec::Vec;

use crate::{Error, Result};

/// A single-channel, row-major grid of finite samples.
#[derive(Debug, Clone, PartialEq)]
pub struct ChannelField {
    height: usize,
    width: usize,
    data: Vec<f64>,
}

pub(crate) fn check_dims(height: usize, width: usize) -> Result<()> {
    if height < 2 || width < 2 {
        return Err(Error::TooSmall { height, width });
    }
    Ok(())
}

impl ChannelField {
    pub fn new(height: usize, width: usize, data: Vec<f64>) -> Result<Self> {
        check_dims(height, width)?;
        let expected = height * width;
        if data.len() != expected {
            return Err(Error::LengthMismatch {
                expected,
                actual: data.len(),
            });
        }
        if let Some(i) = data.iter().position(|v| !v.is_finite()) {
            return Err(Error::NonFinite(i));
        }
        Ok(Self { height, width, data })
    }

    pub fn zeros(height: usize, width: usize) -> Result<Self> {
        Self::filled(height, width, 0.0)
    }

    pub fn filled(height: usize, width: usize, value: f64) -> Result<Self> {
        Self::new(height, width, vec![value; height * width])
    }

    /// Builds a field by evaluating `f(row, col)` at every sample.
    pub fn from_fn(height: usize, width: usize, mut f: impl FnMut(usize, usize) -> f64) -> Result<Self> {
        let mut data = Vec::with_capacity(height * width);
        for i in 0..height {
            for j in 0..width {
                data.push(f(i, j));
            }
        }
        Self::new(height, width, data)
    }

    /// Skips validation. Callers must uphold the size and finiteness invariants.
    pub(crate) fn from_raw(height: usize, width: usize, data: Vec<f64>) -> Self {
        debug_assert_eq!(data.len(), height * width);
        Self { height, width, data }
    }

    pub fn height(&self) -> usize {
        self.height
    }

    pub fn width(&self) -> usize {
        self.width
    }

    pub fn len(&self) -> usize {
        self.data.len()
    }

    pub fn is_empty(&self) -> bool {
        self.data.is_empty()
    }

    pub fn dims(&self) -> (usize, usize) {
        (self.height, self.width)
    }

    pub fn data(&self) -> &[f64] {
        &self.data
    }

    pub fn into_data(self) -> Vec<f64> {
        self.data
    }

    #[inline]
    pub fn get(&self, row: usize, col: usize) -> f64 {
        self.data[row * self.width + col]
    }

    pub fn row(&self, row: usize) -> &[f64] {
        &self.data[row * self.width..(row + 1) * self.width]
    }

    pub fn mean(&self) -> f64 {
        self.data.iter().sum::<f64>() / self.data.len() as f64
    }

    pub fn dot(&self, other: &Self) -> f64 {
        self.data.iter().zip(&other.data).map(|(a, b)| a * b).sum()
    }

    pub fn norm(&self) -> f64 {
        libm::sqrt(self.dot(self))
    }

    pub fn max_abs_diff(&self, other: &Self) -> f64 {
        self.data
            .iter()
            .zip(&other.data)
            .map(|(a, b)| libm::fabs(a - b))
            .fold(0.0, f64::max)
    }

    pub fn ensure_same_dims(&self, other: &Self) -> Result<()> {
        if self.dims() != other.dims() {
            return Err(Error::DimensionMismatch(
                self.height,
                self.width,
                other.height,
                other.width,
            ));
        }
        Ok(())
    }

    /// `a * self + b * other`, elementwise.
    pub fn combine(&self, a: f64, other: &Self, b: f64) -> Result<Self> {
        self.ensure_same_dims(other)?;
        let data = self.data.iter().zip(&other.data).map(|(x, y)| a * x + b * y).collect();
        Self::new(self.height, self.width, data)
    }

    pub fn scaled(&self, s: f64) -> Result<Self> {
        Self::new(self.height, self.width, self.data.iter().map(|v| v * s).collect())
    }

    /// Mirror left-right.
    pub fn flip_horizontal(&self) -> Self {
        let mut data = Vec::with_capacity(self.data.len());
        for i in 0..self.height {
            data.extend(self.row(i).iter().rev());
        }
        Self::from_raw(self.height, self.width, data)
    }
}

/// Forward differences of a [`ChannelField`]: `gx` along the width, `gy`
/// along the height. The last column of `gx` and last row of `gy` are zero.
#[derive(Debug, Clone, PartialEq)]
pub struct GradientField {
    pub(crate) gx: ChannelField,
    pub(crate) gy: ChannelField,
}

impl GradientField {
    /// Wraps a pair of component fields, forcing the Neumann boundary entries
    /// to zero if they are not already.
    pub fn new(mut gx: ChannelField, mut gy: ChannelField) -> Result<Self> {
        gx.ensure_same_dims(&gy)?;
        let (h, w) = gx.dims();
        for i in 0..h {
            gx.data[i * w + w - 1] = 0.0;
        }
        for v in &mut gy.data[(h - 1) * w..] {
            *v = 0.0;
        }
        Ok(Self { gx, gy })
    }

    pub fn zeros(height: usize, width: usize) -> Result<Self> {
        Ok(Self {
            gx: ChannelField::zeros(height, width)?,
            gy: ChannelField::zeros(height, width)?,
        })
    }

    pub fn gx(&self) -> &ChannelField {
        &self.gx
    }

    pub fn gy(&self) -> &ChannelField {
        &self.gy
    }

    pub fn dims(&self) -> (usize, usize) {
        self.gx.dims()
    }

    pub fn dot(&self, other: &Self) -> f64 {
        self.gx.dot(&other.gx) + self.gy.dot(&other.gy)
    }

    pub fn combine(&self, a: f64, other: &Self, b: f64) -> Result<Self> {
        Ok(Self {
            gx: self.gx.combine(a, &other.gx, b)?,
            gy: self.gy.combine(a, &other.gy, b)?,
        })
    }

    /// Mirror left-right. A flipped forward difference becomes a negated
    /// difference shifted by one column, so `gx` is re-aligned to keep the
    /// zero column last.
    pub fn flip_horizontal(&self) -> Self {
        let (h, w) = self.dims();
        let mut gx = Vec::with_capacity(h * w);
        for i in 0..h {
            let row = self.gx.row(i);
            for j in 0..w - 1 {
                gx.push(-row[w - 2 - j]);
            }
            gx.push(0.0);
        }
        Self {
            gx: ChannelField::from_raw(h, w, gx),
            gy: self.gy.flip_horizontal(),
        }
    }

    /// Interior samples of both components, skipping the forced-zero
    /// boundary column of `gx` and row of `gy`.
    pub fn interior_samples(&self) -> impl Iterator<Item = f64> + '_ {
        let (h, w) = self.dims();
        let gx = (0..h).flat_map(move |i| self.gx.row(i)[..w - 1].iter().copied());
        let gy = self.gy.data[..(h - 1) * w].iter().copied();
        gx.chain(gy)
    }
}

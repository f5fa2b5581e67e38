//! Multi-channel floating-point images.
//!
//! Samples are stored row-major with channels interleaved, so the sample for
//! channel `c` of pixel `(row, col)` sits at `(row * width + col) * channels + c`.

use alloc::vec::Vec;
use core::fmt;

use crate::field::{check_dims, ChannelField};
use crate::{Error, Result};

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum ColorSpace {
    /// Gamma-encoded sRGB in `[0, 1]`.
    Srgb,
    /// CIE L*a*b* (D65).
    Lab,
    /// Single-channel data with no color interpretation.
    Scalar,
}

impl fmt::Display for ColorSpace {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            ColorSpace::Srgb => "sRGB",
            ColorSpace::Lab => "Lab",
            ColorSpace::Scalar => "scalar",
        })
    }
}

#[derive(Debug, Clone, PartialEq)]
pub struct RasterImage {
    height: usize,
    width: usize,
    channels: usize,
    data: Vec<f64>,
    color_space: ColorSpace,
}

impl RasterImage {
    pub fn new(height: usize, width: usize, channels: usize, data: Vec<f64>, color_space: ColorSpace) -> Result<Self> {
        check_dims(height, width)?;
        if channels != 1 && channels != 3 {
            return Err(Error::UnsupportedChannels(channels));
        }
        let expected = height * width * channels;
        if data.len() != expected {
            return Err(Error::LengthMismatch {
                expected,
                actual: data.len(),
            });
        }
        if let Some(i) = data.iter().position(|v| !v.is_finite()) {
            return Err(Error::NonFinite(i));
        }
        Ok(Self {
            height,
            width,
            channels,
            data,
            color_space,
        })
    }

    pub(crate) fn from_raw(
        height: usize,
        width: usize,
        channels: usize,
        data: Vec<f64>,
        color_space: ColorSpace,
    ) -> Self {
        debug_assert_eq!(data.len(), height * width * channels);
        Self {
            height,
            width,
            channels,
            data,
            color_space,
        }
    }

    /// Interleaves same-sized channel fields into one image.
    pub fn from_channels(fields: &[ChannelField], color_space: ColorSpace) -> Result<Self> {
        let first = fields.first().ok_or(Error::Empty)?;
        for f in &fields[1..] {
            first.ensure_same_dims(f)?;
        }
        let (h, w) = first.dims();
        let n = fields.len();
        let mut data = Vec::with_capacity(h * w * n);
        for p in 0..h * w {
            for f in fields {
                data.push(f.data()[p]);
            }
        }
        Self::new(h, w, n, data, color_space)
    }

    pub fn height(&self) -> usize {
        self.height
    }

    pub fn width(&self) -> usize {
        self.width
    }

    pub fn channels(&self) -> usize {
        self.channels
    }

    pub fn dims(&self) -> (usize, usize) {
        (self.height, self.width)
    }

    pub fn color_space(&self) -> ColorSpace {
        self.color_space
    }

    pub fn data(&self) -> &[f64] {
        &self.data
    }

    pub fn into_data(self) -> Vec<f64> {
        self.data
    }

    pub fn pixel(&self, row: usize, col: usize) -> &[f64] {
        let start = (row * self.width + col) * self.channels;
        &self.data[start..start + self.channels]
    }

    /// Copies channel `c` out as a [`ChannelField`].
    pub fn channel(&self, c: usize) -> Result<ChannelField> {
        if c >= self.channels {
            return Err(Error::ChannelCount {
                expected: c + 1,
                actual: self.channels,
            });
        }
        let data = self.data.iter().skip(c).step_by(self.channels).copied().collect();
        Ok(ChannelField::from_raw(self.height, self.width, data))
    }

    pub fn split(&self) -> Vec<ChannelField> {
        (0..self.channels)
            .map(|c| self.channel(c).expect("channel index in range"))
            .collect()
    }

    pub fn ensure_color_space(&self, expected: ColorSpace) -> Result<()> {
        if self.color_space != expected {
            return Err(Error::WrongColorSpace {
                expected,
                actual: self.color_space,
            });
        }
        Ok(())
    }

    pub fn ensure_channels(&self, expected: usize) -> Result<()> {
        if self.channels != expected {
            return Err(Error::ChannelCount {
                expected,
                actual: self.channels,
            });
        }
        Ok(())
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

    pub fn max_abs_diff(&self, other: &Self) -> f64 {
        self.data
            .iter()
            .zip(&other.data)
            .map(|(a, b)| libm::fabs(a - b))
            .fold(0.0, f64::max)
    }
}

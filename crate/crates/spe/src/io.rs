//! 8-bit PNG/JPEG input and PNG output.

use std::path::Path;

use image::{DynamicImage, ImageFormat, ImageReader};
use log::warn;
use spe_core::{ColorSpace, RasterImage};

use crate::SpeError;

/// `round(clamp(s, 0, 1) * 255)` with halves rounded up.
pub fn quantize(sample: f64) -> u8 {
    (sample.clamp(0.0, 1.0) * 255.0 + 0.5).floor() as u8
}

pub fn from_dynamic(img: DynamicImage) -> Result<RasterImage, spe_core::Error> {
    let rgb = img.to_rgb8();
    let (w, h) = rgb.dimensions();
    let data = rgb.into_raw().into_iter().map(|v| f64::from(v) / 255.0).collect();
    RasterImage::new(h as usize, w as usize, 3, data, ColorSpace::Srgb)
}

/// Reads a PNG or JPEG as an sRGB image with samples `v / 255`.
///
/// Grayscale input is expanded to three channels; alpha is dropped with a
/// warning.
pub fn load_image(path: impl AsRef<Path>) -> Result<RasterImage, SpeError> {
    let path = path.as_ref();
    let reader = ImageReader::open(path)
        .map_err(|source| SpeError::Io {
            path: path.to_owned(),
            source,
        })?
        .with_guessed_format()
        .map_err(|source| SpeError::Io {
            path: path.to_owned(),
            source,
        })?;
    match reader.format() {
        Some(ImageFormat::Png | ImageFormat::Jpeg) => {}
        _ => return Err(SpeError::UnsupportedFormat { path: path.to_owned() }),
    }
    let img = reader.decode().map_err(|source| SpeError::Image {
        path: path.to_owned(),
        source,
    })?;
    if img.color().has_alpha() {
        warn!("{}: discarding alpha channel", path.display());
    }
    from_dynamic(img).map_err(|source| SpeError::InvalidImage {
        path: path.to_owned(),
        source,
    })
}

/// Writes an sRGB image as 8-bit PNG (RGB, or grayscale for one channel).
pub fn save_image(image: &RasterImage, path: impl AsRef<Path>) -> Result<(), SpeError> {
    let path = path.as_ref();
    image.ensure_color_space(ColorSpace::Srgb).map_err(SpeError::Core)?;
    let bytes: Vec<u8> = image.data().iter().map(|&s| quantize(s)).collect();
    let (w, h) = (image.width() as u32, image.height() as u32);
    let dynamic = if image.channels() == 3 {
        DynamicImage::ImageRgb8(image::RgbImage::from_raw(w, h, bytes).expect("buffer size"))
    } else {
        DynamicImage::ImageLuma8(image::GrayImage::from_raw(w, h, bytes).expect("buffer size"))
    };
    dynamic
        .save_with_format(path, ImageFormat::Png)
        .map_err(|source| SpeError::Image {
            path: path.to_owned(),
            source,
        })
}

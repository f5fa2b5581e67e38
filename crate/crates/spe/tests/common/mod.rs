#![allow(dead_code)]

use std::path::PathBuf;

use spe::load_image;
use spe_core::RasterImage;

/// Fixture triples: content photograph, externally stylized version, and
/// the style image used to produce it.
pub const TRIPLES: [&str; 4] = ["astronaut", "chelsea", "rocket", "coffee"];

/// The 640x400 pair used for timing.
pub const PERF_PAIR: &str = "coffee";

pub fn fixture_path(name: &str, role: &str) -> PathBuf {
    PathBuf::from(env!("CARGO_MANIFEST_DIR"))
        .join("tests/fixtures")
        .join(format!("{name}_{role}.png"))
}

pub fn fixture(name: &str, role: &str) -> RasterImage {
    load_image(fixture_path(name, role)).unwrap()
}

pub fn max_byte_diff(a: &RasterImage, b: &RasterImage) -> u8 {
    a.data()
        .iter()
        .zip(b.data())
        .map(|(x, y)| (spe::io::quantize(*x) as i16 - spe::io::quantize(*y) as i16).unsigned_abs() as u8)
        .max()
        .unwrap_or(0)
}

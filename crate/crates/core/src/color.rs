//! sRGB <-> CIE L*a*b* conversion (D65 white, IEC 61966-2-1 transfer curve).

use alloc::vec::Vec;

use crate::image::{ColorSpace, RasterImage};
use crate::Result;

const RGB_TO_XYZ: [[f64; 3]; 3] = [
    [0.4124564, 0.3575761, 0.1804375],
    [0.2126729, 0.7151522, 0.0721750],
    [0.0193339, 0.1191920, 0.9503041],
];

// Numerical inverse of RGB_TO_XYZ.
const XYZ_TO_RGB: [[f64; 3]; 3] = [
    [3.2404548360214087, -1.5371388501025751, -0.498531546868481],
    [-0.9692663898756538, 1.876010928842491, 0.04155608234667355],
    [0.05564341960421367, -0.20402585426769818, 1.057225162457929],
];

// Reference white as the image of sRGB (1, 1, 1), so white maps to L = 100, a = b = 0.
const WHITE: [f64; 3] = [
    RGB_TO_XYZ[0][0] + RGB_TO_XYZ[0][1] + RGB_TO_XYZ[0][2],
    RGB_TO_XYZ[1][0] + RGB_TO_XYZ[1][1] + RGB_TO_XYZ[1][2],
    RGB_TO_XYZ[2][0] + RGB_TO_XYZ[2][1] + RGB_TO_XYZ[2][2],
];

const DELTA: f64 = 6.0 / 29.0;

fn srgb_to_linear(c: f64) -> f64 {
    if c <= 0.04045 {
        c / 12.92
    } else {
        libm::pow((c + 0.055) / 1.055, 2.4)
    }
}

fn linear_to_srgb(l: f64) -> f64 {
    if l <= 0.0031308 {
        12.92 * l
    } else {
        1.055 * libm::pow(l, 1.0 / 2.4) - 0.055
    }
}

fn lab_f(t: f64) -> f64 {
    if t > DELTA * DELTA * DELTA {
        libm::cbrt(t)
    } else {
        t / (3.0 * DELTA * DELTA) + 4.0 / 29.0
    }
}

fn lab_f_inv(t: f64) -> f64 {
    if t > DELTA {
        t * t * t
    } else {
        3.0 * DELTA * DELTA * (t - 4.0 / 29.0)
    }
}

fn mul(m: &[[f64; 3]; 3], v: [f64; 3]) -> [f64; 3] {
    [
        m[0][0] * v[0] + m[0][1] * v[1] + m[0][2] * v[2],
        m[1][0] * v[0] + m[1][1] * v[1] + m[1][2] * v[2],
        m[2][0] * v[0] + m[2][1] * v[1] + m[2][2] * v[2],
    ]
}

/// Converts one gamma-encoded sRGB triple to Lab.
pub fn srgb_pixel_to_lab(rgb: [f64; 3]) -> [f64; 3] {
    let lin = rgb.map(srgb_to_linear);
    let xyz = mul(&RGB_TO_XYZ, lin);
    let fx = lab_f(xyz[0] / WHITE[0]);
    let fy = lab_f(xyz[1] / WHITE[1]);
    let fz = lab_f(xyz[2] / WHITE[2]);
    [116.0 * fy - 16.0, 500.0 * (fx - fy), 200.0 * (fy - fz)]
}

/// Converts one Lab triple to sRGB, clamping each channel into `[0, 1]`.
pub fn lab_pixel_to_srgb(lab: [f64; 3]) -> [f64; 3] {
    let fy = (lab[0] + 16.0) / 116.0;
    let fx = fy + lab[1] / 500.0;
    let fz = fy - lab[2] / 200.0;
    let xyz = [
        WHITE[0] * lab_f_inv(fx),
        WHITE[1] * lab_f_inv(fy),
        WHITE[2] * lab_f_inv(fz),
    ];
    // Clamping in linear light is equivalent to clamping the encoded value
    // because the transfer curve is monotone and fixes 0 and 1.
    mul(&XYZ_TO_RGB, xyz).map(|l| linear_to_srgb(l.clamp(0.0, 1.0)))
}

fn map_pixels(image: &RasterImage, to: ColorSpace, f: fn([f64; 3]) -> [f64; 3]) -> RasterImage {
    let mut data = Vec::with_capacity(image.data().len());
    for px in image.data().chunks_exact(3) {
        data.extend_from_slice(&f([px[0], px[1], px[2]]));
    }
    RasterImage::from_raw(image.height(), image.width(), 3, data, to)
}

pub fn rgb_to_lab(image: &RasterImage) -> Result<RasterImage> {
    image.ensure_channels(3)?;
    image.ensure_color_space(ColorSpace::Srgb)?;
    Ok(map_pixels(image, ColorSpace::Lab, srgb_pixel_to_lab))
}

pub fn lab_to_rgb(image: &RasterImage) -> Result<RasterImage> {
    image.ensure_channels(3)?;
    image.ensure_color_space(ColorSpace::Lab)?;
    Ok(map_pixels(image, ColorSpace::Srgb, lab_pixel_to_srgb))
}

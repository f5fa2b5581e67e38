//! Bilinear resampling for stylized images whose size drifted from the content.

use spe_core::RasterImage;

fn source_coord(dst: usize, dst_len: usize, src_len: usize) -> (usize, usize, f64) {
    let x = ((dst as f64 + 0.5) * src_len as f64 / dst_len as f64 - 0.5).clamp(0.0, (src_len - 1) as f64);
    let x0 = x.floor() as usize;
    let x1 = (x0 + 1).min(src_len - 1);
    (x0, x1, x - x0 as f64)
}

/// Resamples `image` to `height x width` with pixel-centre-aligned bilinear
/// interpolation.
pub fn resize_bilinear(image: &RasterImage, height: usize, width: usize) -> Result<RasterImage, spe_core::Error> {
    let (sh, sw) = image.dims();
    let c = image.channels();
    let cols: Vec<_> = (0..width).map(|j| source_coord(j, width, sw)).collect();
    let mut data = Vec::with_capacity(height * width * c);
    for i in 0..height {
        let (y0, y1, ty) = source_coord(i, height, sh);
        for &(x0, x1, tx) in &cols {
            let (p00, p01) = (image.pixel(y0, x0), image.pixel(y0, x1));
            let (p10, p11) = (image.pixel(y1, x0), image.pixel(y1, x1));
            for k in 0..c {
                let top = p00[k] + tx * (p01[k] - p00[k]);
                let bottom = p10[k] + tx * (p11[k] - p10[k]);
                data.push(top + ty * (bottom - top));
            }
        }
    }
    RasterImage::new(height, width, c, data, image.color_space())
}

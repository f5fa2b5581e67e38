use std::time::Instant;

use log::warn;
use spe_core::{apply_photorealism, Photorealized, RasterImage, ScreenedPoisson, SolverConfig};

use crate::fft::RustDctPlanner;
use crate::resample::resize_bilinear;

/// A solver using FFT-backed transforms and wall-clock timing.
pub fn timed_solver() -> ScreenedPoisson<RustDctPlanner> {
    let origin = Instant::now();
    ScreenedPoisson::with_planner(RustDctPlanner::new()).with_clock(move || origin.elapsed().as_secs_f64())
}

#[derive(Debug, Clone)]
pub struct Timed {
    pub result: Photorealized,
    /// The stylized image actually used, after any resampling.
    pub stylized: RasterImage,
    /// Wall time of the whole pass (color conversion and three solves).
    pub wall_time_seconds: f64,
}

/// Runs the photorealism pass, bilinearly resampling `stylized` to the
/// content size first if needed.
pub fn photorealize(
    content: &RasterImage,
    stylized: &RasterImage,
    config: &SolverConfig,
) -> Result<Timed, spe_core::Error> {
    let stylized = if stylized.dims() != content.dims() {
        warn!(
            "stylized image is {}x{}, content is {}x{}; resampling bilinearly",
            stylized.width(),
            stylized.height(),
            content.width(),
            content.height()
        );
        resize_bilinear(stylized, content.height(), content.width())?
    } else {
        stylized.clone()
    };
    let mut solver = timed_solver();
    let start = Instant::now();
    let result = apply_photorealism(&mut solver, content, &stylized, config)?;
    let wall_time_seconds = start.elapsed().as_secs_f64();
    Ok(Timed {
        result,
        stylized,
        wall_time_seconds,
    })
}

//! Image IO, reports and the command-line front end for [`spe_core`].
//!
//! The core crate is `no_std`; this crate adds what needs an operating
//! system: PNG/JPEG files, an FFT-backed DCT for large images, wall-clock
//! timing, and JSON/CSV report files.

pub mod cli;
pub mod error;
pub mod fft;
pub mod io;
pub mod pipeline;
pub mod report;
pub mod resample;

pub use error::SpeError;
pub use fft::RustDctPlanner;
pub use io::{load_image, save_image};
pub use pipeline::{photorealize, timed_solver};

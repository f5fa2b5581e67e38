//! Screened Poisson post-processing for photorealistic style transfer.
//!
//! A stylized image is kept as the fidelity target while the output's
//! gradients are pulled toward those of the original photograph:
//!
//! ```text
//! minimize  ||O - C_S||^2 + lambda * ||grad O - G||^2
//! ```
//!
//! whose normal equations are the screened Poisson equation
//! `(I - lambda * div grad) O = C_S - lambda * div G`. The crate solves it
//! per Lab channel with a DCT-II spectral backend, a matrix-free conjugate
//! gradient backend, or a dense direct solve used as a small-scale oracle.
//!
//! Everything here is pure computation over `alloc`; file formats, timing
//! and the command-line tool live in the `spe` crate.
#![no_std]
#![deny(unsafe_code)]

extern crate alloc;

#[cfg(test)]
extern crate std;

pub mod analysis;
pub mod color;
pub mod dct;
mod error;
pub mod field;
pub mod gradient;
pub mod histmatch;
pub mod image;
pub mod pipeline;
pub mod solver;

pub use error::{Error, Result};
pub use field::{ChannelField, GradientField};
pub use image::{ColorSpace, RasterImage};
pub use pipeline::{apply_photorealism, GradientTerm, Photorealized};
pub use solver::{Backend, CgOptions, ScreenedPoisson, SolveReport, SolverConfig};

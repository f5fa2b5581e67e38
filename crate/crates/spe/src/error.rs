use std::path::PathBuf;

use thiserror::Error;

/// Process exit codes.
pub mod exit {
    pub const SUCCESS: i32 = 0;
    pub const USAGE: i32 = 1;
    pub const IO: i32 = 2;
    pub const NUMERICAL: i32 = 3;
}

#[derive(Debug, Error)]
pub enum SpeError {
    #[error("{}: {source}", path.display())]
    Io { path: PathBuf, source: std::io::Error },
    #[error("{}: {source}", path.display())]
    Image { path: PathBuf, source: image::ImageError },
    #[error("{}: unsupported image format (expected PNG or JPEG)", path.display())]
    UnsupportedFormat { path: PathBuf },
    #[error("{}: {source}", path.display())]
    InvalidImage { path: PathBuf, source: spe_core::Error },
    #[error("{}: {source}", path.display())]
    Json { path: PathBuf, source: serde_json::Error },
    #[error("{}: {source}", path.display())]
    Csv { path: PathBuf, source: csv::Error },
    #[error("{0}")]
    Usage(String),
    #[error("{0}")]
    Core(#[from] spe_core::Error),
    #[error("solver did not converge on channel {channel} (residual {residual:.3e} after {iterations} iterations)")]
    NotConverged {
        channel: char,
        residual: f64,
        iterations: usize,
    },
}

impl SpeError {
    pub fn exit_code(&self) -> i32 {
        use spe_core::Error as E;
        match self {
            SpeError::Io { .. }
            | SpeError::Image { .. }
            | SpeError::UnsupportedFormat { .. }
            | SpeError::InvalidImage { .. }
            | SpeError::Json { .. }
            | SpeError::Csv { .. } => exit::IO,
            SpeError::Usage(_) => exit::USAGE,
            SpeError::NotConverged { .. } => exit::NUMERICAL,
            SpeError::Core(e) => match e {
                E::NonFinite(_) | E::NotPositiveDefinite => exit::NUMERICAL,
                _ => exit::USAGE,
            },
        }
    }
}

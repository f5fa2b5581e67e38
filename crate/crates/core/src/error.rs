use crate::image::ColorSpace;

pub type Result<T, E = Error> = core::result::Result<T, E>;

#[derive(Debug, Clone, PartialEq, thiserror::Error)]
pub enum Error {
    #[error("grid is {height}x{width}; at least 2x2 is required")]
    TooSmall { height: usize, width: usize },
    #[error("expected {expected} samples, got {actual}")]
    LengthMismatch { expected: usize, actual: usize },
    #[error("non-finite sample at index {0}")]
    NonFinite(usize),
    #[error("dimension mismatch: {0}x{1} vs {2}x{3}")]
    DimensionMismatch(usize, usize, usize, usize),
    #[error("unsupported channel count {0}")]
    UnsupportedChannels(usize),
    #[error("expected {expected} channels, got {actual}")]
    ChannelCount { expected: usize, actual: usize },
    #[error("expected {expected} image, got {actual}")]
    WrongColorSpace { expected: ColorSpace, actual: ColorSpace },
    #[error("lambda must be finite and non-negative, got {0}")]
    InvalidLambda(f64),
    #[error("invalid solver option: {0}")]
    InvalidOption(&'static str),
    #[error("empty input")]
    Empty,
    #[error("dense solve limited to {limit} unknowns, got {actual}")]
    TooLarge { limit: usize, actual: usize },
    #[error("matrix is not positive definite")]
    NotPositiveDefinite,
    #[error("histograms use different binning")]
    BinningMismatch,
    #[error("bin count must be odd and at least 3, got {0}")]
    InvalidBins(usize),
}

//! Error type shared across the crate.

use thiserror::Error;

/// Crate-wide result alias.
pub type Result<T> = std::result::Result<T, Error>;

#[derive(Debug, Error)]
pub enum Error {
    /// A mask is uniformly 0 or uniformly 1, so no boundary exists.
    #[error("no boundary: mask is uniform")]
    NoBoundary,

    /// A diffusion scale below zero was requested.
    #[error("diffusion scale must be nonnegative, got {0}")]
    NegativeScale(f64),

    /// Two grids that must share dimensions do not.
    #[error("dimension mismatch: {0}x{1} vs {2}x{3}")]
    DimensionMismatch(usize, usize, usize, usize),

    /// Two regions that must be disjoint overlap.
    #[error("regions overlap: {context}")]
    RegionsOverlap { context: &'static str },

    /// The initial fill contains pixels outside the inpainting region.
    #[error("initial fill leaks outside the inpainting region")]
    FillOutsideRegion,

    /// A configuration value is outside its valid range.
    #[error("invalid configuration: {0}")]
    InvalidConfig(String),

    /// Bi-level thresholds must be strictly increasing.
    #[error("thresholds must be strictly increasing")]
    InvalidThresholds,

    /// The input decomposes into fewer than two foreground objects.
    #[error("need two proximal objects")]
    NeedTwoObjects,

    /// A requested label is absent from the label map.
    #[error("label {0} selects no pixels")]
    EmptyLabel(u32),

    /// A scene mask is empty.
    #[error("scene region is empty: {context}")]
    EmptyRegion { context: &'static str },

    #[error("unsupported image format: {0}")]
    UnsupportedFormat(String),

    #[error(transparent)]
    Io(#[from] std::io::Error),

    #[error(transparent)]
    Image(#[from] image::ImageError),
}

impl Error {
    /// Process exit code: 1 for bad input, 2 for internal failures.
    pub fn exit_code(&self) -> i32 {
        match self {
            Error::InvalidConfig(_)
            | Error::InvalidThresholds
            | Error::NeedTwoObjects
            | Error::EmptyLabel(_)
            | Error::EmptyRegion { .. }
            | Error::RegionsOverlap { .. }
            | Error::UnsupportedFormat(_)
            | Error::Io(_)
            | Error::Image(_) => 1,
            Error::NoBoundary
            | Error::NegativeScale(_)
            | Error::DimensionMismatch(..)
            | Error::FillOutsideRegion => 2,
        }
    }
}

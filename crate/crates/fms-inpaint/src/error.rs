//! Error type shared across the crate.

use thiserror::Error;

/// Convenience alias used by every fallible operation in this crate.
pub type Result<T> = std::result::Result<T, Error>;

#[derive(Debug, Error)]
pub enum Error {
    /// Two grids that must share a shape do not.
    #[error("shape mismatch: expected {expected_rows}x{expected_cols}, got {got_rows}x{got_cols}")]
    ShapeMismatch {
        expected_rows: usize,
        expected_cols: usize,
        got_rows: usize,
        got_cols: usize,
    },

    /// A parameter is outside its admissible range.
    #[error("invalid parameter: {0}")]
    InvalidParameter(String),

    /// A mask marks every pixel as damaged, leaving no fidelity anchor.
    #[error("mask marks every pixel as damaged; at least one pixel must be kept")]
    AllDamaged,

    /// An input is degenerate for the requested operation
    /// (e.g. a constant reference image for SNR).
    #[error("degenerate input: {0}")]
    DegenerateInput(String),

    /// Image is smaller than an operation's minimum supported size.
    #[error("image too small: {0}")]
    ImageTooSmall(String),

    #[error("i/o error: {0}")]
    Io(#[from] std::io::Error),

    #[error("image codec error: {0}")]
    Image(#[from] image::ImageError),
}

impl Error {
    /// Shape-mismatch constructor used by operations that pair two grids.
    pub fn shape_mismatch(expected: (usize, usize), got: (usize, usize)) -> Self {
        Error::ShapeMismatch {
            expected_rows: expected.0,
            expected_cols: expected.1,
            got_rows: got.0,
            got_cols: got.1,
        }
    }
}

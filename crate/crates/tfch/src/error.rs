use thiserror::Error;

/// Errors produced by the solver library.
#[derive(Debug, Error)]
pub enum TfchError {
    /// A scalar argument is outside the mathematical domain of an operation.
    #[error("domain error: {0}")]
    Domain(String),

    /// Two operands do not share the structure (grid, alpha) a binary
    /// operation requires.
    #[error("structural mismatch: {0}")]
    Structural(String),

    /// A grid, stencil or parameter combination is invalid.
    #[error("invalid configuration: {0}")]
    Config(String),

    /// A sampled function produced a non-finite value.
    #[error("sampling error at node {index} (x = {x}): value {value} is not finite")]
    Sampling { index: usize, x: f64, value: f64 },

    /// NaN or overflow detected inside a solver component.
    #[error("numerical failure in {context}: non-finite value at node {index}")]
    Numerical { context: String, index: usize },

    /// I/O failure while writing results.
    #[error("i/o error: {0}")]
    Io(#[from] std::io::Error),
}

pub type Result<T> = std::result::Result<T, TfchError>;

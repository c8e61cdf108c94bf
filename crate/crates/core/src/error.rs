use thiserror::Error;

/// Errors raised by the exact-arithmetic models.
#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum Error {
    #[error("dimension mismatch: {0}")]
    Dimension(String),

    #[error("partition does not fit in the {rows}x{cols} box: {detail}")]
    OutOfBox {
        rows: usize,
        cols: usize,
        detail: String,
    },

    #[error("degenerate evaluation point: {0}")]
    DegeneratePoint(String),

    #[error("pole: {0}")]
    Pole(String),

    #[error("invalid parameter: {0}")]
    Parameter(String),

    #[error("contract violated: {0}")]
    Contract(String),

    #[error("evaluation failed: {0}")]
    Evaluation(String),

    #[error("parse error: {0}")]
    Parse(String),

    #[error("usage: {0}")]
    Usage(String),
}

pub type Result<T, E = Error> = std::result::Result<T, E>;

use thiserror::Error;

#[derive(Debug, Error)]
pub enum Error {
    #[error("weight length mismatch: {left} vs {right}")]
    LengthMismatch { left: usize, right: usize },

    #[error("invalid weight ({0}): entries must be weakly decreasing")]
    InvalidWeight(String),

    #[error("unsupported expression node: {0}")]
    UnsupportedNode(String),

    #[error("{0}")]
    Domain(String),

    #[error("parse error: {0}")]
    Parse(String),

    #[error("dimension overflow in exact arithmetic")]
    Overflow,
}

pub type Result<T> = std::result::Result<T, Error>;

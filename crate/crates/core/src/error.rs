use thiserror::Error;

#[derive(Debug, Error)]
pub enum Error {
    #[error("invalid input: {0}")]
    Input(String),

    #[error("configuration: {0}")]
    Config(String),

    /// A module whose endomorphism ring modulo its radical is bigger than the
    /// ground field but could not be split by any tried element.
    #[error("non-split residue field: End/rad has dimension {0} for an unsplittable factor")]
    NonSplitResidue(usize),

    #[error("degree {degree} exceeds the hard cap {cap}; relation encoding is broken")]
    DegreeCap { degree: usize, cap: usize },

    #[error("enumeration did not stabilise within {0} passes")]
    Enumeration(usize),

    #[error("integrity: {0}")]
    Integrity(String),

    #[error("structure: {0}")]
    Structure(String),

    #[error("format: {0}")]
    Format(String),

    #[error(transparent)]
    Io(#[from] std::io::Error),

    #[error(transparent)]
    Json(#[from] serde_json::Error),
}

pub type Result<T> = std::result::Result<T, Error>;

use thiserror::Error;

/// Errors produced by the channel-ordering toolkit.
#[derive(Debug, Error)]
pub enum Error {
    #[error("dimension mismatch: {0}")]
    DimensionMismatch(String),

    #[error("alphabet mismatch: {0}")]
    AlphabetMismatch(String),

    #[error("invalid distribution: {0}")]
    InvalidDistribution(String),

    #[error("invalid channel: {0}")]
    InvalidChannel(String),

    #[error("empty input: {0}")]
    Empty(&'static str),

    #[error("enumeration of {needed} cases exceeds cap {cap}")]
    CapExceeded { needed: u128, cap: u64 },

    #[error("precondition violated: {0}")]
    Precondition(String),

    #[error("numerical failure: {0}")]
    Numerical(String),

    #[error("malformed input: {0}")]
    Malformed(String),

    #[error(transparent)]
    Json(#[from] serde_json::Error),

    #[error(transparent)]
    Io(#[from] std::io::Error),
}

pub type Result<T, E = Error> = std::result::Result<T, E>;

impl Error {
    /// Short machine-readable name of the variant.
    pub fn kind(&self) -> &'static str {
        match self {
            Error::DimensionMismatch(_) => "dimension_mismatch",
            Error::AlphabetMismatch(_) => "alphabet_mismatch",
            Error::InvalidDistribution(_) => "invalid_distribution",
            Error::InvalidChannel(_) => "invalid_channel",
            Error::Empty(_) => "empty",
            Error::CapExceeded { .. } => "cap_exceeded",
            Error::Precondition(_) => "precondition",
            Error::Numerical(_) => "numerical",
            Error::Malformed(_) => "malformed",
            Error::Json(_) => "json",
            Error::Io(_) => "io",
        }
    }
}

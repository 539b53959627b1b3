use thiserror::Error;

pub type Result<T> = std::result::Result<T, Error>;

/// Crate-wide error type.
///
/// `ResourceCap` is deliberately structured (not a string) so callers can map
/// it to a dedicated exit code and report what was exceeded.
#[derive(Debug, Error)]
pub enum Error {
    #[error("parse error at line {line}: {msg}")]
    Parse { line: usize, msg: String },

    #[error("invalid Coxeter matrix: {0}")]
    InvalidMatrix(String),

    #[error("unknown generator `{0}`")]
    UnknownGenerator(String),

    #[error("subset is not spherical: {0}")]
    NotSpherical(String),

    #[error("weights must be positive rationals: {0}")]
    InvalidWeight(String),

    #[error("resource cap exceeded: {context} (limit {limit}, reached {reached})")]
    ResourceCap {
        context: String,
        limit: usize,
        reached: usize,
    },

    #[error("dimension mismatch: {0}")]
    Dimension(String),

    #[error("invalid complex: {0}")]
    InvalidComplex(String),

    #[error("hypothesis not satisfied: {0}")]
    Refused(String),

    #[error("certificate invalid: {0}")]
    BadCertificate(String),

    #[error("io error: {0}")]
    Io(#[from] std::io::Error),

    #[error("json error: {0}")]
    Json(#[from] serde_json::Error),

    #[error("{0}")]
    Other(String),
}

impl Error {
    pub fn other(msg: impl Into<String>) -> Self {
        Error::Other(msg.into())
    }

    /// Process exit code this error maps to at the CLI boundary.
    pub fn exit_code(&self) -> i32 {
        match self {
            Error::Refused(_) => 2,
            Error::ResourceCap { .. } => 3,
            Error::Parse { .. }
            | Error::UnknownGenerator(_)
            | Error::InvalidWeight(_)
            | Error::InvalidMatrix(_) => 64,
            _ => 1,
        }
    }
}

use thiserror::Error;

#[derive(Debug, Error, Clone, PartialEq)]
pub enum Error {
    /// A factorial or tensor-power size exceeded a configured cap.
    #[error("size limit exceeded for {what}: requested {requested}, limit {limit}")]
    SizeLimit {
        what: String,
        requested: u128,
        limit: u128,
    },

    #[error("invalid argument: {0}")]
    Argument(String),

    /// Input failed a numerical precondition (Hermiticity, trace, norm).
    #[error("validation failed: {what} (violation magnitude {magnitude:e})")]
    Validation { what: String, magnitude: f64 },
}

impl Error {
    pub(crate) fn arg(msg: impl Into<String>) -> Self {
        Error::Argument(msg.into())
    }

    pub(crate) fn size(what: impl Into<String>, requested: u128, limit: u128) -> Self {
        Error::SizeLimit {
            what: what.into(),
            requested,
            limit,
        }
    }
}

pub type Result<T> = std::result::Result<T, Error>;

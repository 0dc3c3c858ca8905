use thiserror::Error;

/// Errors reported by this crate.
///
/// Precondition breaches surface as [`Error::Contract`] instead of panics so
/// that callers (in particular the CLI) can map them to exit codes.
#[derive(Debug, Error)]
pub enum Error {
    #[error("arithmetic overflow in {0}")]
    Overflow(&'static str),

    #[error("invalid power sequence: {0}")]
    InvalidPowerSequence(String),

    #[error("contract violation: {0}")]
    Contract(String),

    #[error("non-artinian: Hilbert function does not terminate (r = {r} < 3)")]
    NonArtinian { r: usize },

    #[error("dimension undetermined at degree {degree}")]
    Undetermined { degree: i64 },

    #[error("prime field configuration error: {0}")]
    Config(String),

    #[error("internal consistency error: {0}")]
    Internal(String),
}

impl Error {
    pub(crate) fn contract(msg: impl Into<String>) -> Self {
        Error::Contract(msg.into())
    }
}

use thiserror::Error;

/// Errors produced by the modem library.
#[derive(Debug, Error)]
pub enum Error {
    /// A parameter set violates one of its invariants. The message names
    /// the violated invariant.
    #[error("invalid parameters: {0}")]
    InvalidParams(String),

    /// An operation that requires a nonempty input received an empty one.
    #[error("input is empty")]
    EmptyInput,

    /// Both `ebn0_db` and `snr_db` were set on a channel configuration.
    #[error("conflicting noise specification: at most one of ebn0_db and snr_db may be set")]
    ConflictingNoiseSpec,

    /// The sample buffer is too short for the requested operation.
    #[error("input too short: need at least {needed} samples, got {got}")]
    TooShort { needed: usize, got: usize },

    /// Two bit strings that must have equal length do not.
    #[error("bit string length mismatch: {0} vs {1}")]
    LengthMismatch(usize, usize),

    /// A coded bit stream has an invalid length for the decoder.
    #[error("bad coded length {0}: must be even and at least 6")]
    BadLength(usize),

    /// A file does not conform to its format.
    #[error("malformed file: {0}")]
    MalformedFile(String),

    #[error("i/o failure: {0}")]
    Io(#[from] std::io::Error),
}

pub type Result<T> = std::result::Result<T, Error>;

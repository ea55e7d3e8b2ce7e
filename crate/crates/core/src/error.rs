use thiserror::Error;

/// Errors raised by evaluators, constructors and codecs.
///
/// Verification failures are not errors; they are reported as data in
/// [`crate::verify::Report`].
#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum Error {
    #[error("truncation order mismatch: {left} vs {right}")]
    OrderMismatch { left: usize, right: usize },

    #[error("series is not invertible: constant term is zero")]
    NotInvertible,

    #[error("index {0} is not admissible for this model")]
    NotAdmissible(String),

    #[error("element is not in {space}: offending word `{word}`")]
    NotInSubspace { space: &'static str, word: String },

    #[error("denominator 1 - q^{n} vanishes at the requested point")]
    VanishingDenominator { n: u64 },

    #[error("positions {0} overlap")]
    Overlap(String),

    #[error("invalid argument: {0}")]
    InvalidArgument(String),

    #[error("parse error: {0}")]
    Parse(String),
}

pub type Result<T, E = Error> = std::result::Result<T, E>;

pub(crate) fn invalid<T>(msg: impl Into<String>) -> Result<T> {
    Err(Error::InvalidArgument(msg.into()))
}

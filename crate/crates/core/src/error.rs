use thiserror::Error;

/// Failures reported by the library. Everything here maps to CLI exit code 2.
#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum Error {
    /// An input violates an operation's precondition.
    #[error("domain error: {0}")]
    Domain(String),
    /// The input is well formed but lies outside what is modeled (dyadic
    /// places, conductor exponents beyond the supported census, ...).
    #[error("unsupported: {0}")]
    Unsupported(String),
    /// A bounded search ran to its cap without finding a witness.
    #[error("search exhausted: {0}")]
    SearchExhausted(String),
}

pub type Result<T> = std::result::Result<T, Error>;

pub(crate) fn domain<T>(msg: impl Into<String>) -> Result<T> {
    Err(Error::Domain(msg.into()))
}

pub(crate) fn unsupported<T>(msg: impl Into<String>) -> Result<T> {
    Err(Error::Unsupported(msg.into()))
}

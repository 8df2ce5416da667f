use thiserror::Error;

/// Errors raised by the library.
#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum Error {
    /// An input falls outside the domain of an operation.
    #[error("domain error: {0}")]
    Domain(String),
    /// A point was handed to a curve it does not lie on.
    #[error("point {0} is not on the curve")]
    NotOnCurve(String),
    /// A birational map was evaluated on its excluded locus.
    #[error("map is undefined at {0}")]
    Pole(String),
    /// Malformed textual input.
    #[error("parse error: {0}")]
    Parse(String),
    /// A constructive pipeline ran out of candidates.
    #[error("construction failed: {0}")]
    Construction(String),
    /// A computed object failed its own consistency check.
    #[error("internal consistency check failed: {0}")]
    Internal(String),
}

pub type Result<T> = std::result::Result<T, Error>;

pub(crate) fn domain<T>(msg: impl Into<String>) -> Result<T> {
    Err(Error::Domain(msg.into()))
}

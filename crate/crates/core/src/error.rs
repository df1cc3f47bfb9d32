use thiserror::Error;

/// Error type shared by every module of the crate.
#[derive(Debug, Error)]
pub enum Error {
    /// Malformed arguments: out-of-range vertex ids, bad set relations, etc.
    #[error("input error: {0}")]
    Input(String),
    /// A model specification violates its invariants.
    #[error("spec error: {0}")]
    Spec(String),
    /// A parameter lies outside the range a bound or formula is stated for.
    #[error("domain error: {0}")]
    Domain(String),
    /// An enumeration guard was exceeded; the computation is infeasible.
    #[error("capacity error: {0}")]
    Capacity(String),
    /// Text-format parse failure with the 1-based source line.
    #[error("parse error at line {line}: {message}")]
    Parse { line: usize, message: String },
}

impl Error {
    pub fn input(msg: impl Into<String>) -> Self {
        Error::Input(msg.into())
    }
    pub fn spec(msg: impl Into<String>) -> Self {
        Error::Spec(msg.into())
    }
    pub fn domain(msg: impl Into<String>) -> Self {
        Error::Domain(msg.into())
    }
    pub fn capacity(msg: impl Into<String>) -> Self {
        Error::Capacity(msg.into())
    }
}

pub type Result<T> = std::result::Result<T, Error>;

use thiserror::Error;

pub type Result<T, E = Error> = std::result::Result<T, E>;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum Error {
    #[error("invalid multi-degree: {0}")]
    InvalidMultiDegree(String),
    /// Parameters violate a structural requirement (as opposed to failing a
    /// numeric condition).
    #[error("invalid parameters: {0}")]
    InvalidParams(String),
    #[error("parse error: {0}")]
    Parse(String),
    #[error("{0} is not a prime below 2^16")]
    BadPrime(u32),
    #[error("dimension mismatch: {0}")]
    Dimension(String),
}

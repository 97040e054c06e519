use thiserror::Error;

pub type Result<T, E = Error> = std::result::Result<T, E>;

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum Error {
    #[error("value out of range: {0}")]
    Range(String),
    #[error("invalid channel specification: {0}")]
    Spec(String),
    #[error("region is unbounded: {0}")]
    Unbounded(String),
    #[error("regime precondition not met: {0}")]
    Regime(String),
    #[error("parse error: {0}")]
    Parse(String),
}

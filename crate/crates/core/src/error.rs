use thiserror::Error;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum Error {
    #[error("configuration error: {0}")]
    Config(String),
    #[error("parse error at position {pos}: {msg}")]
    Parse { pos: usize, msg: String },
    #[error("domain error: {0}")]
    Domain(String),
    #[error("degree cap {cap} exceeded (word of length {len})")]
    DegreeCap { cap: usize, len: usize },
    #[error("rewriting fuel exhausted after {0} steps")]
    FuelExhausted(usize),
    #[error("functional undefined on {0}")]
    Undefined(String),
    #[error("{0}")]
    Invariant(String),
}

pub type Result<T> = std::result::Result<T, Error>;

use thiserror::Error;

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum Error {
    /// Malformed or out-of-range input.
    #[error("input error: {0}")]
    Input(String),
    /// A computation could not certify its own answer.
    #[error("certification failure: {0}")]
    Certification(String),
    /// A linear system that should be solvable was not.
    #[error("no solution: {0}")]
    NoSolution(String),
    /// A claimed identity failed.
    #[error("verification failure: {0}")]
    Verification(String),
}

pub type Result<T> = std::result::Result<T, Error>;

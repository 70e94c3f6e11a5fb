use thiserror::Error;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum Error {
    #[error("malformed diagram: {0}")]
    Malformed(String),
    #[error("invalid input: {0}")]
    Invalid(String),
    #[error("not a prime: {0}")]
    NotPrime(u64),
    #[error("precondition violated: {0}")]
    Precondition(String),
    #[error("engine width cap exceeded: width {width} > cap {cap}")]
    WidthCap { width: usize, cap: usize },
    #[error("enumeration cap exceeded: {0}")]
    Cap(String),
    #[error("inexact division: {0}")]
    InexactDivision(String),
    #[error("theorem violation: {0}")]
    TheoremViolation(String),
    #[error("while evaluating term {term}: {source}")]
    Term { term: String, source: Box<Error> },
}

pub type Result<T> = std::result::Result<T, Error>;

impl Error {
    /// True for errors raised by an engine resource cap.
    pub fn is_cap(&self) -> bool {
        match self {
            Error::WidthCap { .. } | Error::Cap(_) => true,
            Error::Term { source, .. } => source.is_cap(),
            _ => false,
        }
    }
}

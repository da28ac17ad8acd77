use thiserror::Error;

pub type Result<T, E = Error> = std::result::Result<T, E>;

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum Error {
    #[error("dimension mismatch: expected {expected}, got {got}")]
    DimensionMismatch { expected: usize, got: usize },

    #[error("invalid input: {0}")]
    Input(String),

    #[error("syntax error at line {line}, column {column}: {message}")]
    Syntax {
        line: usize,
        column: usize,
        message: String,
    },

    #[error("semantic error at line {line} ({entry}): {message}")]
    Semantic {
        line: usize,
        entry: String,
        message: String,
    },

    #[error("precondition failed: {0}")]
    Precondition(String),

    /// A property that holds for every genuine input failed; the data is corrupt.
    #[error("integrity check failed: {0}")]
    Integrity(String),

    #[error("axiom violation: {0}")]
    AxiomViolation(String),

    #[error("theorem violation: {0}")]
    TheoremViolation(String),

    #[error("semisimple quotient does not split over the rationals: irreducible factor {factor}")]
    UnsplittableOverRationals { factor: String },

    #[error("refused: {0}")]
    Refused(String),
}

impl Error {
    /// CLI exit code: 1 for violated checks, 2 for bad input.
    pub fn exit_code(&self) -> i32 {
        match self {
            Error::Integrity(_) | Error::AxiomViolation(_) | Error::TheoremViolation(_) => 1,
            _ => 2,
        }
    }
}

use thiserror::Error;

/// Errors surfaced by filtration ingestion and the barcode engines.
#[derive(Debug, Error)]
pub enum HcbError {
    #[error("line {line}: {msg}")]
    Parse { line: usize, msg: String },

    #[error("simplex {simplex} is missing face {face}")]
    MissingFace { simplex: String, face: String },

    #[error("vector has degree {found}, expected {expected}")]
    DegreeMismatch { expected: usize, found: usize },

    #[error("vertex {0} has no function value")]
    MissingVertexValue(u32),

    #[error("internal invariant violated: {0}")]
    InvariantViolation(String),

    #[error("{0}")]
    Invalid(String),
}

pub type Result<T> = std::result::Result<T, HcbError>;

impl HcbError {
    pub fn parse(line: usize, msg: impl Into<String>) -> Self {
        HcbError::Parse {
            line,
            msg: msg.into(),
        }
    }
}

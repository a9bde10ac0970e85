use thiserror::Error;

/// Errors shared by every layer of the crate.
#[derive(Debug, Error)]
pub enum Error {
    /// A linear system was inconsistent.
    #[error("linear system has no solution")]
    NoSolution,
    /// A square matrix had no inverse.
    #[error("matrix is singular")]
    Singular,
    /// An operation required a semisimple algebra.
    #[error("algebra `{0}` is not semisimple")]
    NotSemisimple(String),
    /// The Wedderburn search met an irreducible factor it cannot split
    /// over the rationals.
    #[error("algebra `{0}` does not split over the rationals: {1}")]
    NotSplit(String, String),
    /// An operation needed a Wedderburn certificate and none was attached.
    #[error("algebra `{0}` carries no Wedderburn certificate")]
    NoCertificate(String),
    /// No dual basis exists; the module is not finitely projective.
    #[error("no dual basis found for `{0}`")]
    DualBasisNotFound(String),
    /// Source/target algebras of cells do not match.
    #[error("object mismatch: {0}")]
    ObjectMismatch(String),
    /// Structurally invalid input data.
    #[error("invalid data: {0}")]
    Invalid(String),
    /// Malformed text input (rational strings, corpus files).
    #[error("parse error: {0}")]
    Parse(String),
    #[error("io error: {0}")]
    Io(#[from] std::io::Error),
    #[error("json error: {0}")]
    Json(#[from] serde_json::Error),
}

pub type Result<T> = std::result::Result<T, Error>;

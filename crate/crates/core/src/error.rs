//! Error taxonomy shared by every module.

use thiserror::Error;

/// Everything that can go wrong in this crate.
///
/// Mathematical degeneracies (`FocalPoint`, `EmptyNeighborhood`,
/// `DegenerateInput`) are kept distinct from plumbing failures
/// (`InvalidInput`, `Io`) so callers can map them to different exit codes.
#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum Error {
    /// The ambient point has no unique nearest point on the embedded image,
    /// so the projection is undefined (e.g. the zero vector for the sphere,
    /// or a tied leading eigenvalue for the shape embedding).
    #[error("focal point: {0}")]
    FocalPoint(String),

    /// A compact-support kernel assigned zero mass to every observation.
    #[error("empty neighborhood: all kernel weights vanish at the evaluation point")]
    EmptyNeighborhood,

    /// The input is structurally degenerate for the requested operation
    /// (all landmarks identical, antipodal log map, and so on).
    #[error("degenerate input: {0}")]
    DegenerateInput(String),

    /// Malformed arguments: mismatched lengths, invalid parameter ranges,
    /// weights that do not sum to one, unknown schema fields.
    #[error("invalid input: {0}")]
    InvalidInput(String),

    /// File or serialization failure while reading or writing datasets.
    #[error("i/o: {0}")]
    Io(String),
}

impl From<std::io::Error> for Error {
    fn from(e: std::io::Error) -> Self {
        Error::Io(e.to_string())
    }
}

impl From<csv::Error> for Error {
    fn from(e: csv::Error) -> Self {
        Error::Io(e.to_string())
    }
}

impl From<serde_json::Error> for Error {
    fn from(e: serde_json::Error) -> Self {
        Error::InvalidInput(e.to_string())
    }
}

pub type Result<T> = std::result::Result<T, Error>;

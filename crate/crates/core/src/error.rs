use thiserror::Error;

#[derive(Debug, Error)]
pub enum Error {
    #[error("invalid Coxeter matrix at ({row},{col}): {reason}")]
    InvalidMatrix {
        row: usize,
        col: usize,
        reason: String,
    },
    #[error("generator index {index} out of range for rank {rank}")]
    IndexOutOfRange { index: usize, rank: usize },
    #[error("subset {0} is not spherical")]
    NonSpherical(String),
    #[error("element {word} is not ({i},{j})-reduced")]
    NotReduced { word: String, i: String, j: String },
    #[error("polynomial variable universes differ")]
    VariableMismatch,
    #[error("inexact division; remainder {remainder}")]
    InexactDivision { remainder: String },
    #[error("variable {0} has no assigned value")]
    UnassignedVariable(String),
    #[error("element not in the requested span; minimal-length residual term {term} (length {length})")]
    NotInSpan { length: usize, term: String },
    #[error("step distribution not normalised: total mass {total} (defect {defect})")]
    BadNormalization { total: String, defect: String },
    #[error("size cap exceeded: {0}")]
    SizeCap(String),
    #[error("singular parameter value: {0}")]
    Singular(String),
    #[error("internal invariant violated: {0}")]
    Internal(String),
}

pub type Result<T> = std::result::Result<T, Error>;

use thiserror::Error;

use crate::perm::Cell;

pub type Result<T> = std::result::Result<T, Error>;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum Error {
    #[error("index out of range: {0}")]
    Range(String),

    #[error("invalid input: {0}")]
    Validation(String),

    #[error("cell {0} is not contained in {1}")]
    Containment(Cell, &'static str),

    #[error("incomparable pair: {0} is not below {1} in Bruhat order")]
    IncomparablePair(String, String),

    #[error("pattern error: {0}")]
    Pattern(String),

    #[error("no move applies at {0}")]
    MoveNotApplicable(Cell),

    #[error("structure error: {0}")]
    Structure(String),

    #[error("inconsistent rank constraints: {0}")]
    InconsistentConstraints(String),

    #[error("construction failed: {0}")]
    Construction(String),

    #[error("boundary pairing failed: {0}")]
    Pairing(String),

    #[error("no valid path family: {0}")]
    Infeasible(String),

    #[error("diagram is not reachable: {0}")]
    Membership(String),

    #[error("budget of {budget} exceeded after {explored} items")]
    Resource { budget: usize, explored: usize },

    #[error("parse error: {0}")]
    Parse(String),
}

impl Error {
    pub(crate) fn validation(msg: impl Into<String>) -> Self {
        Error::Validation(msg.into())
    }
}

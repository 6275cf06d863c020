use thiserror::Error;

use crate::logic::ParseError;

#[derive(Debug, Error)]
pub enum Error {
    #[error("invalid size {size}: {reason}")]
    InvalidSize { size: usize, reason: &'static str },

    #[error("invalid input: {0}")]
    InvalidInput(String),

    /// A table entry or table shape is malformed.
    #[error("malformed table `{table}` at {coords:?}: {reason}")]
    Structural {
        table: &'static str,
        coords: Vec<usize>,
        reason: String,
    },

    #[error("algebra has {size} elements, above the enumeration bound {bound}")]
    TooLarge { size: usize, bound: usize },

    #[error("element set is not a subalgebra: {0}")]
    NotSubalgebra(String),

    #[error("subalgebra is not m-relatively complete: condition ({condition}) fails at {witness:?}")]
    NotRelativelyComplete {
        condition: &'static str,
        witness: Vec<usize>,
    },

    #[error("not a product-of-chains decomposition: {0}")]
    NotDecomposable(String),

    #[error("precondition violated: {0}")]
    Precondition(String),

    #[error("variable `{0}` has no assigned value")]
    UnassignedVariable(String),

    #[error(transparent)]
    Parse(#[from] ParseError),

    #[error("json: {0}")]
    Json(#[from] serde_json::Error),
}

pub type Result<T, E = Error> = std::result::Result<T, E>;

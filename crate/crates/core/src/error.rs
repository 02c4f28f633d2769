use thiserror::Error;

use crate::expressible::Obstruction;

/// Errors produced by the dependence calculus.
#[derive(Debug, Error)]
pub enum Error {
    #[error("relation ({from}, {to}) closes a cycle")]
    Cycle { from: usize, to: usize },

    #[error("element index {index} out of range for a poset of size {size}")]
    Index { index: usize, size: usize },

    #[error("expected {expected} arguments, found {found}")]
    Arity { expected: usize, found: usize },

    #[error("size {size} exceeds the enumeration limit {limit}")]
    SizeLimit { size: usize, limit: usize },

    #[error("posets of differing sizes: {0:?}")]
    SizeMismatch(Vec<usize>),

    #[error("malformed expression: {0}")]
    MalformedExpression(String),

    #[error("parse error: {0}")]
    Parse(String),

    #[error("the identity is not an inclusion of posets")]
    NotInclusion,

    #[error("poset is not expressible: {0}")]
    NotExpressible(Obstruction),

    #[error("precondition violated: {0}")]
    Precondition(String),

    #[error("not a linear extension: {0}")]
    InvalidExtension(String),

    #[error("negative runtime {0}")]
    NegativeRuntime(String),

    #[error("invalid polygraph: {0}")]
    InvalidPolygraph(String),

    #[error("invalid diagram at stage {stage}: {reason}")]
    InvalidDiagram { stage: usize, reason: String },

    #[error("no value assigned to generator `{0}`")]
    MissingAssignment(String),

    #[error("invalid paths: {0}")]
    InvalidPaths(String),

    #[error(transparent)]
    Json(#[from] serde_json::Error),

    #[error(transparent)]
    Io(#[from] std::io::Error),
}

pub type Result<T, E = Error> = std::result::Result<T, E>;

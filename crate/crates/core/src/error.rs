use thiserror::Error;

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum Error {
    #[error("uniformity must be at least 2, got {0}")]
    Uniformity(usize),

    #[error("edge {edge:?} has {found} vertices, expected {expected}")]
    EdgeArity {
        edge: Vec<u32>,
        expected: usize,
        found: usize,
    },

    #[error("edge {edge:?} repeats a vertex")]
    RepeatedVertex { edge: Vec<u32> },

    #[error("vertex {vertex} out of range for {n} vertices")]
    VertexOutOfRange { vertex: u32, n: usize },

    #[error("duplicate edge {0:?}")]
    DuplicateEdge(Vec<u32>),

    #[error("uniformity mismatch: {0} vs {1}")]
    UniformityMismatch(usize, usize),

    /// A parameter violates a named constraint, e.g. "zycle length must be ≥ 2".
    #[error("{0}")]
    InvalidParameter(String),

    #[error("vertex map is partial: {got} images for {expected} vertices")]
    PartialMap { expected: usize, got: usize },

    #[error("inconsistent pin: {0}")]
    InconsistentPin(String),

    #[error("parse error at {position}: {message}")]
    Parse { position: usize, message: String },
}

pub type Result<T> = std::result::Result<T, Error>;

pub(crate) fn invalid(msg: impl Into<String>) -> Error {
    Error::InvalidParameter(msg.into())
}

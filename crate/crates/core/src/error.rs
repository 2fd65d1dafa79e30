use thiserror::Error;

use crate::bits::CAPACITY;

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum Error {
    #[error("vertex {vertex} out of range for a graph on {order} vertices")]
    VertexOutOfRange { vertex: usize, order: usize },

    #[error("graph order {0} exceeds the capacity of {CAPACITY} vertices")]
    CapacityExceeded(usize),

    #[error("self-loop at vertex {0}")]
    SelfLoop(usize),

    #[error("expected {expected} vertex labels, got {got}")]
    LabelCount { expected: usize, got: usize },

    #[error("duplicate vertex label `{0}`")]
    DuplicateLabel(String),

    #[error("graph contains the triangle {0:?}")]
    NotTriangleFree([usize; 3]),

    #[error("malformed input: {0}")]
    MalformedInput(String),

    #[error("weight {weight} of base vertex {vertex} is negative")]
    NegativeWeight { vertex: usize, weight: i64 },

    #[error("weight vector has {got} entries but the base graph has {expected} vertices")]
    WeightLength { expected: usize, got: usize },

    #[error("base graph is not {0}-regular")]
    NotRegular(usize),

    #[error("connection set is not symmetric: {0} present but its negative is not")]
    AsymmetricConnectionSet(usize),

    #[error("vertex set is not independent: {0} ~ {1}")]
    NotIndependent(usize, usize),

    #[error("vertex set is empty")]
    EmptySet,

    #[error("bad parameters: {0}")]
    BadParams(String),

    #[error("out of range: {0}")]
    OutOfRange(String),

    #[error("infeasible: {0}")]
    Infeasible(String),

    #[error("resource limit exceeded: {0}")]
    ResourceLimit(String),

    #[error("i/o error: {0}")]
    Io(String),
}

impl From<std::io::Error> for Error {
    fn from(e: std::io::Error) -> Self {
        Error::Io(e.to_string())
    }
}

pub type Result<T> = std::result::Result<T, Error>;

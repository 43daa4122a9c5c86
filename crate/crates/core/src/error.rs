use thiserror::Error;

use crate::hypergraph::VertexRef;

pub type Result<T, E = Error> = std::result::Result<T, E>;

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum Error {
    #[error("line {line}: {message}")]
    Parse { line: usize, message: String },

    #[error("part sizes must be nonempty and positive")]
    InvalidPartSizes,

    #[error("edge {edge} has {got} entries, expected {expected}")]
    EdgeArity {
        edge: usize,
        got: usize,
        expected: usize,
    },

    #[error("vertex {vertex} is out of range")]
    VertexOutOfRange { vertex: VertexRef },

    #[error("edges E{first} and E{second} are identical")]
    DuplicateEdge { first: usize, second: usize },

    #[error("edge id {0} is out of range")]
    EdgeOutOfRange(usize),

    #[error("co-degree needs two distinct vertices, got {0} twice")]
    SameVertex(VertexRef),

    #[error("edges E{first} and E{second} are disjoint; hypergraph is not intersecting")]
    NotIntersecting { first: usize, second: usize },

    #[error("no finite field of order {0} is supported (built-in orders: 2, 3, 4, 5, 7, 8, 9)")]
    UnsupportedFieldOrder(usize),

    #[error("cannot pad a {from}-partite hypergraph to {to} parts")]
    PadBelowRank { from: usize, to: usize },

    #[error("unknown built-in instance {0:?} (known: f6, f7)")]
    UnknownInstance(String),

    #[error("lemma hypothesis failed: {0}")]
    Hypothesis(String),

    #[error("invalid search parameters: {0}")]
    SearchParameters(String),

    #[error("checkpoint: {0}")]
    Checkpoint(String),

    #[error("ratio undefined: {0}")]
    Ratio(String),

    #[error("i/o: {0}")]
    Io(String),
}

impl From<std::io::Error> for Error {
    fn from(err: std::io::Error) -> Self {
        Error::Io(err.to_string())
    }
}

use thiserror::Error;

pub type Result<T> = std::result::Result<T, Error>;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum Error {
    #[error("degree-{degree} polyvector paired with {got} indices")]
    DegreeMismatch { degree: usize, got: usize },
    #[error("operator of arity {arity} applied to {got} arguments")]
    ArityMismatch { arity: usize, got: usize },
    #[error("type-1 vertex {vertex} has {star} outgoing edges but its polyvector has degree {degree}")]
    StarDegreeMismatch { vertex: usize, star: usize, degree: usize },
    #[error("graph has {expected} type-1 vertices but {got} polyvectors were supplied")]
    VertexCountMismatch { expected: usize, got: usize },
    #[error("invalid graph: {0}")]
    InvalidGraph(String),
    #[error("G(n, m) needs at least one type-1 vertex")]
    NoSources,
    #[error("graph is not a spanning tree of its vertex set")]
    NotSpanningTree,
    #[error("ordering constraints are not all pairwise; the weight needs Monte Carlo")]
    NonPairwise,
    #[error("invalid configuration space: {0}")]
    InvalidSpace(String),
    #[error("weight of graph {0} is not available")]
    MissingWeight(String),
    #[error("parse error: {0}")]
    Parse(String),
}

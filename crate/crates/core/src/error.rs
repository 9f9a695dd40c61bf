use thiserror::Error;

/// Errors produced by graph construction, parsing and the analysis routines.
#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum Error {
    #[error("graph must have at least one vertex")]
    EmptyGraph,
    #[error("graph has {0} vertices; at most {max} are supported", max = crate::graph::MAX_VERTICES)]
    TooManyVertices(usize),
    #[error("vertex {vertex} out of range for a graph on {n} vertices")]
    VertexOutOfRange { vertex: usize, n: usize },
    #[error("self-loop at vertex {0}")]
    SelfLoop(usize),
    #[error("graph is disconnected")]
    Disconnected,
    #[error("invalid path: {0}")]
    InvalidPath(String),
    #[error("invalid matching: {0}")]
    InvalidMatching(String),
    #[error("graph6: {0}")]
    Graph6(String),
    #[error("edge list line {line}: {message}")]
    EdgeList { line: usize, message: String },
    #[error("{what} is limited to {max} vertices, got {n}")]
    InstanceTooLarge { what: &'static str, n: usize, max: usize },
    #[error("not a leaf-clique: {0}")]
    NotLeafClique(String),
    #[error("certificate does not match graph: {0}")]
    CertificateMismatch(String),
    #[error("{0}")]
    InvalidConfig(String),
}

pub type Result<T, E = Error> = std::result::Result<T, E>;

use thiserror::Error;

/// Errors raised by complex construction and the analyses built on it.
#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum Error {
    #[error("vertex id {id} out of range (complex has {count} vertices)")]
    VertexOutOfRange { id: usize, count: usize },

    #[error("wall id {id} out of range (complex has {count} walls)")]
    WallOutOfRange { id: usize, count: usize },

    #[error("graph has no vertices")]
    Empty,

    #[error("self-loop at vertex {0}")]
    SelfLoop(usize),

    #[error("duplicate edge {0} {1}")]
    DuplicateEdge(usize, usize),

    #[error("graph is disconnected (vertex {0} unreachable from 0)")]
    Disconnected(usize),

    #[error("not a median graph: triple ({0}, {1}, {2}) has {3} medians")]
    NotMedian(usize, usize, usize, usize),

    #[error("wall class of edge {0} {1} does not split the graph into two halfspaces")]
    Structural(usize, usize),

    #[error("precondition violated: {0}")]
    Precondition(String),

    #[error("invalid input: {0}")]
    Input(String),

    #[error("cxc parse error at line {line}: {message}")]
    Parse { line: usize, message: String },

    #[error("hull closure reached the enumeration shell at radius {0}; enlarge the ambient radius")]
    Enlargement(usize),
}

pub type Result<T, E = Error> = std::result::Result<T, E>;

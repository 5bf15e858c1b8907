use thiserror::Error;

pub type Result<T, E = Error> = std::result::Result<T, E>;

#[derive(Debug, Error)]
pub enum Error {
    #[error("vertex {vertex} out of range for a digraph on {n} vertices")]
    VertexOutOfRange { vertex: usize, n: usize },

    #[error("self-loop at vertex {0}")]
    SelfLoop(usize),

    #[error("duplicate arc ({0}, {1})")]
    DuplicateArc(usize, usize),

    #[error("duplicate edge {{{0}, {1}}}")]
    DuplicateEdge(usize, usize),

    #[error("token count {k} out of range for {n} vertices (need 1 <= k <= n - 1)")]
    TokenCountOutOfRange { k: usize, n: usize },

    #[error("size {n} out of range for family `{kind}`")]
    SizeOutOfRange { kind: &'static str, n: usize },

    #[error("{0} vertices exceed the 64-vertex limit of subset masks")]
    TooManyVertices(usize),

    #[error("{0} vertices exceed the 128-vertex limit of the exact solvers")]
    SolverLimit(usize),

    #[error("token digraph would have {0} nodes, over the materialization limit")]
    TooLarge(u64),

    #[error("line {line}: {msg}")]
    Parse { line: usize, msg: String },

    #[error("precondition failed: {0}")]
    Precondition(String),

    #[error(transparent)]
    Io(#[from] std::io::Error),
}

impl Error {
    pub(crate) fn parse(line: usize, msg: impl Into<String>) -> Self {
        Error::Parse {
            line,
            msg: msg.into(),
        }
    }

    pub(crate) fn precondition(msg: impl Into<String>) -> Self {
        Error::Precondition(msg.into())
    }
}

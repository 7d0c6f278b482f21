use thiserror::Error;

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum Error {
    #[error("complete graph needs at least one vertex")]
    EmptyCompleteGraph,
    #[error("not a triangle: {0}-{1}-{2}")]
    NotATriangle(u32, u32, u32),
    #[error("vertex {vertex} has degree {degree}, expected 3")]
    NotAWye { vertex: u32, degree: usize },
    #[error("would create multi-edge {0}-{1}")]
    WouldCreateMultiEdge(u32, u32),
    #[error("invalid graph: {0}")]
    InvalidGraph(String),
    #[error("in Γ̄_△, map undefined")]
    ContainsTriangle,
    #[error("not a cycle set of the host graph: {0}")]
    NotACycleSet(String),
    #[error("replay failed at step {step}: {source}")]
    Replay { step: usize, source: Box<Error> },
    #[error("identity kind mismatch: {0}")]
    KindMismatch(String),
    #[error("weight map host does not match: {0}")]
    HostMismatch(String),
    #[error("could not reach general position after {0} attempts")]
    GeneralPosition(usize),
    #[error("invalid embedding: {0}")]
    InvalidEmbedding(String),
    #[error("no generic projection direction found")]
    NoGenericDirection,
    #[error("Y-contraction failed: {0}")]
    Contraction(String),
    #[error("diagram has {found} components, expected {expected}")]
    ComponentCount { expected: usize, found: usize },
    #[error("invalid diagram: {0}")]
    InvalidDiagram(String),
    #[error("parse error on line {line}: {msg}")]
    Parse { line: usize, msg: String },
}

pub type Result<T> = std::result::Result<T, Error>;

pub(crate) fn parse_err(line: usize, msg: impl Into<String>) -> Error {
    Error::Parse {
        line,
        msg: msg.into(),
    }
}

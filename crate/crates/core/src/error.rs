use thiserror::Error;

pub type Result<T> = std::result::Result<T, Error>;

#[derive(Debug, Error)]
pub enum Error {
    #[error("edge ({u}, {v}) references a vertex outside 0..{n}")]
    VertexOutOfRange { u: usize, v: usize, n: usize },

    #[error("edge ({v}, {v}) is a self-loop")]
    SelfLoop { v: usize },

    #[error("duplicate edge ({u}, {v})")]
    DuplicateEdge { u: usize, v: usize },

    #[error("invalid {family} parameters: {reason}")]
    InvalidParameters { family: &'static str, reason: String },

    #[error("marked vertex {v} is not a vertex of a graph with {n} vertices")]
    UnknownVertex { v: usize, n: usize },

    #[error("graph has no arcs")]
    EmptyGraph,

    #[error("state has {found} amplitudes, expected {expected}")]
    DimensionMismatch { expected: usize, found: usize },

    #[error("state belongs to a different graph")]
    GraphMismatch,

    #[error("no stationary state: bipartite sums {left} \u{2260} {right}")]
    NoStationaryState { left: usize, right: usize },

    #[error(
        "existence test says {exists} but least-squares residual is {residual:e} (tolerance {tolerance:e})"
    )]
    ClassifierDisagreement { exists: bool, residual: f64, tolerance: f64 },

    #[error("vertex {vertex} violates its zero-sum constraint by {residual:e}")]
    ConstraintViolated { vertex: usize, residual: f64 },

    #[error("internal edge ({u}, {v}) has no coefficient")]
    MissingCoefficient { u: usize, v: usize },

    #[error("edge ({u}, {v}) is not an internal edge of the component")]
    ForeignEdge { u: usize, v: usize },

    #[error("assignment leaves no amplitude anywhere; the state cannot be normalized")]
    ZeroState,

    #[error("vertex {vertex} belongs to more than one component")]
    OverlappingComponents { vertex: usize },

    #[error("assignment was built for a different component")]
    ComponentMismatch,

    #[error("direction vector is zero; the maximizer is not unique")]
    ZeroVector,

    #[error("norm drifted to {norm} after step {step}")]
    NormDrift { step: usize, norm: f64 },

    #[error("line {line}: {message}")]
    Parse { line: usize, message: String },

    #[error(transparent)]
    Io(#[from] std::io::Error),
}

impl Error {
    pub(crate) fn parse(line: usize, message: impl Into<String>) -> Self {
        Error::Parse { line, message: message.into() }
    }

    pub(crate) fn invalid(family: &'static str, reason: impl Into<String>) -> Self {
        Error::InvalidParameters { family, reason: reason.into() }
    }
}

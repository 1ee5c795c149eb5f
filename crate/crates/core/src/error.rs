use thiserror::Error;

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum Error {
    #[error("line {line}: {message}")]
    Syntax { line: usize, message: String },

    #[error("line {line}: vertex `{name}` was not declared")]
    UndeclaredVertex { line: usize, name: String },

    #[error("line {line}: vertex `{name}` declared twice")]
    DuplicateVertex { line: usize, name: String },

    #[error("line {line}: duplicate edge {tail} -> {head} labeled {label}")]
    DuplicateEdge {
        line: usize,
        tail: String,
        head: String,
        label: String,
    },

    #[error("line {line}: loop at `{vertex}` requires the #nonsimple header")]
    LoopNotAllowed { line: usize, vertex: String },

    #[error("graph has no vertices")]
    EmptyGraph,

    #[error("graph is disconnected ({components} components); use #allow-disconnected")]
    Disconnected { components: usize },

    #[error("unknown vertex `{0}`")]
    UnknownVertex(String),

    #[error("unknown label `{0}`")]
    UnknownLabel(String),

    #[error("operation requires a simple graph")]
    NonSimpleGraph,

    #[error("label `{label}` does not induce a disjoint union of paths (at vertex `{vertex}`)")]
    AmbiguousPath { label: String, vertex: String },

    #[error("not a Schreier graph: {0}")]
    NotSchreier(String),

    #[error("graph is not uniformly colored")]
    NotUniform,

    #[error("vertex degree {s} differs from the number of labels {p}")]
    DegreeMismatch { s: usize, p: usize },

    #[error("invalid family spec: {0}")]
    InvalidSpec(String),

    #[error("restricted operator has dimension {dim}, above the expansion bound {bound}")]
    DimensionTooLarge { dim: usize, bound: usize },

    #[error("vector length {got} does not match the basis size {expected}")]
    BasisMismatch { expected: usize, got: usize },

    #[error("{0}")]
    Io(String),
}

pub type Result<T> = std::result::Result<T, Error>;

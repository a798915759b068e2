use thiserror::Error;

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum Error {
    #[error("dimension mismatch: expected {expected}, found {found}")]
    DimensionMismatch { expected: usize, found: usize },

    #[error("matrix is not square ({rows}x{cols})")]
    NotSquare { rows: usize, cols: usize },

    #[error("singular input: {0}")]
    Singular(String),

    #[error("triangular algebra needs n >= 2, got {0}")]
    TriangularSize(usize),

    #[error("index ({i},{k}) out of range for n = {n}")]
    IndexOutOfRange { i: usize, k: usize, n: usize },

    #[error("shape mismatch: {0}")]
    Shape(String),

    #[error("shape not in canonical form: {0}")]
    NotCanonical(String),

    #[error("not a Leibniz algebra: {0}")]
    NotLeibniz(String),

    #[error("transformation rejected: {0}")]
    TransformRejected(String),

    #[error("entry {entry}: parameter condition violated: {condition}")]
    ConditionViolated { entry: String, condition: String },

    #[error("unknown catalog entry {0:?}")]
    UnknownEntry(String),

    #[error("parse error: {0}")]
    Parse(String),
}

pub type Result<T, E = Error> = std::result::Result<T, E>;

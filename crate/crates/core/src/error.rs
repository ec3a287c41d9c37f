use thiserror::Error;

pub type Result<T, E = Error> = std::result::Result<T, E>;

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum Error {
    #[error("dimension mismatch in {context}: expected {expected}, found {found}")]
    DimensionMismatch {
        context: String,
        expected: usize,
        found: usize,
    },

    #[error("shape mismatch in {context}: {left:?} vs {right:?}")]
    ShapeMismatch {
        context: String,
        left: (usize, usize),
        right: (usize, usize),
    },

    #[error("linear system has no solution")]
    NoSolution,

    #[error("cannot compose {outer} after {inner}: boundary mismatch")]
    BoundaryMismatch { outer: String, inner: String },

    #[error("invalid morphism: {0}")]
    InvalidMorphism(String),

    #[error("index {index} out of range for {context}")]
    IndexOutOfRange { context: String, index: i64 },

    #[error("{functor} is not defined on {input}")]
    NotInSource { functor: String, input: String },

    #[error("kind mismatch: expected {expected}, found {found}")]
    KindMismatch { expected: String, found: String },

    #[error("module has not been validated")]
    Unvalidated,

    #[error("degree {degree} lies outside the valid window {lo}..={hi}")]
    OutOfWindow { degree: i32, lo: i32, hi: i32 },

    #[error("empty validity window: {0}")]
    EmptyWindow(String),

    #[error("coefficient {coeff} cannot be paired with modules of kind {kind}")]
    IllegalPairing { kind: String, coeff: String },

    #[error("illegal degree shift: {0}")]
    IllegalShift(String),

    #[error("invalid input: {0}")]
    Invalid(String),

    #[error("parse error: {0}")]
    Parse(String),
}

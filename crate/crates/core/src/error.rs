use thiserror::Error;

pub type Result<T> = std::result::Result<T, Error>;

#[derive(Debug, Error)]
pub enum Error {
    #[error("{0} is not a prime below 2^16")]
    NotPrime(u64),

    #[error("entry {value} out of range for GF({modulus})")]
    EntryRange { value: u32, modulus: u32 },

    #[error("dimension mismatch: {0}")]
    Dimension(String),

    #[error("field mismatch: GF({left}) vs GF({right})")]
    FieldMismatch { left: u32, right: u32 },

    #[error("ambient mismatch: {left} vs {right}")]
    AmbientMismatch { left: usize, right: usize },

    #[error("no solution for the requested linear system")]
    NoSolution,

    #[error("unknown element label {0:?}")]
    UnknownLabel(String),

    #[error("duplicate element label {0:?}")]
    DuplicateLabel(String),

    #[error("cannot contract loop {0:?}")]
    LoopContraction(String),

    #[error("schedule step {index} invalid: {reason}")]
    Schedule { index: usize, reason: String },

    #[error("{what} supports at most {limit} elements, got {got}")]
    GuardExceeded {
        what: &'static str,
        limit: usize,
        got: usize,
    },

    #[error("containment violated: {0}")]
    Containment(String),

    #[error("sets are not disjoint: label {0:?} repeats")]
    NotDisjoint(String),

    #[error("decomposition leaves do not match the ground set: {0}")]
    LeafMismatch(String),

    #[error("decomposition tree is malformed: {0}")]
    MalformedTree(String),

    #[error("no valid decomposition within the requested bounds")]
    NoDecomposition,

    #[error("certificate invalid at {path}: {reason}")]
    Certificate { path: String, reason: String },

    #[error("invariant {property} violated at step {step}: {detail}")]
    Invariant {
        property: &'static str,
        step: usize,
        detail: String,
    },

    #[error("embedding frame {path}: {reason}")]
    Frame { path: String, reason: String },

    #[error("parse error at line {line}: {msg}")]
    Parse { line: usize, msg: String },

    #[error("{0}")]
    Input(String),
}

impl Error {
    pub fn parse(line: usize, msg: impl Into<String>) -> Self {
        Error::Parse {
            line,
            msg: msg.into(),
        }
    }
}

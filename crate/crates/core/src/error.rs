use thiserror::Error;

pub type Result<T, E = Error> = std::result::Result<T, E>;

#[derive(Error, Debug, Clone, PartialEq, Eq)]
pub enum Error {
    #[error("{what} budget exceeded: needs {needed}, limit is {limit}")]
    Budget {
        what: &'static str,
        needed: u128,
        limit: u128,
    },
    #[error("generator index {index} out of range for rank {rank}")]
    GeneratorOutOfRange { index: usize, rank: usize },
    #[error("arity mismatch: expected {expected} arguments, got {got}")]
    ArityMismatch { expected: usize, got: usize },
    #[error("invalid input: {0}")]
    Invalid(String),
    #[error("element set is not a subgroup")]
    NotSubgroup,
    #[error("action is not transitive ({orbit} of {degree} points reached)")]
    NotTransitive { orbit: usize, degree: usize },
    #[error("generator images do not define a homomorphism")]
    NotHomomorphism,
    #[error("backend mismatch: expected {expected}, found {found}")]
    BackendMismatch { expected: String, found: String },
    #[error("unsupported for this backend: {0}")]
    Unsupported(String),
    #[error("precondition violated: {0}")]
    Precondition(String),
    #[error("consistency failure: {0}")]
    Consistency(String),
    #[error("parse error at line {line}, column {column}: {message}")]
    Parse {
        line: usize,
        column: usize,
        message: String,
    },
}

impl Error {
    pub(crate) fn budget(
        what: &'static str,
        needed: impl Into<u128>,
        limit: impl Into<u128>,
    ) -> Self {
        Error::Budget {
            what,
            needed: needed.into(),
            limit: limit.into(),
        }
    }

    pub fn invalid(msg: impl Into<String>) -> Self {
        Error::Invalid(msg.into())
    }
}

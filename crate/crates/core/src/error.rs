use thiserror::Error;

/// Errors raised anywhere in the crate.
///
/// Variants are grouped by the exit code the CLI maps them to, see
/// [`Error::exit_code`].
#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum Error {
    #[error("division by zero")]
    DivisionByZero,
    #[error("variable count mismatch: expected {expected}, found {found}")]
    VariableMismatch { expected: usize, found: usize },
    #[error("ideal is not zero-dimensional: no pure power of `{variable}` among leading terms")]
    NotZeroDimensional { variable: String },
    #[error("not local: {0}")]
    NotLocal(String),
    #[error("relation violated: {0}")]
    RelationViolated(String),
    #[error("objects belong to different algebras")]
    AlgebraMismatch,
    #[error("submodules belong to different modules")]
    OwnerMismatch,
    #[error("not a submodule: {0}")]
    NotSubmodule(String),
    #[error("cap exceeded: {what} = {actual} > {limit}")]
    CapExceeded {
        what: String,
        limit: usize,
        actual: usize,
    },
    #[error("no solution at degree {degree}: {reason}")]
    NoSolution { degree: usize, reason: String },
    #[error("ideal J_x is not contained in J_u")]
    NotContained,
    #[error("precondition failed: {0}")]
    PreconditionFailed(String),
    #[error("not a minimal generating set of the maximal ideal: {0}")]
    NotMinimalGenerators(String),
    #[error("hypothesis failed: {0}")]
    HypothesisFailed(String),
    #[error("maximal ideal of the base is not square-zero")]
    NotSquareZero,
    #[error("equivalence disagreement: {0}")]
    Disagreement(String),
    #[error("theorem falsified: {0}")]
    TheoremFalsified(String),
    #[error("parse error: {0}")]
    Parse(String),
    #[error("validation error at {pointer}: {message}")]
    Validation { pointer: String, message: String },
    #[error("i/o error: {0}")]
    Io(String),
}

impl Error {
    pub fn cap(what: impl Into<String>, limit: usize, actual: usize) -> Self {
        Error::CapExceeded {
            what: what.into(),
            limit,
            actual,
        }
    }

    pub fn validation(pointer: impl Into<String>, message: impl Into<String>) -> Self {
        Error::Validation {
            pointer: pointer.into(),
            message: message.into(),
        }
    }

    /// Prefixes a JSON pointer onto parse and validation errors.
    pub fn at(self, pointer: &str) -> Self {
        match self {
            Error::Validation {
                pointer: p,
                message,
            } => Error::Validation {
                pointer: format!("{pointer}{p}"),
                message,
            },
            Error::Parse(message) => Error::Validation {
                pointer: pointer.to_string(),
                message,
            },
            Error::CapExceeded { .. } | Error::TheoremFalsified(_) | Error::Disagreement(_) => self,
            other => Error::Validation {
                pointer: pointer.to_string(),
                message: other.to_string(),
            },
        }
    }

    /// CLI exit code: 1 validation, 2 cap exceeded, 3 theorem falsified.
    pub fn exit_code(&self) -> i32 {
        match self {
            Error::CapExceeded { .. } => 2,
            Error::TheoremFalsified(_) | Error::Disagreement(_) => 3,
            _ => 1,
        }
    }
}

pub type Result<T, E = Error> = std::result::Result<T, E>;

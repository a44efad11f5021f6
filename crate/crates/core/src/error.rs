use thiserror::Error;

/// Errors raised while parsing inputs or validating algebraic structures.
#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum Error {
    #[error("line {line}, column {column}: {message}")]
    Syntax {
        line: usize,
        column: usize,
        message: String,
    },
    #[error("invalid group table: {0}")]
    InvalidGroup(String),
    #[error("group of order {order} exceeds the subgroup cap {cap}")]
    CapExceeded { order: usize, cap: usize },
    #[error("not a subgroup: {0}")]
    NotSubgroup(String),
    #[error("inconsistent linear system")]
    Inconsistent,
    #[error("dimension mismatch: {0}")]
    Dimension(String),
    #[error("group mismatch: {0}")]
    GroupMismatch(String),
    #[error("cyclotomic arithmetic: {0}")]
    Cyclotomic(String),
    #[error("character table: {0}")]
    CharacterTable(String),
    #[error("invalid module: {0}")]
    InvalidModule(String),
    #[error("Mackey functor: {0}")]
    Mackey(String),
    #[error("G-CW complex: {0}")]
    Complex(String),
    #[error("verification failed: {0}")]
    Verification(String),
    #[error("unknown {kind} `{name}`")]
    Unknown { kind: &'static str, name: String },
}

impl Error {
    pub(crate) fn syntax(line: usize, column: usize, message: impl Into<String>) -> Self {
        Error::Syntax {
            line,
            column,
            message: message.into(),
        }
    }
}

pub type Result<T> = std::result::Result<T, Error>;

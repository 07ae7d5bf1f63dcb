use thiserror::Error;

pub type Result<T> = std::result::Result<T, Error>;

/// Which Latin constraint a Sudoku grid violates.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Region {
    Row,
    Column,
    Block,
}

impl std::fmt::Display for Region {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        match self {
            Region::Row => f.write_str("row"),
            Region::Column => f.write_str("column"),
            Region::Block => f.write_str("block"),
        }
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum Error {
    #[error("matrix side {side} is not a perfect square")]
    NotPerfectSquare { side: usize },

    #[error("size mismatch: expected {expected}, found {found}")]
    SizeMismatch { expected: usize, found: usize },

    #[error("invalid argument: {0}")]
    InvalidArgument(String),

    #[error("not a permutation of 1..{len}: {reason}")]
    InvalidPermutation { len: usize, reason: String },

    #[error("not an S-permutation matrix: {0}")]
    NotSPermutation(String),

    #[error(
        "{what} refused for n = {n} (default limit {limit}); \
         estimated search size up to {estimate} candidates; pass --force (or Guard::Force) to override"
    )]
    GuardExceeded {
        what: &'static str,
        n: usize,
        limit: usize,
        estimate: String,
    },

    /// Two parts of a Sudoku family share a 1. Indices are 1-based values.
    #[error("parts A{first} and A{second} are not disjoint (both have a 1 at ({row}, {col}))")]
    NotDisjoint {
        first: usize,
        second: usize,
        row: usize,
        col: usize,
    },

    #[error("{region} {index} contains value {value} {count} times")]
    SudokuViolation {
        region: Region,
        index: usize,
        value: usize,
        count: usize,
    },

    #[error("parse error at line {line}, column {column}: {message}")]
    Parse {
        line: usize,
        column: usize,
        message: String,
    },

    #[error("internal consistency error: {0}")]
    Internal(String),
}

impl Error {
    pub(crate) fn parse(line: usize, column: usize, message: impl Into<String>) -> Self {
        Error::Parse {
            line,
            column,
            message: message.into(),
        }
    }
}

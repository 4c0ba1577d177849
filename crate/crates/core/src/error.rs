use thiserror::Error;

use crate::trees::Position;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
#[error("invalid dyadic rational `{0}`")]
pub struct DyadicParseError(pub String);

/// Failure to read a monomial or alternating-tree expression.
#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum ParseError {
    #[error("syntax error at byte {offset}: {message}")]
    Syntax { offset: usize, message: String },
    #[error("duplicate leaf identifier `{name}` at byte {offset}")]
    DuplicateLeaf { name: String, offset: usize },
    #[error("leaf labels {labels:?} are not a permutation of 1..{arity}")]
    NotAPermutation { labels: Vec<u32>, arity: usize },
    #[error("unknown identifier `{name}` at byte {offset}")]
    UnknownIdentifier { name: String, offset: usize },
}

impl ParseError {
    pub(crate) fn syntax(offset: usize, message: impl Into<String>) -> Self {
        ParseError::Syntax {
            offset,
            message: message.into(),
        }
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum Error {
    #[error(transparent)]
    Parse(#[from] ParseError),
    #[error(transparent)]
    Dyadic(#[from] DyadicParseError),
    #[error("index {index} out of range 1..={len}")]
    IndexOutOfRange { index: usize, len: usize },
    #[error("{what}: {requested} exceeds the configured limit {limit}")]
    LimitExceeded {
        what: &'static str,
        requested: usize,
        limit: usize,
    },
    #[error("position {0} does not address a node")]
    BadPosition(Position),
    #[error("pattern mismatch at {position}: expected {expected}")]
    PatternMismatch {
        position: Position,
        expected: String,
    },
    #[error("rectangle is not a subrectangle of the partition")]
    NotSubrectangle,
    #[error("no {0} main cut in the rectangle")]
    NoMainCut(&'static str),
    #[error("invalid block partition: {0}")]
    InvalidPartition(String),
    #[error("partition is not dyadic (no tree monomial realizes it)")]
    NotDyadic,
    #[error("partition text line {line}: {message}")]
    PartitionText { line: usize, message: String },
    #[error("monomials differ in arity or leaf labels")]
    Incomparable,
    #[error("tree sequence error: {0}")]
    TreeSequence(String),
    #[error("certificate error: {0}")]
    Certificate(String),
}

pub type Result<T, E = Error> = std::result::Result<T, E>;

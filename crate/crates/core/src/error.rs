use thiserror::Error;

/// Precondition violations of the causal-model operations.
#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum ModelError {
    #[error("vector clock length mismatch: {left} vs {right}")]
    ClockLengthMismatch { left: usize, right: usize },

    #[error("states must be distinct: both are state {index} of process {process}", process = process + 1)]
    SameState { process: usize, index: u32 },

    #[error("cut index out of bounds on process {process}: {index} not in 1..={len}", process = process + 1)]
    IndexOutOfBounds { process: usize, index: u32, len: u32 },

    #[error("validity row is empty")]
    EmptyRow,
}

/// Trace text that cannot be turned into a valid computation.
#[derive(Debug, Clone, PartialEq, Eq, Error)]
#[error("line {line}: {message}")]
pub struct ParseError {
    pub line: usize,
    pub message: String,
}

impl ParseError {
    pub(crate) fn new(line: usize, message: impl Into<String>) -> Self {
        Self {
            line,
            message: message.into(),
        }
    }
}

/// Failures of the brute-force reference implementations.
#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum OracleError {
    #[error("instance too large to enumerate: {tuples} index tuples exceed the 2^20 guard")]
    TooLarge { tuples: u128 },
}

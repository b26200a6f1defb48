use thiserror::Error;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum GraphError {
    #[error("graph parameters out of domain: {0}")]
    Domain(String),
    #[error("graph with {0} vertices exceeds the 64-vertex limit")]
    TooLarge(usize),
    #[error("cannot decide whether {0} is a subgraph of {1} without a closed form")]
    Undecided(String, String),
}

#[derive(Debug, Clone, PartialEq, Eq, Error)]
#[error("parse error at offset {offset}: expected {expected}, found {found}")]
pub struct ParseError {
    pub offset: usize,
    pub expected: String,
    pub found: String,
}

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum KbError {
    /// Two derivations produced disjoint intervals for the same pair.
    #[error("contradiction on {pair}: {existing} conflicts with {incoming}")]
    Contradiction {
        pair: String,
        existing: String,
        incoming: String,
    },
    #[error("seed line {line}: {message}")]
    Seed { line: usize, message: String },
    #[error(transparent)]
    Graph(#[from] GraphError),
}

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum CertificateError {
    #[error("line {line}: {message}")]
    Format { line: usize, message: String },
    #[error("edge ({0},{1}) out of range for N={2}")]
    OutOfRange(usize, usize, usize),
    #[error("loop at vertex {0}")]
    Loop(usize),
    #[error("duplicate edge ({0},{1})")]
    Duplicate(usize, usize),
    #[error("N={0} exceeds the 64-vertex limit")]
    TooLarge(usize),
}

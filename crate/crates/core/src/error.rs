use thiserror::Error;

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum Error {
    #[error("invalid parameters: {0}")]
    InvalidParams(String),
    #[error("reduce first: j = {0} is not supported directly, apply the j-reduction")]
    ReduceFirst(u64),
    #[error("not prolongable: {0}")]
    NotProlongable(String),
    #[error("ambiguous fixed point: {0}")]
    Ambiguous(String),
    #[error("not primitive: {0}")]
    NotPrimitive(String),
    #[error("not applicable: {0}")]
    NotApplicable(String),
    #[error("domain error: {0}")]
    Domain(String),
    #[error("parse error: {0}")]
    Parse(String),
    #[error("format error at line {line}: {message}")]
    Format { line: usize, message: String },
    #[error("not a hiccup sequence: {0}")]
    NotHiccup(String),
    #[error("prefix too short: need at least {needed} terms, got {got}")]
    TooShort { needed: usize, got: usize },
    #[error("not a positional system: {0}")]
    NotPositional(String),
    #[error("rejected by automaton: {0}")]
    Rejected(String),
    #[error("precision unreachable: {0}")]
    PrecisionUnreachable(String),
    #[error("precision exhausted at n = {0}")]
    PrecisionExhausted(u64),
    #[error("divergence at n = {0}: remainder is not positive")]
    Divergence(u64),
    #[error("unknown catalog entry {0}")]
    UnknownEntry(String),
}

pub type Result<T> = std::result::Result<T, Error>;

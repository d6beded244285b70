use std::path::PathBuf;

use thiserror::Error;

use crate::rts::ValidationReport;

pub type Result<T, E = Error> = std::result::Result<T, E>;

#[derive(Debug, Error)]
pub enum Error {
    #[error("invalid alphabet: {0}")]
    InvalidAlphabet(String),

    #[error("symbol `{0}` is not in the alphabet")]
    UnknownSymbol(String),

    #[error("alphabet mismatch: {0}")]
    AlphabetMismatch(String),

    #[error("subset construction exceeded the cap of {cap} states")]
    StateCapExceeded { cap: usize },

    #[error("slice of length {length} has {count} configurations, above the cap of {cap}")]
    ConfigCapExceeded { length: usize, count: u128, cap: usize },

    #[error("successor cap of {cap} exceeded at configuration `{config}`")]
    SuccessorCapExceeded { cap: usize, config: String },

    #[error("the system has no `{0}` relation")]
    MissingRelation(&'static str),

    #[error("the goal has no pre-image NFA (`pre_of_goal`)")]
    MissingPreOfGoal,

    #[error("the transition relation is not length-preserving")]
    NotLengthPreserving,

    #[error("padding violation: {0}")]
    Padding(String),

    #[error("not deterministic: {0}")]
    NotDeterministic(String),

    #[error("line {line}: {msg}")]
    Parse { line: usize, msg: String },

    #[error("{path}: {source}")]
    Io {
        path: PathBuf,
        #[source]
        source: std::io::Error,
    },

    #[error("{}", .0.summary())]
    Validation(Box<ValidationReport>),

    #[error("invalid witness: {0}")]
    InvalidWitness(String),

    #[error("invalid argument: {0}")]
    InvalidArgument(String),
}

impl Error {
    pub(crate) fn parse(line: usize, msg: impl Into<String>) -> Self {
        Error::Parse { line, msg: msg.into() }
    }
}

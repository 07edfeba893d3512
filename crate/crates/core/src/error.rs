use thiserror::Error;

/// Errors raised by solvers, constructions and parsers.
#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum Error {
    #[error("arithmetic overflow: {0}")]
    Overflow(String),

    #[error("instance too large: {0}")]
    InstanceTooLarge(String),

    #[error("unsupported arity {arity} (supported: {min}..={max})")]
    UnsupportedArity { arity: usize, min: usize, max: usize },

    #[error("invalid parameter: {0}")]
    Parameter(String),

    #[error("gadget contract violated: {0}")]
    GadgetContract(String),

    #[error("empty instance: {0}")]
    EmptyInstance(String),

    #[error("line {line}: {msg}")]
    Parse { line: usize, msg: String },

    #[error("shape error: {0}")]
    Shape(String),

    #[error("unknown lemma `{0}`")]
    UnknownLemma(String),
}

impl Error {
    pub(crate) fn overflow(what: impl Into<String>) -> Self {
        Error::Overflow(what.into())
    }

    pub(crate) fn parse(line: usize, msg: impl Into<String>) -> Self {
        Error::Parse {
            line,
            msg: msg.into(),
        }
    }
}

pub type Result<T, E = Error> = std::result::Result<T, E>;

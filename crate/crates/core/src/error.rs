use thiserror::Error;

/// Errors raised by the algebra layer and the Betti engines.
#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum Error {
    #[error("syntax error at byte {pos}: {message}")]
    Syntax { pos: usize, message: String },

    #[error("duplicate variable name `{0}`")]
    DuplicateVariable(String),

    #[error("duplicate block name `{0}`")]
    DuplicateBlock(String),

    #[error("unknown variable `{0}`")]
    UnknownVariable(String),

    #[error("unknown block or ring `{0}`")]
    UnknownBlock(String),

    #[error("unknown name `{0}`")]
    UnknownName(String),

    #[error("ring needs at least one variable")]
    EmptyRing,

    #[error("characteristic {0} is neither 0 nor a prime")]
    InvalidCharacteristic(u64),

    #[error("ring mismatch: {0}")]
    RingMismatch(String),

    #[error("operation is undefined on the zero ideal")]
    ZeroIdeal,

    #[error("operation is undefined on the unit ideal")]
    UnitIdeal,

    #[error("containment required but fails: {0}")]
    NotContained(String),

    #[error("quotient does not have finite length")]
    NotFiniteLength,

    #[error("{what} cap exceeded: {value} > {limit}")]
    CapExceeded {
        what: &'static str,
        value: u64,
        limit: u64,
    },

    #[error("invalid argument: {0}")]
    InvalidArgument(String),

    #[error("type error: {0}")]
    Type(String),
}

pub type Result<T, E = Error> = std::result::Result<T, E>;

impl Error {
    pub(crate) fn syntax(pos: usize, message: impl Into<String>) -> Self {
        Error::Syntax {
            pos,
            message: message.into(),
        }
    }

    /// True for cap breaches, which the CLI maps to a dedicated exit code.
    pub fn is_cap(&self) -> bool {
        matches!(self, Error::CapExceeded { .. })
    }
}

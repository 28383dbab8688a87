use thiserror::Error;

/// Errors raised by the algebra engine.
#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum Error {
    #[error("unknown variable `{0}`")]
    UnknownVariable(String),
    #[error("malformed exponent `{0}`")]
    MalformedExponent(String),
    #[error("empty input")]
    EmptyInput,
    #[error("syntax error at column {column}: {message}")]
    Syntax { column: usize, message: String },
    #[error("invalid ring: {0}")]
    InvalidRing(String),
    #[error("operands live in different rings")]
    RingMismatch,
    #[error("length mismatch: {0} vs {1}")]
    LengthMismatch(usize, usize),
    #[error("element does not lie in the ambient free module")]
    AmbientMismatch,
    #[error("input is not homogeneous: {0}")]
    NotHomogeneous(String),
    #[error("degree cap {cap} exceeded while computing {context}")]
    CapExceeded { cap: i64, context: String },
    #[error("empty list of ring elements")]
    EmptyIdeal,
    #[error("not a parameter ideal: {0}")]
    NotParameterIdeal(String),
    #[error("ideal is not primary to the maximal ideal on the module")]
    NotPrimary,
    #[error("dimension {found} is outside the supported range ({required})")]
    Dimension { found: i64, required: String },
    #[error("index out of range: {0}")]
    IndexOutOfRange(String),
    #[error("invalid argument: {0}")]
    InvalidArgument(String),
    #[error("invariant violated: {0}")]
    Invariant(String),
}

pub type Result<T> = std::result::Result<T, Error>;

impl Error {
    pub fn is_cap(&self) -> bool {
        matches!(self, Error::CapExceeded { .. })
    }
}

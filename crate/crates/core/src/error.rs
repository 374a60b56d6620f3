use thiserror::Error;

pub type Result<T> = std::result::Result<T, Error>;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum Error {
    /// The absolute mass of the input exceeds the range in which every
    /// intermediate sum is guaranteed to be exact.
    #[error("arithmetic overflow: absolute input mass exceeds {limit}")]
    Overflow { limit: i64 },

    /// A documented precondition of the operation does not hold.
    #[error("contract violation: {0}")]
    Contract(String),

    /// An exhaustive oracle refused an instance larger than its cap.
    #[error("sequence of length {n} exceeds the exhaustive search limit of {limit}")]
    OracleLimit { n: usize, limit: usize },

    #[error("line {line}, field {field}: {message}")]
    Parse {
        line: usize,
        field: usize,
        message: String,
    },
}

impl Error {
    pub(crate) fn contract(msg: impl Into<String>) -> Self {
        Error::Contract(msg.into())
    }
}

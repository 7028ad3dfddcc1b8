use thiserror::Error;

pub type Result<T, E = Error> = std::result::Result<T, E>;

#[derive(Debug, Clone, PartialEq, Error)]
pub enum Error {
    /// A configuration value is missing, malformed or out of range.
    #[error("invalid configuration `{key}`: {reason}")]
    Config { key: String, reason: String },

    #[error("invalid query {{{u}, {v}}}: {reason}")]
    InvalidQuery { u: usize, v: usize, reason: String },

    #[error("invalid input: {0}")]
    InvalidInput(String),

    /// A numeric argument lies outside the domain of the function.
    #[error("domain error: {0}")]
    Domain(String),

    #[error("sample exceeded the safety cap of {cap} vertices")]
    CapExceeded { cap: usize },

    #[error("instance too large: {size} exceeds the limit of {limit}")]
    TooLarge { size: usize, limit: usize },

    /// An adaptive algorithm broke the query protocol of the reduction harness.
    #[error("protocol violation in round {round}: {reason}")]
    ProtocolViolation { round: usize, reason: String },

    #[error("contract violation: {0}")]
    Contract(String),

    #[error("i/o error: {0}")]
    Io(String),
}

impl From<std::io::Error> for Error {
    fn from(e: std::io::Error) -> Self {
        Error::Io(e.to_string())
    }
}

impl Error {
    pub(crate) fn config(key: &str, reason: impl Into<String>) -> Self {
        Error::Config {
            key: key.to_string(),
            reason: reason.into(),
        }
    }
}

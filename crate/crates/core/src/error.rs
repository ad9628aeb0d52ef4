use thiserror::Error;

pub type Result<T> = std::result::Result<T, Error>;

#[derive(Debug, Clone, PartialEq, Error)]
pub enum Error {
    /// A dense or enumerative operation would exceed its configured size.
    #[error("size limit exceeded: {what} needs {requested}, limit is {limit}")]
    Size {
        what: &'static str,
        requested: usize,
        limit: usize,
    },

    #[error("shape mismatch: expected {expected}, got {got}")]
    Shape { expected: usize, got: usize },

    /// A precondition of the called operation does not hold.
    #[error("contract violated: {0}")]
    Contract(String),

    #[error("domain error: {0}")]
    Domain(String),

    #[error("numerical consistency check failed: {0}")]
    Numerical(String),

    #[error("state is not entangled: Schmidt angle {theta:e} is not above {threshold:e}")]
    NotEntangled { theta: f64, threshold: f64 },

    #[error("schema error in field `{field}`: {reason}")]
    Schema { field: String, reason: String },

    #[error("parse error: {0}")]
    Parse(String),

    #[error("i/o error: {0}")]
    Io(String),
}

impl Error {
    pub(crate) fn contract(msg: impl Into<String>) -> Self {
        Error::Contract(msg.into())
    }

    pub(crate) fn domain(msg: impl Into<String>) -> Self {
        Error::Domain(msg.into())
    }

    pub(crate) fn schema(field: impl Into<String>, reason: impl Into<String>) -> Self {
        Error::Schema {
            field: field.into(),
            reason: reason.into(),
        }
    }
}

impl From<std::io::Error> for Error {
    fn from(e: std::io::Error) -> Self {
        Error::Io(e.to_string())
    }
}

use thiserror::Error;

pub type Result<T, E = Error> = std::result::Result<T, E>;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum Error {
    /// An argument lies outside the domain of the operation.
    #[error("{0}")]
    Domain(String),
    /// The requested enumeration or search exceeds its configured budget.
    #[error("{0}")]
    Resource(String),
    /// An iterative method failed to converge.
    #[error("{0}")]
    Numeric(String),
    /// Operands belong to different extension fields.
    #[error("operands belong to different fields")]
    FieldMismatch,
}

impl Error {
    pub(crate) fn domain(msg: impl Into<String>) -> Self {
        Error::Domain(msg.into())
    }

    pub(crate) fn resource(msg: impl Into<String>) -> Self {
        Error::Resource(msg.into())
    }
}

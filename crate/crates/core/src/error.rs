use thiserror::Error;

pub type Result<T, E = Error> = std::result::Result<T, E>;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum Error {
    /// The modulus is not an odd prime below 2^63.
    #[error("invalid field: {0} is not an odd prime below 2^63")]
    InvalidField(u64),

    /// The element has no multiplicative inverse in the group under consideration.
    #[error("invalid element: {value} is not a unit modulo {modulus}")]
    InvalidElement { value: u64, modulus: u64 },

    #[error("domain error: {0}")]
    Domain(String),

    #[error("degenerate parameter: {0}")]
    DegenerateParameter(String),

    #[error("orbit did not close within {0} steps")]
    BudgetExhausted(usize),
}

impl Error {
    pub(crate) fn domain(msg: impl Into<String>) -> Self {
        Error::Domain(msg.into())
    }
}

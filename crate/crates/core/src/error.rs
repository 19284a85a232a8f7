use thiserror::Error;

/// Errors raised by the numerical routines of this crate.
#[derive(Debug, Clone, PartialEq, Error)]
pub enum Error {
    /// A parameter or input violates a documented precondition.
    #[error("invalid argument: {0}")]
    InvalidArgument(String),

    /// An argument lies outside the domain of a function (Lambert W below -1/e,
    /// a value outside the image of a group generator, ...).
    #[error("domain error: {0}")]
    Domain(String),

    /// The requested mean energy cannot be met by any distribution on the levels.
    #[error("infeasible constraint: {0}")]
    InfeasibleConstraint(String),

    /// A deterministic orbit collapsed onto an absorbing point.
    #[error("degenerate orbit: {0}")]
    DegenerateOrbit(String),
}

impl Error {
    pub(crate) fn invalid(msg: impl Into<String>) -> Self {
        Error::InvalidArgument(msg.into())
    }

    pub(crate) fn domain(msg: impl Into<String>) -> Self {
        Error::Domain(msg.into())
    }
}

pub type Result<T> = std::result::Result<T, Error>;

use thiserror::Error;

pub type Result<T> = std::result::Result<T, Error>;

#[derive(Debug, Clone, Error, PartialEq)]
pub enum Error {
    #[error("parse error: {0}")]
    Parse(String),
    #[error("invalid input: {0}")]
    Invalid(String),
    #[error("budget exceeded: {0}")]
    Budget(String),
    #[error("group mismatch: {0}")]
    GroupMismatch(String),
    #[error("not normal: {0}")]
    NotNormal(String),
    #[error("character lift failed: {0}")]
    LiftFailure(String),
    #[error("numerical failure: {0}")]
    Numerical(String),
    #[error("invariant violated: {0}")]
    Invariant(String),
    #[error("io error: {0}")]
    Io(String),
}

impl Error {
    /// Stable machine-readable name of the variant.
    pub fn kind(&self) -> &'static str {
        match self {
            Error::Parse(_) => "parse",
            Error::Invalid(_) => "invalid",
            Error::Budget(_) => "budget",
            Error::GroupMismatch(_) => "group_mismatch",
            Error::NotNormal(_) => "not_normal",
            Error::LiftFailure(_) => "lift_failure",
            Error::Numerical(_) => "numerical",
            Error::Invariant(_) => "invariant",
            Error::Io(_) => "io",
        }
    }

    pub(crate) fn parse(msg: impl Into<String>) -> Self {
        Error::Parse(msg.into())
    }

    pub(crate) fn invalid(msg: impl Into<String>) -> Self {
        Error::Invalid(msg.into())
    }
}

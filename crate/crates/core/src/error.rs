use thiserror::Error;

pub type Result<T> = std::result::Result<T, Error>;

#[derive(Debug, Clone, PartialEq, Error)]
pub enum Error {
    #[error("invalid q = {0}: expected 0 < q <= 1")]
    InvalidQ(String),
    #[error("q = {0} is outside (0, 1); this operation needs a convergent base")]
    NonConvergentQ(String),
    #[error("constant term is not invertible")]
    NonInvertibleConstantTerm,
    #[error("pole at {0}")]
    PoleAt(String),
    #[error("domain error: {0}")]
    DomainError(String),
    #[error("divergent tail: {0}")]
    DivergentTail(String),
    #[error("invalid argument: {0}")]
    InvalidArgument(String),
    #[error("cannot parse {0:?}")]
    Parse(String),
}

impl Error {
    /// Stable variant name, used as the `error` field of CLI JSON output.
    pub fn name(&self) -> &'static str {
        match self {
            Error::InvalidQ(_) => "InvalidQ",
            Error::NonConvergentQ(_) => "NonConvergentQ",
            Error::NonInvertibleConstantTerm => "NonInvertibleConstantTerm",
            Error::PoleAt(_) => "PoleAt",
            Error::DomainError(_) => "DomainError",
            Error::DivergentTail(_) => "DivergentTail",
            Error::InvalidArgument(_) => "InvalidArgument",
            Error::Parse(_) => "Parse",
        }
    }
}

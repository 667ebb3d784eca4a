use alloc::string::String;

/// Errors produced by the alignment engine.
#[derive(Debug, Clone, PartialEq, thiserror::Error)]
pub enum Error {
    #[error("invalid input: {0}")]
    InvalidInput(String),
    #[error("unknown topic `{0}`")]
    UnknownTopic(String),
    #[error("{count} subsets requested, budget cap is {cap}")]
    BudgetExceeded { count: u128, cap: u128 },
    #[error("base alignment {0} is too close to zero for a relative change")]
    DegenerateBase(f64),
    #[error("null-model mean {0} is too close to one")]
    DegenerateNull(f64),
    #[error("silhouette undefined: {0}")]
    Undefined(String),
    #[error("no grid point produced at least two clusters")]
    NoValidClustering,
}

pub type Result<T> = core::result::Result<T, Error>;

pub(crate) fn invalid(msg: impl Into<String>) -> Error {
    Error::InvalidInput(msg.into())
}

use thiserror::Error;

#[derive(Debug, Error)]
pub enum Error {
    #[error("invalid parameter: {0}")]
    InvalidParameter(String),

    #[error("horizon {n} exceeds the enumeration cap {cap}")]
    HorizonTooLarge { n: usize, cap: usize },

    #[error("exact enumeration needs finite-support laws: {0}")]
    InfiniteSupport(String),

    #[error("path is inconsistent with the environment at step {step}")]
    InconsistentPath { step: usize },

    #[error("resource cap exceeded: {work} step-trials requested, cap is {cap}")]
    ResourceCap { work: u128, cap: u128 },

    #[error("invalid experiment: {0}")]
    InvalidExperiment(String),

    #[error("config error: {0}")]
    Config(String),

    #[error(transparent)]
    Io(#[from] std::io::Error),

    #[error(transparent)]
    Json(#[from] serde_json::Error),

    #[error(transparent)]
    Csv(#[from] csv::Error),
}

pub type Result<T> = std::result::Result<T, Error>;

pub(crate) fn invalid(msg: impl Into<String>) -> Error {
    Error::InvalidParameter(msg.into())
}

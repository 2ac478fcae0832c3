use thiserror::Error;

#[derive(Debug, Error, Clone, PartialEq)]
pub enum CcdError {
    #[error("invalid input: {0}")]
    Input(String),

    #[error("invalid configuration: {0}")]
    Config(String),

    #[error("need at least {needed} points, got {got}")]
    InsufficientPoints { needed: usize, got: usize },

    /// The metric is not defined for the given labelling (e.g. silhouette of
    /// a single cluster).
    #[error("metric undefined: {0}")]
    UndefinedMetric(String),

    #[error("internal invariant violated: {0}")]
    Invariant(String),
}

pub type Result<T> = std::result::Result<T, CcdError>;

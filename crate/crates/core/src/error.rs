use thiserror::Error;

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum Error {
    #[error("parse error: {0}")]
    Parse(String),
    #[error("field mismatch: {0} vs {1}")]
    FieldMismatch(String, String),
    #[error("invalid algebra: {0}")]
    InvalidAlgebra(String),
    #[error("invalid bimodule: {0}")]
    InvalidBimodule(String),
    #[error("incompatible bimodule: {0}")]
    IncompatibleBimodule(String),
    #[error("not a subspace: {0}")]
    NotASubspace(String),
    #[error(
        "degree {degree} too large: differential would have {entries} dense entries (budget {budget})"
    )]
    DegreeTooLarge {
        degree: usize,
        entries: u128,
        budget: u128,
    },
    #[error("cover condition violated: {0}")]
    CoverConditionViolated(String),
    #[error("hypothesis could not be verified: {0}")]
    HypothesisUnverifiable(String),
    #[error("hypothesis does not hold: {0}")]
    HypothesisFailed(String),
    #[error("not a derivation: {0}")]
    NotADerivation(String),
    #[error("block structure violated: {0}")]
    BlockStructureViolated(String),
    #[error("not projective: {0}")]
    NotProjective(String),
    #[error("invalid argument: {0}")]
    InvalidArgument(String),
}

pub type Result<T> = std::result::Result<T, Error>;

use dlat_poset::PosetError;
use thiserror::Error;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum GroundError {
    #[error("{0} is not a prime power")]
    NotPrimePower(u64),
    #[error("{what} {value} exceeds the limit {limit}")]
    SizeLimit {
        what: &'static str,
        value: u64,
        limit: u64,
    },
    #[error("invalid parameter: {0}")]
    InvalidParameter(String),
    #[error("the form is degenerate (Gram matrix has rank {rank} < {dim})")]
    DegenerateForm { rank: usize, dim: usize },
    #[error("the form is not reflexive: {0}")]
    NonReflexive(String),
    #[error("unsupported form: {0}")]
    UnsupportedForm(String),
    #[error("cannot parse structure spec {spec:?}: {reason}")]
    Spec { spec: String, reason: String },
    #[error("cannot read {path}: {reason}")]
    Io { path: String, reason: String },
    #[error("compatibility relation is invalid: {0}")]
    Compatibility(String),
    #[error(transparent)]
    Poset(#[from] PosetError),
}

pub type Result<T> = std::result::Result<T, GroundError>;

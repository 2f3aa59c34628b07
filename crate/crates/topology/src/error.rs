use dlat_poset::PosetError;
use thiserror::Error;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum TopologyError {
    #[error("budget exceeded: more than {limit} {what}")]
    BudgetExceeded { what: &'static str, limit: usize },
    #[error("integer overflow during elimination")]
    Overflow,
    #[error("invalid complex: {0}")]
    InvalidComplex(String),
    #[error("missing fiber for vertex {0:?}")]
    MissingFiber(String),
    #[error(transparent)]
    Poset(#[from] PosetError),
}

pub type Result<T> = std::result::Result<T, TopologyError>;

use dlat_ground::GroundError;
use dlat_poset::PosetError;
use thiserror::Error;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum DecompError {
    #[error("budget of {limit} enumeration nodes exceeded")]
    BudgetExceeded { limit: u64 },
    #[error("unknown element {0:?}")]
    UnknownElement(String),
    #[error("{0:?} is not below {1:?}")]
    NotComparable(String, String),
    #[error("not a partial decomposition: {0}")]
    NotPartial(String),
    #[error(transparent)]
    Ground(#[from] GroundError),
    #[error(transparent)]
    Poset(#[from] PosetError),
}

pub type Result<T> = std::result::Result<T, DecompError>;

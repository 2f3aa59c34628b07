use thiserror::Error;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum PosetError {
    #[error("relation contains a cycle through {0:?}")]
    Cycle(Vec<String>),
    #[error("duplicate label {0:?}")]
    DuplicateLabel(String),
    #[error("index {index} out of range for poset of size {len}")]
    IndexOutOfRange { index: usize, len: usize },
    #[error("elements {0:?} and {1:?} are not comparable")]
    NotComparable(String, String),
    #[error("poset has no unique {0} element")]
    Unbounded(&'static str),
    #[error("map is not order-preserving: {0:?} <= {1:?} but images are not comparable in that order")]
    NotOrderPreserving(String, String),
    #[error("relation is not a partial order: {0}")]
    OrderAxiom(String),
    #[error("unknown label {0:?}")]
    UnknownLabel(String),
    #[error("parse error: {0}")]
    Parse(String),
}

pub type Result<T> = std::result::Result<T, PosetError>;

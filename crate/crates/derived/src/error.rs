use dlat_decomp::DecompError;
use dlat_ground::GroundError;
use dlat_poset::PosetError;
use dlat_topology::TopologyError;
use thiserror::Error;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum DerivedError {
    #[error("no fiber given for vertex {0:?}")]
    MissingFiber(String),
    #[error("structure {0:?} carries no atom basis sets")]
    MissingBases(String),
    #[error("{0}")]
    Inconsistent(String),
    #[error(transparent)]
    Decomp(#[from] DecompError),
    #[error(transparent)]
    Ground(#[from] GroundError),
    #[error(transparent)]
    Poset(#[from] PosetError),
    #[error(transparent)]
    Topology(#[from] TopologyError),
}

pub type Result<T> = std::result::Result<T, DerivedError>;

use dlat_decomp::DecompError;
use dlat_derived::DerivedError;
use dlat_ground::GroundError;
use dlat_poset::PosetError;
use dlat_topology::TopologyError;
use thiserror::Error;

#[derive(Debug, Error)]
pub enum VerifyError {
    #[error("unknown identity {0:?}; run `dlat verify --list` for the registry")]
    UnknownIdentity(String),
    #[error("bad parameter {key}: {reason}")]
    BadParameter { key: String, reason: String },
    #[error("{0}")]
    Usage(String),
    #[error("cannot write {path}: {reason}")]
    Io { path: String, reason: String },
    #[error(transparent)]
    Decomp(#[from] DecompError),
    #[error(transparent)]
    Derived(#[from] DerivedError),
    #[error(transparent)]
    Ground(#[from] GroundError),
    #[error(transparent)]
    Poset(#[from] PosetError),
    #[error(transparent)]
    Topology(#[from] TopologyError),
}

impl VerifyError {
    /// Usage errors exit with status 2, everything else with 1.
    pub fn is_usage(&self) -> bool {
        matches!(
            self,
            VerifyError::UnknownIdentity(_)
                | VerifyError::BadParameter { .. }
                | VerifyError::Usage(_)
                | VerifyError::Ground(GroundError::Spec { .. })
                | VerifyError::Ground(GroundError::NotPrimePower(_))
                | VerifyError::Ground(GroundError::InvalidParameter(_))
        )
    }

    pub(crate) fn param(key: &str, reason: impl Into<String>) -> VerifyError {
        VerifyError::BadParameter {
            key: key.to_string(),
            reason: reason.into(),
        }
    }
}

pub type Result<T> = std::result::Result<T, VerifyError>;

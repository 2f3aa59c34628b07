//! Exact topology of finite simplicial complexes and posets.
//!
//! Reduced conventions throughout: the complex `{∅}` (no vertices) has `χ̃ = -1` and
//! reduced homology `Z` in degree `-1`; a point is acyclic. Homology is computed from the
//! augmented chain complex by Smith normal form over exact integers. Sphericity and
//! Cohen-Macaulay verdicts are homological only.

mod cm;
mod complex;
mod error;
mod euler;
mod homology;
pub mod json;
pub mod snf;

pub use cm::{homological_cm, CmCertificate, CmReport, Interval};
pub use complex::{face_label, order_complex, ComplexDocument, SimplicialComplex};
pub use error::{Result, TopologyError};
pub use euler::{chain_counts, euler_from_counts, mobius_of_bounded_extension, reduced_euler_complex, reduced_euler_poset};
pub use homology::{
    chains_by_dim, homology_complex, homology_of_faces, homology_poset, spherical_verdict, HomologyResult, Ring,
};

/// Default cap on the number of faces or chains materialized for one homology computation.
pub const DEFAULT_FACE_BUDGET: usize = 5_000_000;

//! Finite ground structures: a bounded poset, a symmetric compatibility relation between
//! its elements, and optional basis sets on atoms.
//!
//! Constructors cover Boolean lattices, partition lattices, subspace lattices over finite
//! fields, lattices of flats of uniform matroids, non-degenerate subspace posets of
//! unitary, symplectic and user-supplied formed spaces, and lattices read from JSON.

mod custom;
mod error;
pub mod field;
mod formed;
mod lattices;
pub mod linalg;
mod spec;
mod structure;

pub use custom::{custom_structure, load_lattice, load_lattice_file, load_lattice_str, sample, SAMPLE_NAMES};
pub use error::{GroundError, Result};
pub use field::FiniteField;
pub use formed::{formed_space, Form, FormKind, Involution};
pub use lattices::{
    boolean_lattice, partition_label, partition_lattice, set_label, set_partitions, subspace_lattice,
    uniform_matroid_flats, MAX_BOOLEAN_RANK, MAX_ELEMENTS, MAX_PARTITION_SIZE, MAX_UNIFORM_SIZE,
};
pub use spec::{build_structure, read_gram, StructureSpec};
pub use structure::{GroundStructure, Kind, Metadata};

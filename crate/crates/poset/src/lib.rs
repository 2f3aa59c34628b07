//! Finite posets with canonical labels.
//!
//! A [`Poset`] stores its elements sorted lexicographically by label, so every derived
//! output is reproducible. Comparisons use a dense bit matrix up to [`DENSE_THRESHOLD`]
//! elements. Heights count edges of the longest chain from a minimal element, joins and
//! meets exist only when the bounding set has a unique extremal element, and the Möbius
//! function is computed by its recursion.

mod bits;
mod error;
pub mod io;
pub mod ops;
mod poset;

pub use bits::BitSet;
pub use error::{PosetError, Result};
pub use ops::{direct_product, mapping_cylinder, pair_label, subposet, PosetMap, Selector};
pub use poset::{is_lattice, BoundedPoset, Direction, LatticeVerdict, Poset, DENSE_THRESHOLD};

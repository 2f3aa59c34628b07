//! Decompositions of ground structures: validation, enumeration, the refinement posets,
//! the span map and the exchange-type properties.

mod budget;
mod check;
mod complement;
mod enumerate;
mod error;
mod ops;
mod poset;
mod invariants;
mod properties;

pub use budget::{Budget, DEFAULT_BUDGET};
pub use check::{check_decomposition, is_full_decomposition, parse_parts, Failure, Mode, MAX_PARTS};
pub use complement::{h_complements, phi, sub_h, SubH};
pub use enumerate::{enumerate_decompositions, partial_decompositions, Decomposition};
pub use error::{DecompError, Result};
pub use ops::Ops;
pub use poset::{DecompDocument, DecompKind, DecompPoset};
pub use invariants::*;
pub use properties::*;

//! Objects built on top of decompositions: frame and partial-basis complexes, ordered
//! versions, injective words, the augmented Bergman complex, the Charney poset, and the maps
//! relating them.

mod bergman;
mod error;
mod frames;
mod identities;
mod maps;
mod words;

pub use bergman::{augmented_bergman, span_cylinder, FLAT_PREFIX, FRAME_PREFIX};
pub use error::{DerivedError, Result};
pub use frames::{atom_fibers, frame_complexes, inflate, partial_basis_complexes, FrameComplexes, Inflation};
pub use identities::{
    derangements, inflation_identity, injective_words_identity, ordered_full_identity,
    ordered_partial_identity, EulerCheck,
};
pub use maps::{charney_beta, charney_poset, g_map, MapVerdict};
pub use words::{injective_words, is_subword, ordered_leq, ordered_version, word_label, WordPoset};

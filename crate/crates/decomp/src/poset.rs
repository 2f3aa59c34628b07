//! The posets D, PD and their weak variants, ordered by refinement.

use std::collections::HashMap;
use std::fmt;
use std::str::FromStr;

use dlat_ground::GroundStructure;
use dlat_poset::Poset;
use serde::{Deserialize, Serialize};

use crate::budget::Budget;
use crate::check::Mode;
use crate::enumerate::{enumerate_decompositions, partial_decompositions, Decomposition};
use crate::error::{DecompError, Result};

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum DecompKind {
    /// Full decompositions.
    Full,
    /// Subsets of full decompositions, including the empty set.
    Partial,
    WeakFull,
    WeakPartial,
}

impl DecompKind {
    pub const ALL: [DecompKind; 4] = [
        DecompKind::Full,
        DecompKind::Partial,
        DecompKind::WeakFull,
        DecompKind::WeakPartial,
    ];

    pub fn as_str(self) -> &'static str {
        match self {
            DecompKind::Full => "D",
            DecompKind::Partial => "PD",
            DecompKind::WeakFull => "Dw",
            DecompKind::WeakPartial => "PDw",
        }
    }

    pub fn mode(self) -> Mode {
        match self {
            DecompKind::Full | DecompKind::Partial => Mode::Strict,
            _ => Mode::Weak,
        }
    }

    pub fn is_partial(self) -> bool {
        matches!(self, DecompKind::Partial | DecompKind::WeakPartial)
    }
}

impl fmt::Display for DecompKind {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.as_str())
    }
}

impl FromStr for DecompKind {
    type Err = String;

    fn from_str(s: &str) -> std::result::Result<Self, Self::Err> {
        DecompKind::ALL
            .into_iter()
            .find(|k| k.as_str().eq_ignore_ascii_case(s))
            .ok_or_else(|| format!("unknown decomposition poset {s:?} (expected D, PD, Dw or PDw)"))
    }
}

/// A refinement-ordered set of decompositions; `elements()[i]` is poset element `i`.
#[derive(Clone, Debug)]
pub struct DecompPoset {
    structure: String,
    kind: DecompKind,
    elements: Vec<Decomposition>,
    index: HashMap<Decomposition, usize>,
    poset: Poset,
}

/// Wire format of a decomposition poset.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct DecompDocument {
    pub structure: String,
    pub kind: String,
    pub elements: Vec<Vec<String>>,
    pub covers: Vec<[usize; 2]>,
}

impl DecompPoset {
    pub fn build(gs: &GroundStructure, kind: DecompKind, budget: &Budget) -> Result<DecompPoset> {
        let full = enumerate_decompositions(gs, kind.mode(), budget)?;
        let elements = if kind.is_partial() {
            partial_decompositions(&full, budget)?
        } else {
            full
        };
        DecompPoset::from_elements(gs, kind, elements)
    }

    /// Orders an explicit list of decompositions by refinement.
    pub fn from_elements(
        gs: &GroundStructure,
        kind: DecompKind,
        elements: Vec<Decomposition>,
    ) -> Result<DecompPoset> {
        let labels: Vec<String> = elements.iter().map(|d| d.label(gs)).collect();
        let poset = Poset::from_relation(labels, |i, j| elements[i].refines(&elements[j], gs))?;
        let by_label: HashMap<String, Decomposition> = elements
            .into_iter()
            .map(|d| (d.label(gs), d))
            .collect();
        let elements: Vec<Decomposition> = poset
            .labels()
            .iter()
            .map(|l| by_label[l].clone())
            .collect();
        let index = elements
            .iter()
            .enumerate()
            .map(|(i, d)| (d.clone(), i))
            .collect();
        Ok(DecompPoset {
            structure: gs.name().to_string(),
            kind,
            elements,
            index,
            poset,
        })
    }

    pub fn structure_name(&self) -> &str {
        &self.structure
    }

    pub fn kind(&self) -> DecompKind {
        self.kind
    }

    pub fn poset(&self) -> &Poset {
        &self.poset
    }

    pub fn elements(&self) -> &[Decomposition] {
        &self.elements
    }

    pub fn element(&self, i: usize) -> &Decomposition {
        &self.elements[i]
    }

    pub fn len(&self) -> usize {
        self.elements.len()
    }

    pub fn is_empty(&self) -> bool {
        self.elements.is_empty()
    }

    pub fn index_of(&self, d: &Decomposition) -> Option<usize> {
        self.index.get(d).copied()
    }

    pub fn contains(&self, d: &Decomposition) -> bool {
        self.index.contains_key(d)
    }

    /// Index of the decomposition with the given part labels.
    pub fn find(&self, gs: &GroundStructure, parts: &[&str]) -> Result<usize> {
        let d = Decomposition::new(crate::check::parse_parts(gs, parts)?);
        self.index_of(&d)
            .ok_or_else(|| DecompError::UnknownElement(d.label(gs)))
    }

    /// Number of elements with exactly `k` parts.
    pub fn count_with_parts(&self, k: usize) -> usize {
        self.elements.iter().filter(|d| d.len() == k).count()
    }

    pub fn to_document(&self, gs: &GroundStructure) -> DecompDocument {
        DecompDocument {
            structure: self.structure.clone(),
            kind: self.kind.as_str().to_string(),
            elements: self.elements.iter().map(|d| d.part_labels(gs)).collect(),
            covers: self
                .poset
                .cover_pairs()
                .into_iter()
                .map(|(i, j)| [i, j])
                .collect(),
        }
    }

    pub fn to_json(&self, gs: &GroundStructure) -> String {
        serde_json::to_string(&self.to_document(gs)).expect("documents always serialize")
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use dlat_ground::boolean_lattice;

    #[test]
    fn pd_of_b3() {
        let b = boolean_lattice(3).unwrap();
        let pd = DecompPoset::build(&b, DecompKind::Partial, &Budget::default()).unwrap();
        assert_eq!(pd.len(), 15);
        let empty = pd.index_of(&Decomposition::empty()).unwrap();
        assert_eq!(pd.poset().bottom(), Some(empty));
        let top = pd.find(&b, &["{1,2,3}"]).unwrap();
        assert_eq!(pd.poset().top(), Some(top));
        for (i, d) in pd.elements().iter().enumerate() {
            assert_eq!(pd.poset().label(i), d.label(&b));
        }
    }

    #[test]
    fn kind_round_trip() {
        for k in DecompKind::ALL {
            assert_eq!(k.as_str().parse::<DecompKind>().unwrap(), k);
        }
        assert!("X".parse::<DecompKind>().is_err());
    }
}

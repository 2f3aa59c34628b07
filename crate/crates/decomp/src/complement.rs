//! The span map, the subposet of h-complemented elements and (⊔,h)-complements.

use std::collections::BTreeSet;

use dlat_ground::GroundStructure;
use dlat_poset::Poset;

use crate::enumerate::Decomposition;
use crate::error::{DecompError, Result};
use crate::ops::Ops;

/// Join of the parts of a partial decomposition; the empty set spans the minimum.
pub fn phi(gs: &GroundStructure, tau: &Decomposition) -> Option<usize> {
    Ops::new(gs).join_set(tau.parts())
}

/// Every (⊔,h)-complement of `x` in `y`: elements `w <= y` with `w ∧ x = 0`, `w ∨ x = y`,
/// `h(w) + h(x) = h(y)`, and `w` compatible with `x`.
pub fn h_complements(gs: &GroundStructure, x: usize, y: usize) -> Result<Vec<usize>> {
    complements_with(&Ops::new(gs), x, y)
}

pub(crate) fn complements_with(ops: &Ops<'_>, x: usize, y: usize) -> Result<Vec<usize>> {
    let gs = ops.structure();
    let p = gs.poset();
    for &i in &[x, y] {
        if i >= gs.len() {
            return Err(DecompError::UnknownElement(format!("#{i}")));
        }
    }
    if !p.leq(x, y) {
        return Err(DecompError::NotComparable(
            gs.label(x).to_string(),
            gs.label(y).to_string(),
        ));
    }
    let (hx, hy) = (gs.height(x), gs.height(y));
    let candidates = p.below(y).iter().copied().chain(std::iter::once(y));
    Ok(candidates
        .filter(|&w| {
            gs.height(w) + hx == hy
                && gs.compatible(x, w)
                && ops.meet(w, x) == Some(gs.bottom())
                && ops.join(w, x) == Some(y)
        })
        .collect())
}

/// The subposet of h-complemented elements, computed three ways.
#[derive(Clone, Debug)]
pub struct SubH {
    /// Minimum together with every part of every full decomposition.
    pub from_decompositions: BTreeSet<usize>,
    /// Image of the span map on partial decompositions.
    pub from_phi: BTreeSet<usize>,
    /// Elements with a (⊔,h)-complement in the maximum.
    pub from_complements: BTreeSet<usize>,
    pub poset: Poset,
    /// `poset` index to ground-structure index.
    pub map: Vec<usize>,
}

impl SubH {
    pub fn routes_agree(&self) -> bool {
        self.from_decompositions == self.from_phi && self.from_phi == self.from_complements
    }

    pub fn len(&self) -> usize {
        self.map.len()
    }

    pub fn is_empty(&self) -> bool {
        self.map.is_empty()
    }
}

/// Computes the h-complemented subposet from the full and partial decompositions.
pub fn sub_h(gs: &GroundStructure, full: &[Decomposition], partial: &[Decomposition]) -> SubH {
    let ops = Ops::new(gs);
    let mut from_decompositions: BTreeSet<usize> = full.iter().flat_map(|d| d.parts().iter().copied()).collect();
    from_decompositions.insert(gs.bottom());
    let from_phi: BTreeSet<usize> = partial.iter().filter_map(|t| ops.join_set(t.parts())).collect();
    let from_complements: BTreeSet<usize> = (0..gs.len())
        .filter(|&x| {
            complements_with(&ops, x, gs.top())
                .map(|c| !c.is_empty())
                .unwrap_or(false)
        })
        .collect();
    let keep: Vec<usize> = from_decompositions.iter().copied().collect();
    let (poset, map) = gs.poset().induced(&keep);
    SubH {
        from_decompositions,
        from_phi,
        from_complements,
        poset,
        map,
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use dlat_ground::{boolean_lattice, subspace_lattice};

    #[test]
    fn boolean_complement_is_set_complement() {
        let b = boolean_lattice(3).unwrap();
        let x = b.index_of("{1}").unwrap();
        let c = h_complements(&b, x, b.top()).unwrap();
        assert_eq!(c, vec![b.index_of("{2,3}").unwrap()]);
        assert!(h_complements(&b, b.top(), x).is_err());
    }

    #[test]
    fn plane_lines_have_two_complements() {
        let s = subspace_lattice(2, 2).unwrap();
        let line = s.atoms()[0];
        assert_eq!(h_complements(&s, line, s.top()).unwrap().len(), 2);
    }

    #[test]
    fn phi_of_empty_is_bottom() {
        let b = boolean_lattice(2).unwrap();
        assert_eq!(phi(&b, &Decomposition::empty()), Some(b.bottom()));
    }
}

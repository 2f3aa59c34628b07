//! Frame complexes, inflation and partial bases.

use std::collections::BTreeMap;

use dlat_decomp::Analysis;
use dlat_ground::GroundStructure;
use dlat_poset::pair_label;
use dlat_topology::SimplicialComplex;

use crate::error::{DerivedError, Result};

/// The complexes of partial frames and of frames contained in full frames.
#[derive(Clone, Debug)]
pub struct FrameComplexes {
    pub partial: SimplicialComplex,
    pub full: SimplicialComplex,
    /// Number of full frames (facets of `full` of size equal to the rank).
    pub full_frames: usize,
}

impl FrameComplexes {
    pub fn coincide(&self) -> bool {
        self.partial == self.full
    }
}

fn is_atom(gs: &GroundStructure, x: usize) -> bool {
    gs.height(x) == 1
}

fn atom_complex(gs: &GroundStructure, sets: Vec<&[usize]>) -> Result<SimplicialComplex> {
    if sets.is_empty() {
        return Ok(SimplicialComplex::empty());
    }
    let atoms = gs.atoms();
    let labels: Vec<String> = atoms.iter().map(|&a| gs.label(a).to_string()).collect();
    let pos: BTreeMap<usize, u32> = atoms.iter().enumerate().map(|(i, &a)| (a, i as u32)).collect();
    let faces = sets
        .into_iter()
        .map(|s| s.iter().map(|x| pos[x]).collect())
        .collect();
    Ok(SimplicialComplex::from_faces_pruned(labels, faces)?)
}

/// PF: nonempty partial decompositions made of atoms; F: those inside a full frame.
pub fn frame_complexes(an: &Analysis<'_>) -> Result<FrameComplexes> {
    let gs = an.structure();
    let atoms_only = |parts: &[usize]| !parts.is_empty() && parts.iter().all(|&x| is_atom(gs, x));
    let partial: Vec<&[usize]> = an
        .partial()
        .elements()
        .iter()
        .map(|d| d.parts())
        .filter(|p| atoms_only(p))
        .collect();
    let full: Vec<&[usize]> = an
        .full()
        .elements()
        .iter()
        .map(|d| d.parts())
        .filter(|p| atoms_only(p))
        .collect();
    let full_frames = full.len();
    Ok(FrameComplexes {
        partial: atom_complex(gs, partial)?,
        full: atom_complex(gs, full)?,
        full_frames,
    })
}

/// An inflation complex together with its deflation map.
#[derive(Clone, Debug)]
pub struct Inflation {
    pub complex: SimplicialComplex,
    /// For each vertex `(x,a)`, the index of `x` in the deflated complex.
    pub deflation: Vec<u32>,
}

/// Replaces each vertex `x` of `k` by the points of `fibers[x]`; simplices choose at most
/// one point over each vertex of a simplex of `k`. Vertices are labelled `(x,a)`.
pub fn inflate(k: &SimplicialComplex, fibers: &BTreeMap<String, Vec<String>>) -> Result<Inflation> {
    let mut labels = Vec::new();
    let mut deflation = Vec::new();
    let mut first = Vec::with_capacity(k.num_vertices());
    for (i, x) in k.vertices().iter().enumerate() {
        let fiber = fibers
            .get(x)
            .filter(|f| !f.is_empty())
            .ok_or_else(|| DerivedError::MissingFiber(x.clone()))?;
        first.push(labels.len() as u32);
        for a in fiber {
            labels.push(pair_label(x, a));
            deflation.push(i as u32);
        }
    }
    let size = |v: u32| fibers[&k.vertices()[v as usize]].len() as u32;
    let mut facets = Vec::new();
    for f in k.facets() {
        let mut choice = vec![0u32; f.len()];
        loop {
            facets.push(f.iter().zip(&choice).map(|(&v, &c)| first[v as usize] + c).collect::<Vec<u32>>());
            let mut pos = 0;
            while pos < f.len() {
                choice[pos] += 1;
                if choice[pos] < size(f[pos]) {
                    break;
                }
                choice[pos] = 0;
                pos += 1;
            }
            if pos == f.len() {
                break;
            }
        }
    }
    let complex = if facets.is_empty() {
        SimplicialComplex::empty()
    } else {
        SimplicialComplex::new(labels, facets)?
    };
    Ok(Inflation { complex, deflation })
}

/// Atom basis sets keyed by atom label.
pub fn atom_fibers(gs: &GroundStructure) -> Result<BTreeMap<String, Vec<String>>> {
    let bases = gs
        .atom_bases()
        .ok_or_else(|| DerivedError::MissingBases(gs.name().to_string()))?;
    Ok(bases
        .iter()
        .map(|(&a, b)| (gs.label(a).to_string(), b.clone()))
        .collect())
}

/// `(PB, B)`: inflations of PF and F by the structure's atom basis sets.
pub fn partial_basis_complexes(an: &Analysis<'_>, frames: &FrameComplexes) -> Result<(Inflation, Inflation)> {
    let fibers = atom_fibers(an.structure())?;
    Ok((inflate(&frames.partial, &fibers)?, inflate(&frames.full, &fibers)?))
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn single_vertex_inflates_to_points() {
        let k = SimplicialComplex::simplex(vec!["v"]);
        let fibers = BTreeMap::from([("v".to_string(), vec!["1".into(), "2".into(), "3".into()])]);
        let inf = inflate(&k, &fibers).unwrap();
        assert_eq!(inf.complex.num_vertices(), 3);
        assert_eq!(inf.complex.facets().len(), 3);
        assert_eq!(inf.deflation, vec![0, 0, 0]);
    }

    #[test]
    fn missing_fiber() {
        let k = SimplicialComplex::simplex(vec!["v", "w"]);
        let fibers = BTreeMap::from([("v".to_string(), vec!["1".into()])]);
        assert!(matches!(inflate(&k, &fibers), Err(DerivedError::MissingFiber(w)) if w == "w"));
    }
}

//! The augmented Bergman complex and the mapping cylinder it is compared with.

use std::collections::HashMap;
use std::sync::Arc;

use dlat_decomp::Analysis;
use dlat_poset::{mapping_cylinder, Poset, PosetMap};
use dlat_topology::{face_label, SimplicialComplex};

use crate::error::{DerivedError, Result};
use crate::frames::FrameComplexes;

pub const FRAME_PREFIX: &str = "frm:";
pub const FLAT_PREFIX: &str = "flt:";

/// Simplices `σ ∪ {x_1 < … < x_r}` with `σ` a frame face (possibly empty) and
/// `Φ(σ) <= x_1`, the `x_i` ranging over the base poset without its maximum.
pub fn augmented_bergman(an: &Analysis<'_>, frames: &FrameComplexes, budget: usize) -> Result<SimplicialComplex> {
    let gs = an.structure();
    let p = gs.poset();
    let f = &frames.full;
    let nf = f.num_vertices() as u32;
    let mut labels: Vec<String> = f.vertices().iter().map(|v| format!("{FRAME_PREFIX}{v}")).collect();
    let flats: Vec<usize> = (0..gs.len()).filter(|&x| x != gs.top()).collect();
    labels.extend(flats.iter().map(|&x| format!("{FLAT_PREFIX}{}", gs.label(x))));
    let flat_vertex = |x: usize| nf + flats.binary_search(&x).expect("non-maximal element") as u32;
    let atom_of = |v: u32| gs.index_of(&f.vertices()[v as usize]).expect("frame vertices are atoms");

    let mut faces: Vec<Vec<u32>> = vec![Vec::new()];
    faces.extend(f.faces_by_dim(budget)?.into_iter().flatten());
    let mut out = Vec::new();
    for sigma in faces {
        let parts: Vec<usize> = sigma.iter().map(|&v| atom_of(v)).collect();
        let span = an
            .ops()
            .join_set(&parts)
            .ok_or_else(|| DerivedError::Inconsistent("a frame has no join".to_string()))?;
        let (above, map) = p.filter(|x| x != gs.top() && p.leq(span, x));
        let chains = maximal_chains(&above, budget)?;
        if chains.is_empty() {
            out.push(sigma.clone());
        }
        for chain in chains {
            let mut face = sigma.clone();
            face.extend(chain.into_iter().map(|c| flat_vertex(map[c])));
            out.push(face);
        }
        if out.len() > budget {
            return Err(DerivedError::Topology(dlat_topology::TopologyError::BudgetExceeded {
                what: "Bergman faces",
                limit: budget,
            }));
        }
    }
    Ok(SimplicialComplex::from_faces_pruned(labels, out)?)
}

fn maximal_chains(p: &Poset, budget: usize) -> Result<Vec<Vec<usize>>> {
    if p.is_empty() {
        return Ok(Vec::new());
    }
    let oc = dlat_topology::order_complex(p, budget)?;
    Ok(oc
        .facets()
        .iter()
        .map(|f| f.iter().map(|&v| v as usize).collect())
        .collect())
}

/// Mapping cylinder of the span map from nonempty frames to the base poset, with the
/// maximum removed.
pub fn span_cylinder(an: &Analysis<'_>, frames: &FrameComplexes, budget: usize) -> Result<Poset> {
    let gs = an.structure();
    let f = &frames.full;
    let faces = f.face_poset(budget)?;
    let by_label: HashMap<String, Vec<u32>> = f
        .faces_by_dim(budget)?
        .into_iter()
        .flatten()
        .map(|face| (face_label(f.vertices(), &face), face))
        .collect();
    let image = (0..faces.len())
        .map(|i| {
            let parts: Vec<usize> = by_label[faces.label(i)]
                .iter()
                .map(|&v| gs.index_of(&f.vertices()[v as usize]).expect("frame vertices are atoms"))
                .collect();
            an.ops()
                .join_set(&parts)
                .ok_or_else(|| DerivedError::Inconsistent("a frame has no join".to_string()))
        })
        .collect::<Result<Vec<_>>>()?;
    let phi = PosetMap::new(Arc::new(faces), Arc::new(gs.poset().clone()), image)?;
    Ok(mapping_cylinder(&phi, true)?)
}

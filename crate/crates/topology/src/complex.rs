//! Finite abstract simplicial complexes stored by their facets.

use std::collections::{BTreeMap, HashSet};

use dlat_poset::Poset;
use serde::{Deserialize, Serialize};

use crate::error::{Result, TopologyError};

/// A simplicial complex given by its maximal faces. The complex with no vertices is the
/// complex `{∅}` whose only face is the empty simplex.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct SimplicialComplex {
    vertices: Vec<String>,
    facets: Vec<Vec<u32>>,
}

/// Wire format `{"vertices": [...], "facets": [[i, ...], ...]}`.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct ComplexDocument {
    pub vertices: Vec<String>,
    pub facets: Vec<Vec<u32>>,
}

/// Label of a face: its vertex labels in index order, comma-separated, in braces.
pub fn face_label(labels: &[String], face: &[u32]) -> String {
    let parts: Vec<&str> = face.iter().map(|&v| labels[v as usize].as_str()).collect();
    format!("{{{}}}", parts.join(","))
}

fn keep_maximal(mut sets: Vec<Vec<u32>>, n: usize) -> Vec<Vec<u32>> {
    for s in &mut sets {
        s.sort_unstable();
        s.dedup();
    }
    sets.sort_by(|a, b| b.len().cmp(&a.len()).then_with(|| a.cmp(b)));
    sets.dedup();
    let mut kept: Vec<Vec<u32>> = Vec::new();
    let mut by_vertex: Vec<Vec<usize>> = vec![Vec::new(); n];
    for s in sets {
        let contained = match s.iter().min_by_key(|&&v| by_vertex[v as usize].len()) {
            None => !kept.is_empty(),
            Some(&rare) => by_vertex[rare as usize].iter().any(|&k| {
                let f = &kept[k];
                s.iter().all(|v| f.binary_search(v).is_ok())
            }),
        };
        if !contained && !s.is_empty() {
            for &v in &s {
                by_vertex[v as usize].push(kept.len());
            }
            kept.push(s);
        }
    }
    kept.sort();
    kept
}

impl SimplicialComplex {
    /// Builds the complex generated by `faces`, keeping only maximal ones. Every vertex must
    /// occur in some face.
    pub fn new<S: Into<String>>(vertices: Vec<S>, faces: Vec<Vec<u32>>) -> Result<SimplicialComplex> {
        let vertices: Vec<String> = vertices.into_iter().map(Into::into).collect();
        let n = vertices.len();
        let mut seen = vec![false; n];
        for f in &faces {
            for &v in f {
                let slot = seen.get_mut(v as usize).ok_or_else(|| {
                    TopologyError::InvalidComplex(format!("vertex index {v} out of range"))
                })?;
                *slot = true;
            }
        }
        if let Some(v) = seen.iter().position(|s| !s) {
            return Err(TopologyError::InvalidComplex(format!(
                "vertex {:?} lies in no face",
                vertices[v]
            )));
        }
        let mut unique = HashSet::new();
        for v in &vertices {
            if !unique.insert(v) {
                return Err(TopologyError::InvalidComplex(format!("duplicate vertex {v:?}")));
            }
        }
        let facets = keep_maximal(faces, n);
        Ok(SimplicialComplex { vertices, facets })
    }

    /// Like [`SimplicialComplex::new`], dropping vertices that lie in no face.
    pub fn from_faces_pruned<S: Into<String>>(vertices: Vec<S>, faces: Vec<Vec<u32>>) -> Result<SimplicialComplex> {
        let vertices: Vec<String> = vertices.into_iter().map(Into::into).collect();
        let mut used = vec![false; vertices.len()];
        for f in &faces {
            for &v in f {
                if let Some(u) = used.get_mut(v as usize) {
                    *u = true;
                }
            }
        }
        let mut remap = vec![u32::MAX; vertices.len()];
        let mut kept = Vec::new();
        for (i, v) in vertices.into_iter().enumerate() {
            if used[i] {
                remap[i] = kept.len() as u32;
                kept.push(v);
            }
        }
        let faces = faces
            .into_iter()
            .map(|f| f.into_iter().map(|v| remap.get(v as usize).copied().unwrap_or(u32::MAX)).collect())
            .collect();
        SimplicialComplex::new(kept, faces)
    }

    /// The complex `{∅}`.
    pub fn empty() -> SimplicialComplex {
        SimplicialComplex {
            vertices: Vec::new(),
            facets: Vec::new(),
        }
    }

    /// The full simplex on the given vertices.
    pub fn simplex<S: Into<String>>(vertices: Vec<S>) -> SimplicialComplex {
        let vertices: Vec<String> = vertices.into_iter().map(Into::into).collect();
        let facets = if vertices.is_empty() {
            Vec::new()
        } else {
            vec![(0..vertices.len() as u32).collect()]
        };
        SimplicialComplex { vertices, facets }
    }

    pub fn vertices(&self) -> &[String] {
        &self.vertices
    }

    pub fn num_vertices(&self) -> usize {
        self.vertices.len()
    }

    pub fn vertex_index(&self, label: &str) -> Option<u32> {
        self.vertices.iter().position(|v| v == label).map(|i| i as u32)
    }

    pub fn facets(&self) -> &[Vec<u32>] {
        &self.facets
    }

    /// Dimension; `-1` for `{∅}`.
    pub fn dim(&self) -> i64 {
        self.facets.iter().map(|f| f.len() as i64 - 1).max().unwrap_or(-1)
    }

    pub fn is_pure(&self) -> bool {
        let d = self.dim();
        self.facets.iter().all(|f| f.len() as i64 - 1 == d)
    }

    /// Membership test for a (sorted or unsorted) face.
    pub fn contains(&self, face: &[u32]) -> bool {
        face.is_empty()
            || self
                .facets
                .iter()
                .any(|f| face.iter().all(|v| f.binary_search(v).is_ok()))
    }

    /// Every nonempty face, grouped by dimension (index 0 holds the vertices). Fails when the
    /// number of faces would exceed `budget`.
    pub fn faces_by_dim(&self, budget: usize) -> Result<Vec<Vec<Vec<u32>>>> {
        let d = self.dim();
        if d < 0 {
            return Ok(Vec::new());
        }
        let mut levels: Vec<HashSet<Vec<u32>>> = vec![HashSet::new(); d as usize + 1];
        let mut total = 0usize;
        for f in &self.facets {
            let k = f.len();
            if k >= 63 {
                return Err(TopologyError::BudgetExceeded { what: "faces", limit: budget });
            }
            for mask in 1u64..(1u64 << k) {
                let face: Vec<u32> = (0..k).filter(|i| mask & (1 << i) != 0).map(|i| f[i]).collect();
                let level = face.len() - 1;
                if levels[level].insert(face) {
                    total += 1;
                    if total > budget {
                        return Err(TopologyError::BudgetExceeded { what: "faces", limit: budget });
                    }
                }
            }
        }
        Ok(levels
            .into_iter()
            .map(|s| {
                let mut v: Vec<Vec<u32>> = s.into_iter().collect();
                v.sort();
                v
            })
            .collect())
    }

    /// Number of faces of each dimension `0..=dim`.
    pub fn face_counts(&self, budget: usize) -> Result<Vec<u64>> {
        Ok(self.faces_by_dim(budget)?.iter().map(|l| l.len() as u64).collect())
    }

    /// `Lk(σ) = {τ : τ ∩ σ = ∅, τ ∪ σ ∈ K}`; the link of a facet is `{∅}`.
    pub fn link(&self, face: &[u32]) -> Result<SimplicialComplex> {
        let mut sigma = face.to_vec();
        sigma.sort_unstable();
        let rests: Vec<Vec<u32>> = self
            .facets
            .iter()
            .filter(|f| sigma.iter().all(|v| f.binary_search(v).is_ok()))
            .map(|f| f.iter().copied().filter(|v| sigma.binary_search(v).is_err()).collect())
            .collect();
        if rests.is_empty() {
            return Err(TopologyError::InvalidComplex(format!(
                "{} is not a face",
                face_label(&self.vertices, &sigma)
            )));
        }
        SimplicialComplex::from_faces_pruned(self.vertices.clone(), rests)
    }

    /// The join `A * B`; vertices are prefixed `l:` and `r:`.
    pub fn join(&self, other: &SimplicialComplex) -> SimplicialComplex {
        let n = self.vertices.len() as u32;
        let mut vertices: Vec<String> = self.vertices.iter().map(|v| format!("l:{v}")).collect();
        vertices.extend(other.vertices.iter().map(|v| format!("r:{v}")));
        let left: Vec<Vec<u32>> = if self.facets.is_empty() { vec![Vec::new()] } else { self.facets.clone() };
        let right: Vec<Vec<u32>> = if other.facets.is_empty() { vec![Vec::new()] } else { other.facets.clone() };
        let mut facets = Vec::new();
        for a in &left {
            for b in &right {
                let mut f = a.clone();
                f.extend(b.iter().map(|v| v + n));
                if !f.is_empty() {
                    facets.push(f);
                }
            }
        }
        facets.sort();
        SimplicialComplex { vertices, facets }
    }

    /// Poset of nonempty faces ordered by inclusion.
    pub fn face_poset(&self, budget: usize) -> Result<Poset> {
        let faces: Vec<Vec<u32>> = self.faces_by_dim(budget)?.into_iter().flatten().collect();
        let labels: Vec<String> = faces.iter().map(|f| face_label(&self.vertices, f)).collect();
        let index: std::collections::HashMap<&[u32], usize> =
            faces.iter().enumerate().map(|(i, f)| (f.as_slice(), i)).collect();
        let mut covers = Vec::new();
        for (i, f) in faces.iter().enumerate() {
            if f.len() < 2 {
                continue;
            }
            for skip in 0..f.len() {
                let sub: Vec<u32> = f.iter().enumerate().filter(|&(j, _)| j != skip).map(|(_, &v)| v).collect();
                covers.push((index[sub.as_slice()], i));
            }
        }
        Ok(Poset::new(labels, &covers)?)
    }

    /// Restricts to the faces all of whose vertices satisfy `keep`.
    pub fn induced(&self, keep: impl Fn(u32) -> bool) -> Result<SimplicialComplex> {
        let faces: Vec<Vec<u32>> = self
            .facets
            .iter()
            .map(|f| f.iter().copied().filter(|&v| keep(v)).collect())
            .filter(|f: &Vec<u32>| !f.is_empty())
            .collect();
        SimplicialComplex::from_faces_pruned(self.vertices.clone(), faces)
    }

    pub fn to_document(&self) -> ComplexDocument {
        ComplexDocument {
            vertices: self.vertices.clone(),
            facets: self.facets.clone(),
        }
    }

    pub fn from_document(doc: &ComplexDocument) -> Result<SimplicialComplex> {
        SimplicialComplex::new(doc.vertices.clone(), doc.facets.clone())
    }

    /// Vertex degrees: number of facets through each vertex.
    pub fn facet_degrees(&self) -> BTreeMap<u32, usize> {
        let mut out = BTreeMap::new();
        for f in &self.facets {
            for &v in f {
                *out.entry(v).or_insert(0) += 1;
            }
        }
        out
    }
}

/// Order complex `Δ(P)`: vertices are the elements, faces the nonempty chains. Facets are
/// the maximal chains.
pub fn order_complex(p: &Poset, budget: usize) -> Result<SimplicialComplex> {
    let mut facets: Vec<Vec<u32>> = Vec::new();
    let mut stack: Vec<u32> = Vec::new();
    fn walk(p: &Poset, x: usize, stack: &mut Vec<u32>, out: &mut Vec<Vec<u32>>, budget: usize) -> Result<()> {
        stack.push(x as u32);
        let ups = p.upper_covers(x);
        if ups.is_empty() {
            let mut f = stack.clone();
            f.sort_unstable();
            out.push(f);
            if out.len() > budget {
                return Err(TopologyError::BudgetExceeded { what: "maximal chains", limit: budget });
            }
        }
        for &y in ups {
            walk(p, y, stack, out, budget)?;
        }
        stack.pop();
        Ok(())
    }
    for x in p.minimal_elements() {
        walk(p, x, &mut stack, &mut facets, budget)?;
    }
    facets.sort();
    Ok(SimplicialComplex {
        vertices: p.labels().to_vec(),
        facets,
    })
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn maximal_faces_only() {
        let k = SimplicialComplex::new(vec!["a", "b", "c"], vec![vec![0, 1], vec![0], vec![1, 2], vec![2, 1]]).unwrap();
        assert_eq!(k.facets(), &[vec![0, 1], vec![1, 2]]);
        assert_eq!(k.face_counts(100).unwrap(), vec![3, 2]);
        assert!(SimplicialComplex::new(vec!["a", "b"], vec![vec![0]]).is_err());
    }

    #[test]
    fn link_of_vertex_and_facet() {
        let k = SimplicialComplex::new(vec!["a", "b", "c"], vec![vec![0, 1], vec![1, 2], vec![0, 2]]).unwrap();
        let l = k.link(&[0]).unwrap();
        assert_eq!(l.num_vertices(), 2);
        assert_eq!(l.dim(), 0);
        assert_eq!(k.link(&[0, 1]).unwrap(), SimplicialComplex::empty());
        assert!(k.link(&[0, 1, 2]).is_err());
    }

    #[test]
    fn antichain_order_complex() {
        let p = Poset::new(vec!["x", "y", "z"], &[]).unwrap();
        let k = order_complex(&p, 100).unwrap();
        assert_eq!(k.facets().len(), 3);
        assert_eq!(k.dim(), 0);
    }
}

//! Reduced simplicial homology over the integers or the rationals.

use std::collections::{BTreeMap, HashMap};

use dlat_poset::Poset;
use num_bigint::BigInt;
use serde::{Deserialize, Serialize};

use crate::complex::SimplicialComplex;
use crate::error::{Result, TopologyError};
use crate::snf::{smith_invariants_exact, SparseMatrix};

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub enum Ring {
    #[serde(rename = "Z")]
    Integers,
    #[serde(rename = "Q")]
    Rationals,
}

impl std::str::FromStr for Ring {
    type Err = String;
    fn from_str(s: &str) -> std::result::Result<Ring, String> {
        match s {
            "Z" | "z" => Ok(Ring::Integers),
            "Q" | "q" => Ok(Ring::Rationals),
            other => Err(format!("unknown ring {other:?}, expected Z or Q")),
        }
    }
}

impl std::fmt::Display for Ring {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        f.write_str(match self {
            Ring::Integers => "Z",
            Ring::Rationals => "Q",
        })
    }
}

/// Reduced homology. Degree `-1` is nonzero only for the complex `{∅}`.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct HomologyResult {
    pub ring: Ring,
    /// Nonzero Betti numbers by degree.
    pub betti: BTreeMap<i64, u64>,
    /// Invariant factors greater than one by degree (always empty over the rationals).
    #[serde(serialize_with = "crate::json::by_degree")]
    pub torsion: BTreeMap<i64, Vec<BigInt>>,
    /// Reduced Euler characteristic from the face counts.
    #[serde(serialize_with = "crate::json::integer")]
    pub euler: BigInt,
    pub spherical: Option<bool>,
    pub cm: Option<bool>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub certificate: Option<String>,
    /// Number of faces in each dimension, starting with dimension 0.
    #[serde(skip)]
    pub face_counts: Vec<u64>,
}

impl HomologyResult {
    pub fn rank(&self, degree: i64) -> u64 {
        self.betti.get(&degree).copied().unwrap_or(0)
    }

    pub fn has_torsion(&self) -> bool {
        self.torsion.values().any(|t| !t.is_empty())
    }

    /// `Σ (-1)^i b_i`.
    pub fn euler_from_betti(&self) -> BigInt {
        self.betti
            .iter()
            .map(|(&d, &b)| if d.rem_euclid(2) == 0 { BigInt::from(b) } else { -BigInt::from(b) })
            .sum()
    }

    /// Vanishes in every degree.
    pub fn is_acyclic(&self) -> bool {
        self.betti.is_empty() && !self.has_torsion()
    }

    /// Homology vanishes outside `dim` and is free in `dim`.
    pub fn is_spherical(&self, dim: i64) -> bool {
        !self.has_torsion() && self.betti.keys().all(|&d| d == dim)
    }

    /// Same Betti numbers and torsion (the ring and evidence fields are ignored).
    pub fn same_groups(&self, other: &HomologyResult) -> bool {
        self.betti == other.betti && self.torsion == other.torsion
    }

    pub fn to_json(&self) -> String {
        serde_json::to_string(self).expect("homology results always serialize")
    }
}

/// Every nonempty chain of `p`, grouped by size, each chain sorted by element index.
pub fn chains_by_dim(p: &Poset, budget: usize) -> Result<Vec<Vec<Vec<u32>>>> {
    let mut levels: Vec<Vec<Vec<u32>>> = Vec::new();
    let mut total = 0usize;
    let mut stack: Vec<u32> = Vec::new();
    fn walk(
        p: &Poset,
        x: usize,
        stack: &mut Vec<u32>,
        levels: &mut Vec<Vec<Vec<u32>>>,
        total: &mut usize,
        budget: usize,
    ) -> Result<()> {
        stack.push(x as u32);
        *total += 1;
        if *total > budget {
            return Err(TopologyError::BudgetExceeded { what: "chains", limit: budget });
        }
        if levels.len() < stack.len() {
            levels.push(Vec::new());
        }
        let mut chain = stack.clone();
        chain.sort_unstable();
        levels[stack.len() - 1].push(chain);
        for &y in p.above(x) {
            walk(p, y, stack, levels, total, budget)?;
        }
        stack.pop();
        Ok(())
    }
    for x in 0..p.len() {
        walk(p, x, &mut stack, &mut levels, &mut total, budget)?;
    }
    for l in &mut levels {
        l.sort();
    }
    Ok(levels)
}

/// Reduced homology of a chain complex given by its faces (`levels[k]` = faces with `k + 1`
/// vertices, each sorted).
pub fn homology_of_faces(levels: &[Vec<Vec<u32>>], ring: Ring) -> Result<HomologyResult> {
    let top = levels.len();
    // dims[k + 1] = rank of C_k for k = -1..top-1
    let mut dims = vec![1u64];
    dims.extend(levels.iter().map(|l| l.len() as u64));
    // ranks[k + 1] = rank of ∂_k : C_k -> C_{k-1}, torsion[k] = invariant factors of ∂_{k+1}
    let mut ranks = vec![0usize; top + 2];
    let mut torsion: BTreeMap<i64, Vec<BigInt>> = BTreeMap::new();
    if top > 0 {
        ranks[1] = usize::from(!levels[0].is_empty());
    }
    for k in 1..top {
        let index: HashMap<&[u32], usize> = levels[k - 1]
            .iter()
            .enumerate()
            .map(|(i, f)| (f.as_slice(), i))
            .collect();
        let mut m = SparseMatrix::<i64>::new(levels[k - 1].len(), levels[k].len());
        let mut sub = Vec::with_capacity(k);
        for (c, face) in levels[k].iter().enumerate() {
            for skip in 0..face.len() {
                sub.clear();
                sub.extend(face.iter().enumerate().filter(|&(j, _)| j != skip).map(|(_, &v)| v));
                let r = *index.get(sub.as_slice()).ok_or_else(|| {
                    TopologyError::InvalidComplex("face set is not closed under taking faces".into())
                })?;
                m.push(r, c, if skip % 2 == 0 { 1 } else { -1 });
            }
        }
        check_boundary_squared(levels, k)?;
        let inv = smith_invariants_exact(&m);
        ranks[k + 1] = inv.rank;
        if ring == Ring::Integers && !inv.torsion.is_empty() {
            torsion.insert(k as i64 - 1, inv.torsion);
        }
    }
    let mut betti = BTreeMap::new();
    for k in -1..top as i64 {
        let i = (k + 1) as usize;
        let b = dims[i] - ranks[i] as u64 - ranks.get(i + 1).copied().unwrap_or(0) as u64;
        if b > 0 {
            betti.insert(k, b);
        }
    }
    let counts: Vec<u64> = levels.iter().map(|l| l.len() as u64).collect();
    Ok(HomologyResult {
        ring,
        betti,
        torsion,
        euler: crate::euler::euler_from_counts(&counts),
        spherical: None,
        cm: None,
        certificate: None,
        face_counts: counts,
    })
}

/// Verifies `∂_{k-1} ∘ ∂_k = 0` on the faces of dimension `k`.
fn check_boundary_squared(levels: &[Vec<Vec<u32>>], k: usize) -> Result<()> {
    for face in &levels[k] {
        let mut acc: HashMap<Vec<u32>, i64> = HashMap::new();
        for i in 0..face.len() {
            for j in 0..face.len() {
                if i == j {
                    continue;
                }
                // remove i first, then the vertex at j in the shortened face
                let j2 = if j > i { j - 1 } else { j };
                let sign = if (i + j2) % 2 == 0 { 1 } else { -1 };
                let rest: Vec<u32> = face.iter().enumerate().filter(|&(t, _)| t != i && t != j).map(|(_, &v)| v).collect();
                *acc.entry(rest).or_insert(0) += sign;
            }
        }
        if acc.values().any(|&v| v != 0) {
            return Err(TopologyError::InvalidComplex("boundary of a boundary is nonzero".into()));
        }
    }
    Ok(())
}

pub fn homology_complex(k: &SimplicialComplex, ring: Ring, budget: usize) -> Result<HomologyResult> {
    homology_of_faces(&k.faces_by_dim(budget)?, ring)
}

/// Reduced homology of the order complex `Δ(P)`.
pub fn homology_poset(p: &Poset, ring: Ring, budget: usize) -> Result<HomologyResult> {
    homology_of_faces(&chains_by_dim(p, budget)?, ring)
}

/// Homology annotated with a sphericity verdict for the given dimension.
pub fn spherical_verdict(mut h: HomologyResult, dim: i64) -> HomologyResult {
    h.spherical = Some(h.is_spherical(dim));
    h
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn triangle_boundary() {
        let k = SimplicialComplex::new(vec!["a", "b", "c"], vec![vec![0, 1], vec![1, 2], vec![0, 2]]).unwrap();
        let h = homology_complex(&k, Ring::Integers, 100).unwrap();
        assert_eq!(h.betti, BTreeMap::from([(1, 1)]));
        assert!(h.is_spherical(1));
        assert_eq!(h.euler, BigInt::from(-1));
    }

    #[test]
    fn empty_complex_and_point() {
        let h = homology_complex(&SimplicialComplex::empty(), Ring::Integers, 10).unwrap();
        assert_eq!(h.betti, BTreeMap::from([(-1, 1)]));
        let pt = SimplicialComplex::simplex(vec!["x"]);
        assert!(homology_complex(&pt, Ring::Integers, 10).unwrap().is_acyclic());
    }

    #[test]
    fn projective_plane_has_torsion() {
        // six-vertex triangulation of RP^2
        let faces = vec![
            vec![0, 1, 2], vec![0, 2, 3], vec![0, 3, 4], vec![0, 4, 5], vec![0, 1, 5],
            vec![1, 2, 4], vec![2, 3, 5], vec![1, 3, 4], vec![2, 4, 5], vec![1, 3, 5],
        ];
        let k = SimplicialComplex::new((0..6).map(|i| i.to_string()).collect(), faces).unwrap();
        let z = homology_complex(&k, Ring::Integers, 1000).unwrap();
        assert!(z.betti.is_empty());
        assert_eq!(z.torsion, BTreeMap::from([(1, vec![BigInt::from(2)])]));
        let q = homology_complex(&k, Ring::Rationals, 1000).unwrap();
        assert!(q.is_acyclic());
    }
}

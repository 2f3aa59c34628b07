//! Structural facts about D and PD that hold for every ground structure, each computed so
//! that a failure can be reported rather than asserted.

use std::sync::Arc;

use dlat_ground::set_partitions;
use dlat_poset::{is_lattice, Poset, PosetMap};
use serde::Serialize;

use crate::enumerate::Decomposition;
use crate::error::Result;
use crate::properties::Analysis;

/// Three independent readings of whether a decomposition of maximal size exists.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct HeightCertificate {
    pub rank: usize,
    pub largest_decomposition: usize,
    pub pd_height: usize,
    pub d_height: usize,
}

impl HeightCertificate {
    pub fn has_size_rank(&self) -> bool {
        self.largest_decomposition == self.rank
    }

    /// The three statements agree: a size-`n` decomposition exists, PD has height `2n - 1`,
    /// D has height `n - 1`.
    pub fn consistent(&self) -> bool {
        let n = self.rank;
        let a = self.has_size_rank();
        let b = n >= 1 && self.pd_height == 2 * n - 1;
        let c = n >= 1 && self.d_height == n - 1;
        a == b && b == c
    }
}

pub fn height_certificate(an: &Analysis<'_>) -> HeightCertificate {
    HeightCertificate {
        rank: an.structure().rank(),
        largest_decomposition: an.full().elements().iter().map(|d| d.len()).max().unwrap_or(0),
        pd_height: an.partial().poset().poset_height(),
        d_height: an.full().poset().poset_height(),
    }
}

/// D with an extra minimum (labelled `{}`, the empty decomposition).
pub fn full_with_minimum(an: &Analysis<'_>) -> Result<Poset> {
    let d = an.full().poset();
    let n = d.len();
    let mut labels = d.labels().to_vec();
    labels.push("{}".to_string());
    Ok(Poset::from_relation(labels, |i, j| {
        i == n || (j != n && d.leq(i, j))
    })?)
}

/// Set partitions of `k` blocks ordered by refinement, with `partition_label` labels.
pub fn partition_poset(k: usize) -> (Poset, Vec<Vec<usize>>) {
    let parts = set_partitions(k);
    let labels: Vec<String> = parts
        .iter()
        .map(|b| {
            if k == 0 {
                "()".to_string()
            } else {
                dlat_ground::partition_label(b)
            }
        })
        .collect();
    let refines = |a: &[usize], b: &[usize]| {
        (0..a.len()).all(|i| (0..a.len()).all(|j| a[i] != a[j] || b[i] == b[j]))
    };
    let poset = Poset::from_relation(labels, |i, j| refines(&parts[i], &parts[j]))
        .expect("refinement is a partial order");
    let by_label: std::collections::HashMap<String, Vec<usize>> = parts
        .into_iter()
        .map(|b| (dlat_ground::partition_label(&b), b))
        .collect();
    let ordered = (0..poset.len())
        .map(|i| by_label.get(poset.label(i)).cloned().unwrap_or_default())
        .collect();
    (poset, ordered)
}

/// Checks that the upper interval above every full decomposition is its partition lattice,
/// via the map sending a partition of the parts to the joins of its blocks. Returns the
/// first decomposition where this fails.
pub fn upper_intervals_are_partition_lattices(an: &Analysis<'_>) -> Result<Option<String>> {
    let gs = an.structure();
    let d = an.full();
    for s in 0..d.len() {
        an.budget().tick()?;
        let sigma = d.element(s);
        if let Some(reason) = upper_interval_failure(an, s)? {
            return Ok(Some(format!("above {}: {reason}", sigma.label(gs))));
        }
    }
    Ok(None)
}

fn upper_interval_failure(an: &Analysis<'_>, s: usize) -> Result<Option<&'static str>> {
    let d = an.full();
    let sigma = d.element(s);
    let (pi, blocks) = partition_poset(sigma.len());
    let above: Vec<usize> = (0..d.len()).filter(|&t| d.poset().leq(s, t)).collect();
    let (upper, umap) = d.poset().induced(&above);
    let mut image = Vec::with_capacity(pi.len());
    for b in &blocks {
        let count = b.iter().max().map_or(0, |m| m + 1);
        let mut joined = Vec::with_capacity(count);
        for block in 0..count {
            let members: Vec<usize> = (0..b.len()).filter(|&i| b[i] == block).map(|i| sigma.parts()[i]).collect();
            match an.ops().join_set(&members) {
                Some(j) => joined.push(j),
                None => return Ok(Some("a block has no join")),
            }
        }
        let Some(t) = d.index_of(&Decomposition::new(joined)) else {
            return Ok(Some("merging blocks leaves D"));
        };
        image.push(umap.iter().position(|&u| u == t).expect("merged decompositions lie above"));
    }
    Ok(match PosetMap::new(Arc::new(pi), Arc::new(upper), image) {
        Err(_) => Some("merge map is not order-preserving"),
        Ok(f) if !f.is_isomorphism() => Some("merge map is not an isomorphism"),
        Ok(_) => None,
    })
}

/// When D has a unique minimum `σ0`, whether D is the partition lattice of `σ0` and the
/// h-complemented subposet is the Boolean lattice on `σ0`. `None` without a unique minimum.
pub fn unique_minimum_shape(an: &Analysis<'_>) -> Result<Option<bool>> {
    let d = an.full();
    let Some(s0) = d.poset().bottom() else {
        return Ok(None);
    };
    if upper_interval_failure(an, s0)?.is_some() {
        return Ok(Some(false));
    }
    let sigma = d.element(s0);
    let k = sigma.len();
    let sh = an.sub_h();
    let mut image = Vec::with_capacity(1 << k);
    for mask in 0..1u64 << k {
        let Some(j) = an.ops().join_set(sigma.sub(mask).parts()) else {
            return Ok(Some(false));
        };
        let Some(pos) = sh.map.iter().position(|&m| m == j) else {
            return Ok(Some(false));
        };
        image.push(pos);
    }
    let cube = Poset::from_relation(
        (0..1u64 << k).map(|m| format!("m{m:06}")).collect(),
        |a, b| a & !b == 0,
    )?;
    Ok(Some(match PosetMap::new(Arc::new(cube), Arc::new(sh.poset), image) {
        Ok(f) => f.is_isomorphism(),
        Err(_) => false,
    }))
}

/// `(PD is a lattice, the h-complemented subposet is a lattice)`.
pub fn lattice_pair(an: &Analysis<'_>) -> (bool, bool) {
    (
        is_lattice(an.partial().poset()).is_lattice,
        is_lattice(&an.sub_h().poset).is_lattice,
    )
}

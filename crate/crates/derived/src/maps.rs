//! The Charney poset with its β map, and the map G to flags of complemented elements.

use std::collections::HashMap;
use std::sync::Arc;

use dlat_decomp::Analysis;
use dlat_poset::{pair_label, subposet, Poset, PosetMap, Selector};
use dlat_topology::{face_label, order_complex};
use serde::Serialize;

use crate::error::{DerivedError, Result};
use crate::words::WordPoset;

/// Verdicts about a poset map between finite posets.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct MapVerdict {
    pub source_size: usize,
    pub target_size: usize,
    pub order_preserving: bool,
    pub injective: bool,
    pub surjective: bool,
    pub reflects_order: bool,
    /// Image closed under passing to smaller elements of the target.
    pub downward_closed: bool,
    /// Height in the source equals height in the target for every element.
    pub rank_preserving: bool,
}

impl MapVerdict {
    pub fn is_isomorphism(&self) -> bool {
        self.order_preserving && self.injective && self.surjective && self.reflects_order
    }

    pub fn is_embedding(&self) -> bool {
        self.order_preserving && self.injective && self.reflects_order
    }

    fn of(source: Poset, target: Poset, image: Vec<usize>) -> MapVerdict {
        let source_size = source.len();
        let target_size = target.len();
        let mut hit = vec![false; target.len()];
        for &t in &image {
            hit[t] = true;
        }
        let downward_closed = (0..target.len())
            .filter(|&t| hit[t])
            .all(|t| target.below(t).iter().all(|&u| hit[u]));
        let rank_preserving = (0..source.len()).all(|s| source.height(s) == target.height(image[s]));
        match PosetMap::new(Arc::new(source), Arc::new(target), image) {
            Ok(f) => MapVerdict {
                source_size,
                target_size,
                order_preserving: true,
                injective: f.is_injective(),
                surjective: f.is_surjective(),
                reflects_order: f.reflects_order(),
                downward_closed,
                rank_preserving,
            },
            Err(_) => MapVerdict {
                source_size,
                target_size,
                order_preserving: false,
                injective: false,
                surjective: false,
                reflects_order: false,
                downward_closed,
                rank_preserving,
            },
        }
    }
}

/// Ordered decompositions without their maximum, with indices back into the word poset.
fn remove_top(od: &WordPoset) -> Result<(Poset, Vec<usize>)> {
    let top = od
        .poset()
        .top()
        .ok_or_else(|| DerivedError::Inconsistent("ordered decompositions have no maximum".into()))?;
    Ok(od.poset().filter(|i| i != top))
}

/// The Charney poset: ordered size-two decompositions `(x,y)`, with `(x,y) <= (x',y')` when
/// `x <= x'` and `y >= y'`. Returns the poset and its elements as pairs.
pub fn charney_poset(an: &Analysis<'_>) -> Result<(Poset, Vec<(usize, usize)>)> {
    let gs = an.structure();
    let p = gs.poset();
    let pairs: Vec<(usize, usize)> = an
        .full()
        .elements()
        .iter()
        .filter(|d| d.len() == 2)
        .flat_map(|d| [(d.parts()[0], d.parts()[1]), (d.parts()[1], d.parts()[0])])
        .collect();
    let labels: Vec<String> = pairs.iter().map(|&(x, y)| pair_label(gs.label(x), gs.label(y))).collect();
    let poset = Poset::from_relation(labels.clone(), |i, j| {
        let (x, y) = pairs[i];
        let (x2, y2) = pairs[j];
        p.leq(x, x2) && p.leq(y2, y)
    })?;
    let position: HashMap<&str, usize> = labels.iter().enumerate().map(|(i, l)| (l.as_str(), i)).collect();
    let ordered = poset.labels().iter().map(|l| pairs[position[l.as_str()]]).collect();
    Ok((poset, ordered))
}

/// β from the opposite of top-removed ordered decompositions to the chain poset of the
/// Charney poset: `(z_0..z_r)` goes to the chain of splittings `(z_0∨…∨z_j, z_{j+1}∨…∨z_r)`.
pub fn charney_beta(an: &Analysis<'_>, od: &WordPoset, budget: usize) -> Result<MapVerdict> {
    let gs = an.structure();
    let (g, pairs) = charney_poset(an)?;
    let index: HashMap<(usize, usize), u32> = pairs.iter().enumerate().map(|(i, &pr)| (pr, i as u32)).collect();
    let chains = order_complex(&g, budget)?;
    let target = if g.is_empty() { Poset::new(Vec::<String>::new(), &[])? } else { chains.face_poset(budget)? };
    let (redm, map) = remove_top(od)?;
    let source = redm.opposite();
    let mut image = Vec::with_capacity(source.len());
    for &w in &map {
        let z = od.word(w);
        let mut face = Vec::with_capacity(z.len().saturating_sub(1));
        for j in 0..z.len() - 1 {
            let left = an.ops().join_set(&z[..=j]);
            let right = an.ops().join_set(&z[j + 1..]);
            let vertex = left
                .zip(right)
                .and_then(|pr| index.get(&pr).copied())
                .ok_or_else(|| {
                    DerivedError::Inconsistent(format!(
                        "splitting {} of {} is not an ordered decomposition",
                        j,
                        crate::words::word_label(|x| gs.label(x), z)
                    ))
                })?;
            face.push(vertex);
        }
        face.sort_unstable();
        let t = target
            .index_of(&face_label(g.labels(), &face))
            .ok_or_else(|| DerivedError::Inconsistent("β image is not a chain".to_string()))?;
        image.push(t);
    }
    Ok(MapVerdict::of(source, target, image))
}

/// G from top-removed ordered decompositions to the opposite of the chain poset of the proper
/// part of the h-complemented subposet: `(x_1..x_r)` goes to `x_1 < x_1∨x_2 < … < x_1∨…∨x_{r-1}`.
pub fn g_map(an: &Analysis<'_>, od: &WordPoset, budget: usize) -> Result<MapVerdict> {
    let gs = an.structure();
    let sh = an.sub_h();
    let (proper, pmap) = subposet(&sh.poset, &Selector::ProperPart)?;
    let element: HashMap<usize, u32> = pmap.iter().enumerate().map(|(i, &s)| (sh.map[s], i as u32)).collect();
    let chains = order_complex(&proper, budget)?;
    let target = if proper.is_empty() {
        Poset::new(Vec::<String>::new(), &[])?
    } else {
        chains.face_poset(budget)?.opposite()
    };
    let (source, map) = remove_top(od)?;
    let mut image = Vec::with_capacity(source.len());
    for &w in &map {
        let z = od.word(w);
        let mut face = Vec::with_capacity(z.len() - 1);
        for j in 1..z.len() {
            let join = an.ops().join_set(&z[..j]);
            let vertex = join.and_then(|x| element.get(&x).copied()).ok_or_else(|| {
                DerivedError::Inconsistent(format!(
                    "partial join of {} leaves the proper complemented part",
                    crate::words::word_label(|x| gs.label(x), z)
                ))
            })?;
            face.push(vertex);
        }
        face.sort_unstable();
        let t = target
            .index_of(&face_label(proper.labels(), &face))
            .ok_or_else(|| DerivedError::Inconsistent("G image is not a chain".to_string()))?;
        image.push(t);
    }
    Ok(MapVerdict::of(source, target, image))
}

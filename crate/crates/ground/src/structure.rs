use std::collections::BTreeMap;
use std::fmt;

use dlat_poset::{BitSet, BoundedPoset, Poset};
use serde::Serialize;

use crate::error::{GroundError, Result};

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize)]
#[serde(rename_all = "kebab-case")]
pub enum Kind {
    Boolean,
    Partition,
    Subspace,
    UniformMatroid,
    Formed,
    Custom,
}

impl Kind {
    pub fn as_str(self) -> &'static str {
        match self {
            Kind::Boolean => "boolean",
            Kind::Partition => "partition",
            Kind::Subspace => "subspace",
            Kind::UniformMatroid => "uniform-matroid",
            Kind::Formed => "formed",
            Kind::Custom => "custom",
        }
    }

    /// Lattice kinds use `x ∧ y = 0` as their compatibility relation.
    pub fn is_lattice_kind(self) -> bool {
        self != Kind::Formed
    }
}

impl fmt::Display for Kind {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.as_str())
    }
}

#[derive(Clone, Debug, Default, PartialEq, Eq, Serialize)]
pub struct Metadata {
    #[serde(skip_serializing_if = "Option::is_none")]
    pub q: Option<u64>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub n: Option<usize>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub k: Option<usize>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub form: Option<String>,
}

/// A bounded poset together with a symmetric compatibility relation and optional
/// basis sets attached to atoms.
#[derive(Clone, Debug)]
pub struct GroundStructure {
    name: String,
    kind: Kind,
    base: BoundedPoset,
    compat: Vec<BitSet>,
    atom_bases: Option<BTreeMap<usize, Vec<String>>>,
    meta: Metadata,
}

/// Down-sets of every element, as bit rows.
pub(crate) fn down_sets(p: &Poset) -> Vec<BitSet> {
    (0..p.len())
        .map(|x| {
            let mut row = BitSet::new(p.len());
            row.insert(x);
            for &y in p.below(x) {
                row.insert(y);
            }
            row
        })
        .collect()
}

/// Compatibility of lattice kinds: no common lower bound other than the bottom.
pub(crate) fn meet_is_bottom_relation(base: &BoundedPoset) -> impl Fn(usize, usize) -> bool {
    let downs = down_sets(base);
    let bottom = base.bottom();
    move |x, y| {
        let mut common = downs[x].clone();
        common.intersect_with(&downs[y]);
        let only_bottom = common.iter().all(|z| z == bottom);
        only_bottom
    }
}

/// For each index of `p`, the position of its label in `labels` (construction order).
pub(crate) fn construction_order(p: &Poset, labels: &[String]) -> Vec<usize> {
    let pos: std::collections::HashMap<&str, usize> = labels
        .iter()
        .enumerate()
        .map(|(i, l)| (l.as_str(), i))
        .collect();
    (0..p.len()).map(|i| pos[p.label(i)]).collect()
}

impl GroundStructure {
    /// Assembles a structure, tabulating `compatible` on every pair and checking that it is
    /// symmetric, that every element is compatible with the bottom, and (for lattice kinds)
    /// that it agrees with `x ∧ y = 0`.
    pub fn new<F>(
        name: impl Into<String>,
        kind: Kind,
        base: BoundedPoset,
        compatible: F,
        atom_bases: Option<BTreeMap<usize, Vec<String>>>,
        meta: Metadata,
    ) -> Result<GroundStructure>
    where
        F: Fn(usize, usize) -> bool,
    {
        let n = base.len();
        let mut compat = vec![BitSet::new(n); n];
        for (x, row) in compat.iter_mut().enumerate() {
            for y in 0..n {
                if compatible(x, y) {
                    row.insert(y);
                }
            }
        }
        let bottom = base.bottom();
        for x in 0..n {
            if !compat[x].contains(bottom) {
                return Err(GroundError::Compatibility(format!(
                    "{:?} is not compatible with the bottom element",
                    base.label(x)
                )));
            }
            for y in compat[x].iter() {
                if !compat[y].contains(x) {
                    return Err(GroundError::Compatibility(format!(
                        "relation is not symmetric on {:?}, {:?}",
                        base.label(x),
                        base.label(y)
                    )));
                }
            }
        }
        if kind.is_lattice_kind() {
            let reference = meet_is_bottom_relation(&base);
            for x in 0..n {
                for y in 0..n {
                    if compat[x].contains(y) != reference(x, y) {
                        return Err(GroundError::Compatibility(format!(
                            "relation disagrees with meet = bottom on {:?}, {:?}",
                            base.label(x),
                            base.label(y)
                        )));
                    }
                }
            }
        }
        if let Some(bases) = &atom_bases {
            for &a in bases.keys() {
                if !base.lower_covers(a).contains(&bottom) {
                    return Err(GroundError::InvalidParameter(format!(
                        "basis set attached to non-atom {:?}",
                        base.label(a)
                    )));
                }
            }
        }
        Ok(GroundStructure {
            name: name.into(),
            kind,
            base,
            compat,
            atom_bases,
            meta,
        })
    }

    pub fn name(&self) -> &str {
        &self.name
    }

    pub fn kind(&self) -> Kind {
        self.kind
    }

    pub fn base(&self) -> &BoundedPoset {
        &self.base
    }

    pub fn poset(&self) -> &Poset {
        self.base.poset()
    }

    pub fn len(&self) -> usize {
        self.base.len()
    }

    pub fn is_empty(&self) -> bool {
        self.base.is_empty()
    }

    pub fn bottom(&self) -> usize {
        self.base.bottom()
    }

    pub fn top(&self) -> usize {
        self.base.top()
    }

    /// Height `n` of the top element.
    pub fn rank(&self) -> usize {
        self.base.rank()
    }

    pub fn height(&self, x: usize) -> usize {
        self.base.height(x)
    }

    pub fn label(&self, x: usize) -> &str {
        self.base.label(x)
    }

    pub fn index_of(&self, label: &str) -> Option<usize> {
        self.base.index_of(label)
    }

    pub fn metadata(&self) -> &Metadata {
        &self.meta
    }

    /// True when the structure is a single point (bottom equals top).
    pub fn is_trivial(&self) -> bool {
        self.base.bottom() == self.base.top()
    }

    #[inline]
    pub fn compatible(&self, x: usize, y: usize) -> bool {
        self.compat[x].contains(y)
    }

    /// Every element compatible with `x`.
    pub fn compatible_row(&self, x: usize) -> &BitSet {
        &self.compat[x]
    }

    pub fn atoms(&self) -> Vec<usize> {
        self.base.upper_covers(self.base.bottom()).to_vec()
    }

    pub fn atom_bases(&self) -> Option<&BTreeMap<usize, Vec<String>>> {
        self.atom_bases.as_ref()
    }

    /// Replaces the atom basis sets (keys must be atoms).
    pub fn with_atom_bases(mut self, bases: BTreeMap<usize, Vec<String>>) -> Result<GroundStructure> {
        let bottom = self.bottom();
        if let Some(&a) = bases
            .keys()
            .find(|&&a| !self.base.lower_covers(a).contains(&bottom))
        {
            return Err(GroundError::InvalidParameter(format!(
                "basis set attached to non-atom {:?}",
                self.label(a)
            )));
        }
        self.atom_bases = Some(bases);
        Ok(self)
    }

    /// The lower interval `[0, y]` with the inherited compatibility relation and basis sets.
    pub fn lower_interval(&self, y: usize) -> Result<GroundStructure> {
        let (sub, map) = self.base.interval(self.bottom(), y)?;
        let compat: Vec<BitSet> = map
            .iter()
            .map(|&old| {
                let mut row = BitSet::new(map.len());
                for (new, &o) in map.iter().enumerate() {
                    if self.compat[old].contains(o) {
                        row.insert(new);
                    }
                }
                row
            })
            .collect();
        let atom_bases = self.atom_bases.as_ref().map(|bases| {
            map.iter()
                .enumerate()
                .filter_map(|(new, old)| bases.get(old).map(|b| (new, b.clone())))
                .collect()
        });
        let meta = Metadata {
            n: Some(self.height(y)),
            ..self.meta.clone()
        };
        Ok(GroundStructure {
            name: format!("{}[<={}]", self.name, self.label(y)),
            kind: self.kind,
            base: sub,
            compat,
            atom_bases,
            meta,
        })
    }
}

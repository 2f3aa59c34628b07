//! Boolean, uniform-matroid, partition and subspace lattices.

use std::collections::BTreeMap;

use dlat_poset::{BitSet, BoundedPoset, Poset};

use crate::error::{GroundError, Result};
use crate::field::FiniteField;
use crate::linalg::{all_subspaces, gaussian_binomial, vector_label, Subspace};
use crate::structure::{construction_order, meet_is_bottom_relation, GroundStructure, Kind, Metadata};

/// Largest number of elements any constructed ground structure may have.
pub const MAX_ELEMENTS: u64 = 4096;
pub const MAX_BOOLEAN_RANK: usize = 12;
pub const MAX_UNIFORM_SIZE: usize = 12;
pub const MAX_PARTITION_SIZE: usize = 6;

fn limit(what: &'static str, value: u64, limit: u64) -> Result<()> {
    if value > limit {
        Err(GroundError::SizeLimit { what, value, limit })
    } else {
        Ok(())
    }
}

/// Label of a subset of `{1..n}` given as a bit mask: `{1,3}`, `{}`.
pub fn set_label(mask: u32) -> String {
    let items: Vec<String> = (0..32)
        .filter(|i| mask & (1 << i) != 0)
        .map(|i| (i + 1).to_string())
        .collect();
    format!("{{{}}}", items.join(","))
}

fn lattice_of_sets(name: String, kind: Kind, masks: Vec<u32>, meta: Metadata) -> Result<GroundStructure> {
    let labels: Vec<String> = masks.iter().map(|&m| set_label(m)).collect();
    let poset = Poset::from_relation(labels.clone(), |i, j| masks[i] & !masks[j] == 0)?;
    let base = BoundedPoset::new(poset)?;
    let order = construction_order(&base, &labels);
    let sorted: Vec<u32> = order.iter().map(|&i| masks[i]).collect();
    GroundStructure::new(name, kind, base, |x, y| sorted[x] & sorted[y] == 0, None, meta)
}

/// Subsets of an `n`-set ordered by inclusion.
pub fn boolean_lattice(n: usize) -> Result<GroundStructure> {
    if n == 0 {
        return Err(GroundError::InvalidParameter("boolean lattice needs n >= 1".into()));
    }
    limit("boolean rank", n as u64, MAX_BOOLEAN_RANK as u64)?;
    let masks = (0..1u32 << n).collect();
    lattice_of_sets(
        format!("boolean:n={n}"),
        Kind::Boolean,
        masks,
        Metadata {
            n: Some(n),
            ..Metadata::default()
        },
    )
}

/// Flats of `U_{n,k}`: every subset of size below `k`, and the whole ground set.
pub fn uniform_matroid_flats(n: usize, k: usize) -> Result<GroundStructure> {
    if k == 0 || k > n {
        return Err(GroundError::InvalidParameter(format!(
            "uniform matroid needs 1 <= k <= n, got n={n}, k={k}"
        )));
    }
    limit("uniform matroid ground set size", n as u64, MAX_UNIFORM_SIZE as u64)?;
    let full = (1u32 << n) - 1;
    let masks = (0..=full)
        .filter(|&m| (m.count_ones() as usize) < k || m == full)
        .collect();
    lattice_of_sets(
        format!("uniform:n={n},k={k}"),
        Kind::UniformMatroid,
        masks,
        Metadata {
            n: Some(n),
            k: Some(k),
            ..Metadata::default()
        },
    )
}

/// Every set partition of `{0..n-1}` as a block-index vector (restricted growth strings).
pub fn set_partitions(n: usize) -> Vec<Vec<usize>> {
    fn grow(prefix: &mut Vec<usize>, max: usize, n: usize, out: &mut Vec<Vec<usize>>) {
        if prefix.len() == n {
            out.push(prefix.clone());
            return;
        }
        for b in 0..=max + 1 {
            prefix.push(b);
            grow(prefix, max.max(b), n, out);
            prefix.pop();
        }
    }
    if n == 0 {
        return vec![Vec::new()];
    }
    let mut out = Vec::new();
    let mut prefix = vec![0];
    grow(&mut prefix, 0, n, &mut out);
    out
}

/// Label of a partition: blocks ordered by their least element, e.g. `12|34`.
pub fn partition_label(blocks: &[usize]) -> String {
    let count = blocks.iter().max().map_or(0, |m| m + 1);
    let mut parts = vec![String::new(); count];
    for (i, &b) in blocks.iter().enumerate() {
        parts[b].push_str(&(i + 1).to_string());
    }
    parts.join("|")
}

/// Set partitions of `[n]` ordered by refinement (finer below).
pub fn partition_lattice(n: usize) -> Result<GroundStructure> {
    if n < 2 {
        return Err(GroundError::InvalidParameter("partition lattice needs n >= 2".into()));
    }
    limit("partition lattice size", n as u64, MAX_PARTITION_SIZE as u64)?;
    let parts = set_partitions(n);
    let labels: Vec<String> = parts.iter().map(|p| partition_label(p)).collect();
    // i <= j when every block of i sits inside a block of j
    let refines = |a: &[usize], b: &[usize]| {
        (0..n).all(|x| (0..n).all(|y| a[x] != a[y] || b[x] == b[y]))
    };
    let poset = Poset::from_relation(labels.clone(), |i, j| refines(&parts[i], &parts[j]))?;
    let base = BoundedPoset::new(poset)?;
    let order = construction_order(&base, &labels);
    let sorted: Vec<&Vec<usize>> = order.iter().map(|&i| &parts[i]).collect();
    let compatible = |x: usize, y: usize| {
        let (a, b) = (sorted[x], sorted[y]);
        (0..n).all(|i| (i + 1..n).all(|j| a[i] != a[j] || b[i] != b[j]))
    };
    GroundStructure::new(
        format!("partition:n={n}"),
        Kind::Partition,
        base,
        compatible,
        None,
        Metadata {
            n: Some(n),
            ..Metadata::default()
        },
    )
}

/// Builds the inclusion order on a family of subspaces, through vector-set bitmaps when the
/// ambient space is small enough and through row reduction otherwise.
pub(crate) fn inclusion_poset(
    field: &FiniteField,
    subspaces: &[Subspace],
    labels: Vec<String>,
) -> Result<Poset> {
    let n = subspaces.first().map_or(0, Subspace::ambient_dim);
    let q = field.order() as u64;
    let volume = q.checked_pow(n as u32).unwrap_or(u64::MAX);
    if volume <= 1 << 16 {
        let index = |v: &[u32]| v.iter().fold(0usize, |acc, &x| acc * q as usize + x as usize);
        let sets: Vec<BitSet> = subspaces
            .iter()
            .map(|s| {
                let mut b = BitSet::new(volume as usize);
                for v in s.vectors(field) {
                    b.insert(index(&v));
                }
                b
            })
            .collect();
        Ok(Poset::from_relation(labels, |i, j| {
            subspaces[i].dim() <= subspaces[j].dim() && sets[i].is_subset(&sets[j])
        })?)
    } else {
        Ok(Poset::from_relation(labels, |i, j| subspaces[i].is_subspace_of(field, &subspaces[j]))?)
    }
}

/// All subspaces of `GF(q)^n` ordered by inclusion.
pub fn subspace_lattice(q: u64, n: usize) -> Result<GroundStructure> {
    let field = FiniteField::new(q)?;
    if n == 0 {
        return Err(GroundError::InvalidParameter("subspace lattice needs n >= 1".into()));
    }
    let count: u64 = (0..=n as u32)
        .map(|k| gaussian_binomial(q, n as u32, k))
        .fold(0u64, |acc, c| acc.saturating_add(c));
    limit("subspace count", count, MAX_ELEMENTS)?;
    let subs = all_subspaces(&field, n);
    let labels: Vec<String> = subs.iter().map(|s| s.label(&field)).collect();
    let poset = inclusion_poset(&field, &subs, labels.clone())?;
    let base = BoundedPoset::new(poset)?;
    let order = construction_order(&base, &labels);
    let mut bases = BTreeMap::new();
    for &atom in base.upper_covers(base.bottom()) {
        let line = &subs[order[atom]];
        let vectors = line
            .vectors(&field)
            .into_iter()
            .filter(|v| v.iter().any(|&x| x != 0))
            .map(|v| vector_label(&field, &v))
            .collect();
        bases.insert(atom, vectors);
    }
    let compatible = meet_is_bottom_relation(&base);
    GroundStructure::new(
        format!("subspace:q={q},n={n}"),
        Kind::Subspace,
        base,
        compatible,
        Some(bases),
        Metadata {
            q: Some(q),
            n: Some(n),
            ..Metadata::default()
        },
    )
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn small_sizes() {
        assert_eq!(boolean_lattice(3).unwrap().len(), 8);
        assert_eq!(boolean_lattice(1).unwrap().len(), 2);
        assert_eq!(partition_lattice(3).unwrap().len(), 5);
        assert_eq!(partition_lattice(4).unwrap().len(), 15);
        assert_eq!(uniform_matroid_flats(4, 3).unwrap().len(), 12);
        assert_eq!(uniform_matroid_flats(3, 2).unwrap().len(), 5);
        assert_eq!(subspace_lattice(2, 2).unwrap().len(), 5);
        assert_eq!(subspace_lattice(3, 2).unwrap().len(), 6);
        assert_eq!(subspace_lattice(2, 3).unwrap().len(), 16);
    }

    #[test]
    fn partition_heights() {
        let p = partition_lattice(4).unwrap();
        assert_eq!(p.height(p.index_of("12|34").unwrap()), 2);
        assert_eq!(p.rank(), 3);
        assert!(p.compatible(p.index_of("12|3|4").unwrap(), p.index_of("1|2|34").unwrap()));
        assert!(!p.compatible(p.index_of("12|3|4").unwrap(), p.index_of("12|34").unwrap()));
    }

    #[test]
    fn limits() {
        assert!(matches!(boolean_lattice(13), Err(GroundError::SizeLimit { .. })));
        assert!(matches!(partition_lattice(7), Err(GroundError::SizeLimit { .. })));
        assert!(subspace_lattice(2, 8).is_err());
        assert!(uniform_matroid_flats(3, 4).is_err());
    }

    #[test]
    fn labels() {
        assert_eq!(set_label(0), "{}");
        assert_eq!(set_label(0b101), "{1,3}");
        assert_eq!(partition_label(&[0, 1, 0, 1]), "13|24");
    }
}

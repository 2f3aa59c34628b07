use std::collections::HashMap;
use std::fmt;
use std::ops::Deref;

use num_bigint::BigInt;
use num_traits::{One, Zero};

use crate::bits::BitSet;
use crate::error::{PosetError, Result};

/// Posets with at most this many elements keep a dense bit matrix for `leq`;
/// larger ones answer comparisons from sorted up-set lists.
pub const DENSE_THRESHOLD: usize = 4096;

/// Direction of a bound: `Up` asks for a join, `Down` for a meet.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Direction {
    Up,
    Down,
}

/// A finite partial order on uniquely labelled elements.
///
/// Elements are indexed `0..len()` in lexicographic order of their labels.
#[derive(Clone)]
pub struct Poset {
    labels: Vec<String>,
    index: HashMap<String, usize>,
    dense: Option<Vec<BitSet>>,
    above: Vec<Vec<usize>>,
    below: Vec<Vec<usize>>,
    upper_covers: Vec<Vec<usize>>,
    lower_covers: Vec<Vec<usize>>,
    heights: Vec<usize>,
    linear: Vec<usize>,
}

impl fmt::Debug for Poset {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.debug_struct("Poset")
            .field("len", &self.len())
            .field("labels", &self.labels)
            .field("covers", &self.cover_pairs())
            .finish()
    }
}

impl PartialEq for Poset {
    fn eq(&self, other: &Self) -> bool {
        self.labels == other.labels && self.cover_pairs() == other.cover_pairs()
    }
}

impl Eq for Poset {}

fn check_labels(labels: &[String]) -> Result<()> {
    let mut seen = HashMap::with_capacity(labels.len());
    for l in labels {
        if seen.insert(l.as_str(), ()).is_some() {
            return Err(PosetError::DuplicateLabel(l.clone()));
        }
    }
    Ok(())
}

impl Poset {
    /// Builds the poset generated by `pairs` (each `(i, j)` meaning `labels[i] <= labels[j]`)
    /// under reflexive-transitive closure.
    pub fn new<S: Into<String>>(labels: Vec<S>, pairs: &[(usize, usize)]) -> Result<Poset> {
        let labels: Vec<String> = labels.into_iter().map(Into::into).collect();
        check_labels(&labels)?;
        let n = labels.len();
        let mut succ = vec![Vec::new(); n];
        let mut indeg = vec![0usize; n];
        for &(i, j) in pairs {
            for k in [i, j] {
                if k >= n {
                    return Err(PosetError::IndexOutOfRange { index: k, len: n });
                }
            }
            if i != j {
                succ[i].push(j);
                indeg[j] += 1;
            }
        }
        let mut order = Vec::with_capacity(n);
        let mut stack: Vec<usize> = (0..n).filter(|&i| indeg[i] == 0).collect();
        while let Some(v) = stack.pop() {
            order.push(v);
            for &w in &succ[v] {
                indeg[w] -= 1;
                if indeg[w] == 0 {
                    stack.push(w);
                }
            }
        }
        if order.len() < n {
            let mut stuck: Vec<String> = (0..n)
                .filter(|&i| indeg[i] > 0)
                .map(|i| labels[i].clone())
                .collect();
            stuck.sort();
            return Err(PosetError::Cycle(stuck));
        }
        let mut up = vec![BitSet::new(n); n];
        for &v in order.iter().rev() {
            let mut row = BitSet::new(n);
            row.insert(v);
            for &w in &succ[v] {
                row.union_with(&up[w]);
            }
            up[v] = row;
        }
        Ok(Poset::from_closed_rows(labels, up))
    }

    /// Builds a poset from an explicit relation, checking reflexivity, antisymmetry and
    /// transitivity.
    pub fn from_relation<S, F>(labels: Vec<S>, leq: F) -> Result<Poset>
    where
        S: Into<String>,
        F: Fn(usize, usize) -> bool,
    {
        let labels: Vec<String> = labels.into_iter().map(Into::into).collect();
        check_labels(&labels)?;
        let n = labels.len();
        let mut up = vec![BitSet::new(n); n];
        for (i, row) in up.iter_mut().enumerate() {
            for j in 0..n {
                if leq(i, j) {
                    row.insert(j);
                }
            }
            if !row.contains(i) {
                return Err(PosetError::OrderAxiom(format!(
                    "{:?} is not below itself",
                    labels[i]
                )));
            }
        }
        validate_rows(&labels, &up)?;
        Ok(Poset::from_closed_rows(labels, up))
    }

    /// Like [`Poset::from_relation`] but skips the axiom checks; the caller guarantees the
    /// relation is a partial order (used for constructions that are orders by definition).
    pub(crate) fn from_trusted_relation<F>(labels: Vec<String>, leq: F) -> Poset
    where
        F: Fn(usize, usize) -> bool,
    {
        let n = labels.len();
        let mut up = vec![BitSet::new(n); n];
        for (i, row) in up.iter_mut().enumerate() {
            for j in 0..n {
                if i == j || leq(i, j) {
                    row.insert(j);
                }
            }
        }
        Poset::from_closed_rows(labels, up)
    }

    /// Assembles a poset from closed up-set rows (row `i` holds every `j` with `i <= j`).
    fn from_closed_rows(labels: Vec<String>, up: Vec<BitSet>) -> Poset {
        let n = labels.len();
        let mut perm: Vec<usize> = (0..n).collect();
        perm.sort_by(|&a, &b| labels[a].cmp(&labels[b]));
        let mut inv = vec![0usize; n];
        for (new, &old) in perm.iter().enumerate() {
            inv[old] = new;
        }
        let labels: Vec<String> = perm.iter().map(|&o| labels[o].clone()).collect();
        let mut rows = vec![BitSet::new(n); n];
        for (old, row) in up.iter().enumerate() {
            let target = &mut rows[inv[old]];
            for j in row.iter() {
                target.insert(inv[j]);
            }
        }
        let mut above = vec![Vec::new(); n];
        let mut below = vec![Vec::new(); n];
        for (i, row) in rows.iter().enumerate() {
            for j in row.iter() {
                if j != i {
                    above[i].push(j);
                    below[j].push(i);
                }
            }
        }
        let mut upper_covers = vec![Vec::new(); n];
        let mut lower_covers = vec![Vec::new(); n];
        for i in 0..n {
            let mut strict = rows[i].clone();
            strict.remove(i);
            let mut reach = BitSet::new(n);
            for j in strict.iter() {
                let mut s = rows[j].clone();
                s.remove(j);
                reach.union_with(&s);
            }
            strict.difference_with(&reach);
            for j in strict.iter() {
                upper_covers[i].push(j);
                lower_covers[j].push(i);
            }
        }
        let mut linear: Vec<usize> = (0..n).collect();
        linear.sort_by_key(|&i| (below[i].len(), i));
        let mut heights = vec![0usize; n];
        for &v in &linear {
            heights[v] = lower_covers[v]
                .iter()
                .map(|&u| heights[u] + 1)
                .max()
                .unwrap_or(0);
        }
        let index = labels
            .iter()
            .enumerate()
            .map(|(i, l)| (l.clone(), i))
            .collect();
        let dense = if n <= DENSE_THRESHOLD { Some(rows) } else { None };
        Poset {
            labels,
            index,
            dense,
            above,
            below,
            upper_covers,
            lower_covers,
            heights,
            linear,
        }
    }

    pub fn len(&self) -> usize {
        self.labels.len()
    }

    pub fn is_empty(&self) -> bool {
        self.labels.is_empty()
    }

    pub fn label(&self, i: usize) -> &str {
        &self.labels[i]
    }

    pub fn labels(&self) -> &[String] {
        &self.labels
    }

    pub fn index_of(&self, label: &str) -> Option<usize> {
        self.index.get(label).copied()
    }

    /// Looks up a label, failing with [`PosetError::UnknownLabel`].
    pub fn expect_index(&self, label: &str) -> Result<usize> {
        self.index_of(label)
            .ok_or_else(|| PosetError::UnknownLabel(label.to_string()))
    }

    pub fn is_dense(&self) -> bool {
        self.dense.is_some()
    }

    #[inline]
    pub fn leq(&self, i: usize, j: usize) -> bool {
        match &self.dense {
            Some(rows) => rows[i].contains(j),
            None => i == j || self.above[i].binary_search(&j).is_ok(),
        }
    }

    #[inline]
    pub fn lt(&self, i: usize, j: usize) -> bool {
        i != j && self.leq(i, j)
    }

    pub fn comparable(&self, i: usize, j: usize) -> bool {
        self.leq(i, j) || self.leq(j, i)
    }

    /// Elements strictly above `i`, ascending by index.
    pub fn above(&self, i: usize) -> &[usize] {
        &self.above[i]
    }

    /// Elements strictly below `i`, ascending by index.
    pub fn below(&self, i: usize) -> &[usize] {
        &self.below[i]
    }

    pub fn upper_covers(&self, i: usize) -> &[usize] {
        &self.upper_covers[i]
    }

    pub fn lower_covers(&self, i: usize) -> &[usize] {
        &self.lower_covers[i]
    }

    /// All cover pairs `(i, j)` with `i` covered by `j`, sorted.
    pub fn cover_pairs(&self) -> Vec<(usize, usize)> {
        let mut out = Vec::new();
        for (i, ups) in self.upper_covers.iter().enumerate() {
            for &j in ups {
                out.push((i, j));
            }
        }
        out
    }

    /// Number of pairs `i <= j`, reflexive pairs included.
    pub fn relation_size(&self) -> usize {
        self.len() + self.above.iter().map(Vec::len).sum::<usize>()
    }

    /// Length in edges of the longest chain ending at `i`.
    pub fn height(&self, i: usize) -> usize {
        self.heights[i]
    }

    pub fn heights(&self) -> &[usize] {
        &self.heights
    }

    /// Length in edges of the longest chain; 0 for a one-element poset and for the empty poset.
    pub fn poset_height(&self) -> usize {
        self.heights.iter().copied().max().unwrap_or(0)
    }

    /// A linear extension: every element appears after everything below it.
    pub fn linear_extension(&self) -> &[usize] {
        &self.linear
    }

    pub fn minimal_elements(&self) -> Vec<usize> {
        (0..self.len())
            .filter(|&i| self.below[i].is_empty())
            .collect()
    }

    pub fn maximal_elements(&self) -> Vec<usize> {
        (0..self.len())
            .filter(|&i| self.above[i].is_empty())
            .collect()
    }

    /// The unique minimum, if there is one.
    pub fn bottom(&self) -> Option<usize> {
        match self.minimal_elements().as_slice() {
            [b] => Some(*b),
            _ => None,
        }
    }

    /// The unique maximum, if there is one.
    pub fn top(&self) -> Option<usize> {
        match self.maximal_elements().as_slice() {
            [t] => Some(*t),
            _ => None,
        }
    }

    /// Join (`Direction::Up`) or meet (`Direction::Down`) of `set`, when the set of common
    /// upper (lower) bounds has a unique minimal (maximal) element. The empty join is the
    /// unique minimum and the empty meet the unique maximum.
    pub fn bound(&self, set: &[usize], direction: Direction) -> Option<usize> {
        let Some((&first, rest)) = set.split_first() else {
            return match direction {
                Direction::Up => self.bottom(),
                Direction::Down => self.top(),
            };
        };
        let related = |a: usize, b: usize| match direction {
            Direction::Up => self.leq(a, b),
            Direction::Down => self.leq(b, a),
        };
        let start: &[usize] = match direction {
            Direction::Up => &self.above[first],
            Direction::Down => &self.below[first],
        };
        let candidates: Vec<usize> = std::iter::once(first)
            .chain(start.iter().copied())
            .filter(|&c| rest.iter().all(|&s| related(s, c)))
            .collect();
        let extremal: Vec<usize> = candidates
            .iter()
            .copied()
            .filter(|&c| !candidates.iter().any(|&d| d != c && related(d, c)))
            .collect();
        match extremal.as_slice() {
            [e] => Some(*e),
            _ => None,
        }
    }

    pub fn join(&self, set: &[usize]) -> Option<usize> {
        self.bound(set, Direction::Up)
    }

    pub fn meet(&self, set: &[usize]) -> Option<usize> {
        self.bound(set, Direction::Down)
    }

    /// Möbius function value `μ(x, y)`, computed by the defining recursion over `[x, y]`.
    pub fn mobius(&self, x: usize, y: usize) -> Result<BigInt> {
        if !self.leq(x, y) {
            return Err(PosetError::NotComparable(
                self.labels[x].clone(),
                self.labels[y].clone(),
            ));
        }
        let mut values: HashMap<usize, BigInt> = HashMap::new();
        values.insert(x, BigInt::one());
        for &z in &self.linear {
            if z == x || !self.leq(x, z) || !self.leq(z, y) {
                continue;
            }
            let mut acc = BigInt::zero();
            for w in self.below[z].iter() {
                if let Some(v) = values.get(w) {
                    acc += v;
                }
            }
            values.insert(z, -acc);
        }
        Ok(values.remove(&y).unwrap_or_else(BigInt::zero))
    }

    /// The order on the same labels with every comparison reversed.
    pub fn opposite(&self) -> Poset {
        Poset::from_trusted_relation(self.labels.clone(), |i, j| self.leq(j, i))
    }

    /// Induced subposet on `keep` (any order, duplicates ignored). Returns the subposet and,
    /// for each of its indices, the index in `self`.
    pub fn induced(&self, keep: &[usize]) -> (Poset, Vec<usize>) {
        let mut keep: Vec<usize> = keep.to_vec();
        keep.sort_unstable();
        keep.dedup();
        let labels: Vec<String> = keep.iter().map(|&i| self.labels[i].clone()).collect();
        let sub = Poset::from_trusted_relation(labels, |a, b| self.leq(keep[a], keep[b]));
        (sub, keep)
    }

    /// Induced subposet on elements satisfying `pred`.
    pub fn filter<F: Fn(usize) -> bool>(&self, pred: F) -> (Poset, Vec<usize>) {
        let keep: Vec<usize> = (0..self.len()).filter(|&i| pred(i)).collect();
        self.induced(&keep)
    }

    /// Checks that `self` and `other` carry the same labels with the same order.
    pub fn same_order_as(&self, other: &Poset) -> bool {
        self.labels == other.labels
            && (0..self.len())
                .all(|i| self.above[i] == other.above[i])
    }

    fn check_index(&self, i: usize) -> Result<()> {
        if i < self.len() {
            Ok(())
        } else {
            Err(PosetError::IndexOutOfRange {
                index: i,
                len: self.len(),
            })
        }
    }

    pub(crate) fn checked(&self, i: usize) -> Result<usize> {
        self.check_index(i).map(|_| i)
    }
}

/// Verifies antisymmetry and transitivity of closed up-set rows.
fn validate_rows(labels: &[String], up: &[BitSet]) -> Result<()> {
    for (i, row) in up.iter().enumerate() {
        for j in row.iter() {
            if j == i {
                continue;
            }
            if up[j].contains(i) {
                return Err(PosetError::OrderAxiom(format!(
                    "antisymmetry fails for {:?} and {:?}",
                    labels[i], labels[j]
                )));
            }
            if !up[j].is_subset(row) {
                let k = up[j].iter().find(|&k| !row.contains(k)).unwrap_or(j);
                return Err(PosetError::OrderAxiom(format!(
                    "transitivity fails for {:?} <= {:?} <= {:?}",
                    labels[i], labels[j], labels[k]
                )));
            }
        }
    }
    Ok(())
}

/// A poset with a unique minimum and a unique maximum.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct BoundedPoset {
    poset: Poset,
    bottom: usize,
    top: usize,
}

impl BoundedPoset {
    pub fn new(poset: Poset) -> Result<BoundedPoset> {
        let bottom = poset.bottom().ok_or(PosetError::Unbounded("minimum"))?;
        let top = poset.top().ok_or(PosetError::Unbounded("maximum"))?;
        Ok(BoundedPoset { poset, bottom, top })
    }

    pub fn bottom(&self) -> usize {
        self.bottom
    }

    pub fn top(&self) -> usize {
        self.top
    }

    /// Height of the top element, i.e. the rank `n` of the bounded poset.
    pub fn rank(&self) -> usize {
        self.poset.height(self.top)
    }

    pub fn poset(&self) -> &Poset {
        &self.poset
    }

    pub fn into_poset(self) -> Poset {
        self.poset
    }

    /// `μ(0̂, 1̂)`.
    pub fn mobius_number(&self) -> BigInt {
        self.poset
            .mobius(self.bottom, self.top)
            .expect("bottom lies below top")
    }

    /// The closed interval `[x, y]` as a bounded poset.
    pub fn interval(&self, x: usize, y: usize) -> Result<(BoundedPoset, Vec<usize>)> {
        let (p, map) = crate::ops::subposet(&self.poset, &crate::ops::Selector::Interval(x, y))?;
        Ok((BoundedPoset::new(p)?, map))
    }
}

impl Deref for BoundedPoset {
    type Target = Poset;
    fn deref(&self) -> &Poset {
        &self.poset
    }
}

/// Result of a lattice test.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct LatticeVerdict {
    pub is_lattice: bool,
    /// First pair (in index order) lacking a join or a meet.
    pub witness: Option<(usize, usize)>,
}

/// Tests whether every pair of elements has a join and a meet.
pub fn is_lattice(p: &Poset) -> LatticeVerdict {
    for i in 0..p.len() {
        for j in (i + 1)..p.len() {
            if p.join(&[i, j]).is_none() || p.meet(&[i, j]).is_none() {
                return LatticeVerdict {
                    is_lattice: false,
                    witness: Some((i, j)),
                };
            }
        }
    }
    LatticeVerdict {
        is_lattice: !p.is_empty(),
        witness: None,
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn diamond() -> Poset {
        Poset::new(vec!["0", "a", "b", "1"], &[(0, 1), (0, 2), (1, 3), (2, 3)]).unwrap()
    }

    #[test]
    fn diamond_basics() {
        let p = diamond();
        assert_eq!(p.relation_size(), 9);
        assert_eq!(p.poset_height(), 2);
        let b = BoundedPoset::new(p.clone()).unwrap();
        assert_eq!(p.label(b.bottom()), "0");
        assert_eq!(p.label(b.top()), "1");
        let a = p.index_of("a").unwrap();
        let bb = p.index_of("b").unwrap();
        assert_eq!(p.meet(&[a, bb]), Some(b.bottom()));
        assert_eq!(p.join(&[a, bb]), Some(b.top()));
        assert_eq!(p.join(&[]), Some(b.bottom()));
        assert_eq!(p.meet(&[]), Some(b.top()));
        assert_eq!(b.mobius_number(), BigInt::from(1));
    }

    #[test]
    fn cycle_rejected() {
        let err = Poset::new(vec!["a", "b"], &[(0, 1), (1, 0)]).unwrap_err();
        assert!(matches!(err, PosetError::Cycle(_)));
    }

    #[test]
    fn duplicate_rejected() {
        let err = Poset::new(vec!["a", "a"], &[]).unwrap_err();
        assert_eq!(err, PosetError::DuplicateLabel("a".into()));
    }

    #[test]
    fn relation_axioms_checked() {
        let err = Poset::from_relation(vec!["a", "b", "c"], |i, j| i == j || (i, j) == (0, 1) || (i, j) == (1, 2))
            .unwrap_err();
        assert!(matches!(err, PosetError::OrderAxiom(_)));
    }

    #[test]
    fn labels_are_sorted() {
        let p = Poset::new(vec!["z", "m", "a"], &[(0, 1), (1, 2)]).unwrap();
        assert_eq!(p.labels(), &["a", "m", "z"]);
        assert!(p.leq(2, 0));
        assert_eq!(p.height(0), 2);
    }

    #[test]
    fn no_join_for_two_minimal_upper_bounds() {
        // a, b both below c and d, which are incomparable.
        let p = Poset::new(vec!["a", "b", "c", "d"], &[(0, 2), (0, 3), (1, 2), (1, 3)]).unwrap();
        assert_eq!(p.join(&[0, 1]), None);
        assert_eq!(p.meet(&[2, 3]), None);
        assert_eq!(p.join(&[0]), Some(0));
    }

    #[test]
    fn mobius_not_comparable() {
        let p = diamond();
        let a = p.index_of("a").unwrap();
        let b = p.index_of("b").unwrap();
        assert!(matches!(p.mobius(a, b), Err(PosetError::NotComparable(_, _))));
    }
}

//! Backtracking enumeration of full decompositions.
//!
//! Parts are added in increasing index order. Each branch keeps the joins of all subsets of
//! the parts chosen so far and is cut as soon as a clause that every subset of a
//! decomposition must satisfy fails. Leaves are re-validated by [`check_decomposition`].
//!
//! [`check_decomposition`]: crate::check::check_decomposition

use dlat_ground::GroundStructure;
use serde::Serialize;

use crate::budget::Budget;
use crate::check::{check_with, Mode};
use crate::error::{DecompError, Result};
use crate::ops::Ops;

/// A set of parts, stored as increasing indices into the ground structure.
#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize)]
pub struct Decomposition {
    parts: Vec<usize>,
}

impl Decomposition {
    pub fn new(mut parts: Vec<usize>) -> Decomposition {
        parts.sort_unstable();
        parts.dedup();
        Decomposition { parts }
    }

    pub fn empty() -> Decomposition {
        Decomposition { parts: Vec::new() }
    }

    pub fn parts(&self) -> &[usize] {
        &self.parts
    }

    pub fn len(&self) -> usize {
        self.parts.len()
    }

    pub fn is_empty(&self) -> bool {
        self.parts.is_empty()
    }

    pub fn contains(&self, x: usize) -> bool {
        self.parts.binary_search(&x).is_ok()
    }

    /// `{a,b}` with parts in index order, `{}` when empty.
    pub fn label(&self, gs: &GroundStructure) -> String {
        let inner: Vec<&str> = self.parts.iter().map(|&x| gs.label(x)).collect();
        format!("{{{}}}", inner.join(","))
    }

    pub fn part_labels(&self, gs: &GroundStructure) -> Vec<String> {
        self.parts.iter().map(|&x| gs.label(x).to_string()).collect()
    }

    /// Refinement order: every part of `self` lies below some part of `other`.
    pub fn refines(&self, other: &Decomposition, gs: &GroundStructure) -> bool {
        let p = gs.poset();
        self.parts
            .iter()
            .all(|&t| other.parts.iter().any(|&s| p.leq(t, s)))
    }

    /// Subset given by a bitmask over the parts.
    pub fn sub(&self, mask: u64) -> Decomposition {
        Decomposition {
            parts: (0..self.parts.len())
                .filter(|i| mask >> i & 1 == 1)
                .map(|i| self.parts[i])
                .collect(),
        }
    }
}

struct Search<'a, 'b> {
    ops: &'b Ops<'a>,
    gs: &'a GroundStructure,
    mode: Mode,
    budget: &'b Budget,
    out: Vec<Decomposition>,
}

impl Search<'_, '_> {
    fn extend(
        &mut self,
        start: usize,
        parts: &mut Vec<usize>,
        joins: &[usize],
        heights: &[usize],
    ) -> Result<()> {
        let gs = self.gs;
        let rank = gs.rank();
        let hsum = *heights.last().unwrap();
        let full_join = *joins.last().unwrap();
        if !parts.is_empty() && full_join == gs.top() {
            if check_with(self.ops, parts, self.mode)?.is_none() {
                self.out.push(Decomposition::new(parts.clone()));
            }
            return Ok(());
        }
        if self.mode == Mode::Strict && hsum >= rank {
            return Ok(());
        }
        if parts.len() >= crate::check::MAX_PARTS {
            return Ok(());
        }
        for x in start..gs.len() {
            if x == gs.bottom() {
                continue;
            }
            let hx = gs.height(x);
            if self.mode == Mode::Strict && hsum + hx > rank {
                continue;
            }
            if !parts.iter().all(|&y| gs.compatible(x, y)) {
                continue;
            }
            self.budget.tick()?;
            let Some((new_joins, new_heights)) = self.grow(joins, heights, x) else {
                continue;
            };
            let mut all = joins.to_vec();
            all.extend_from_slice(&new_joins);
            let mut hs = heights.to_vec();
            hs.extend_from_slice(&new_heights);
            parts.push(x);
            self.extend(x + 1, parts, &all, &hs)?;
            parts.pop();
        }
        Ok(())
    }

    /// Joins of the subsets containing `x`, or `None` if a necessary clause fails.
    fn grow(&self, joins: &[usize], heights: &[usize], x: usize) -> Option<(Vec<usize>, Vec<usize>)> {
        let gs = self.gs;
        let hx = gs.height(x);
        let mut new_joins = Vec::with_capacity(joins.len());
        let mut new_heights = Vec::with_capacity(joins.len());
        for (&j, &h) in joins.iter().zip(heights) {
            let nj = self.ops.join(j, x)?;
            match self.mode {
                Mode::Strict => {
                    if gs.height(nj) != h + hx {
                        return None;
                    }
                }
                Mode::Weak => {
                    if joins.contains(&nj) || new_joins.contains(&nj) {
                        return None;
                    }
                }
            }
            new_joins.push(nj);
            new_heights.push(h + hx);
        }
        Some((new_joins, new_heights))
    }
}

/// Every full decomposition of `gs` in the given mode, sorted by parts.
pub fn enumerate_decompositions(
    gs: &GroundStructure,
    mode: Mode,
    budget: &Budget,
) -> Result<Vec<Decomposition>> {
    let ops = Ops::new(gs);
    enumerate_with(&ops, mode, budget)
}

pub(crate) fn enumerate_with(ops: &Ops<'_>, mode: Mode, budget: &Budget) -> Result<Vec<Decomposition>> {
    let gs = ops.structure();
    let mut search = Search {
        ops,
        gs,
        mode,
        budget,
        out: Vec::new(),
    };
    search.extend(0, &mut Vec::new(), &[gs.bottom()], &[0])?;
    let mut out = search.out;
    out.sort();
    Ok(out)
}

/// All subsets of the given full decompositions, including the empty set, sorted.
pub fn partial_decompositions(full: &[Decomposition], budget: &Budget) -> Result<Vec<Decomposition>> {
    let mut all = std::collections::BTreeSet::new();
    for d in full {
        if d.len() >= 63 {
            return Err(DecompError::BudgetExceeded { limit: budget.limit() });
        }
        budget.spend(1u64 << d.len())?;
        for mask in 0..1u64 << d.len() {
            all.insert(d.sub(mask));
        }
    }
    all.insert(Decomposition::empty());
    Ok(all.into_iter().collect())
}

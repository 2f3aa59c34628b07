//! Derived posets: induced subposets, products, opposites and mapping cylinders.

use std::sync::Arc;

use crate::error::{PosetError, Result};
use crate::poset::Poset;

/// Selects an induced subposet.
pub enum Selector<'a> {
    /// Closed interval `[x, y]`.
    Interval(usize, usize),
    /// Open interval `(x, y)`.
    StrictInterval(usize, usize),
    /// Everything except the unique minimum and the unique maximum (whichever exist).
    ProperPart,
    /// Elements strictly below `x`.
    BelowStrict(usize),
    /// Elements strictly above `x`.
    AboveStrict(usize),
    /// The whole poset with the order reversed.
    Opposite,
    Custom(&'a dyn Fn(usize) -> bool),
}

/// Applies a selector. The returned vector maps subposet indices to indices of `p`
/// (for `Opposite` it is the identity).
pub fn subposet(p: &Poset, selector: &Selector<'_>) -> Result<(Poset, Vec<usize>)> {
    match *selector {
        Selector::Interval(x, y) | Selector::StrictInterval(x, y) => {
            p.checked(x)?;
            p.checked(y)?;
            if !p.leq(x, y) {
                return Err(PosetError::NotComparable(
                    p.label(x).to_string(),
                    p.label(y).to_string(),
                ));
            }
            let strict = matches!(selector, Selector::StrictInterval(..));
            Ok(p.filter(|z| {
                p.leq(x, z) && p.leq(z, y) && !(strict && (z == x || z == y))
            }))
        }
        Selector::ProperPart => {
            let bottom = p.bottom();
            let top = p.top();
            Ok(p.filter(|z| Some(z) != bottom && Some(z) != top))
        }
        Selector::BelowStrict(x) => {
            p.checked(x)?;
            Ok(p.induced(p.below(x)))
        }
        Selector::AboveStrict(x) => {
            p.checked(x)?;
            Ok(p.induced(p.above(x)))
        }
        Selector::Opposite => Ok((p.opposite(), (0..p.len()).collect())),
        Selector::Custom(pred) => Ok(p.filter(pred)),
    }
}

/// Label of the pair `(a, b)` in a product.
pub fn pair_label(a: &str, b: &str) -> String {
    format!("({a},{b})")
}

/// Cartesian product with the componentwise order; labels are `(a,b)`.
pub fn direct_product(p: &Poset, q: &Poset) -> Poset {
    let pairs: Vec<(usize, usize)> = (0..p.len())
        .flat_map(|i| (0..q.len()).map(move |j| (i, j)))
        .collect();
    let labels: Vec<String> = pairs
        .iter()
        .map(|&(i, j)| pair_label(p.label(i), q.label(j)))
        .collect();
    Poset::from_trusted_relation(labels, |a, b| {
        let (i, j) = pairs[a];
        let (k, l) = pairs[b];
        p.leq(i, k) && q.leq(j, l)
    })
}

/// An order-preserving map between two posets.
#[derive(Clone, Debug)]
pub struct PosetMap {
    source: Arc<Poset>,
    target: Arc<Poset>,
    image: Vec<usize>,
}

impl PosetMap {
    /// Checks that `image` is order-preserving from `source` to `target`.
    pub fn new(source: Arc<Poset>, target: Arc<Poset>, image: Vec<usize>) -> Result<PosetMap> {
        if image.len() != source.len() {
            return Err(PosetError::IndexOutOfRange {
                index: image.len(),
                len: source.len(),
            });
        }
        for &t in &image {
            target.checked(t)?;
        }
        for x in 0..source.len() {
            for &y in source.above(x) {
                if !target.leq(image[x], image[y]) {
                    return Err(PosetError::NotOrderPreserving(
                        source.label(x).to_string(),
                        source.label(y).to_string(),
                    ));
                }
            }
        }
        Ok(PosetMap {
            source,
            target,
            image,
        })
    }

    pub fn source(&self) -> &Poset {
        &self.source
    }

    pub fn target(&self) -> &Poset {
        &self.target
    }

    pub fn image(&self) -> &[usize] {
        &self.image
    }

    pub fn apply(&self, x: usize) -> usize {
        self.image[x]
    }

    pub fn is_injective(&self) -> bool {
        let mut seen = vec![false; self.target.len()];
        self.image.iter().all(|&t| !std::mem::replace(&mut seen[t], true))
    }

    pub fn is_surjective(&self) -> bool {
        let mut seen = vec![false; self.target.len()];
        for &t in &self.image {
            seen[t] = true;
        }
        seen.into_iter().all(|s| s)
    }

    /// True when `f(x) <= f(y)` implies `x <= y`.
    pub fn reflects_order(&self) -> bool {
        (0..self.source.len()).all(|x| {
            (0..self.source.len()).all(|y| {
                !self.target.leq(self.image[x], self.image[y]) || self.source.leq(x, y)
            })
        })
    }

    /// Bijective and order-reflecting.
    pub fn is_isomorphism(&self) -> bool {
        self.is_injective() && self.is_surjective() && self.reflects_order()
    }
}

pub const CYLINDER_SOURCE_PREFIX: &str = "t:";
pub const CYLINDER_TARGET_PREFIX: &str = "s:";

/// Non-Hausdorff mapping cylinder of `f: T -> S`: the disjoint union of `T` and `S`
/// (labels prefixed `t:` and `s:`) with `t < s` whenever `f(t) <= s`. With `remove_top`,
/// the maximum of `S` is dropped.
pub fn mapping_cylinder(f: &PosetMap, remove_top: bool) -> Result<Poset> {
    let t = f.source();
    let s = f.target();
    let skip = if remove_top {
        Some(s.top().ok_or(PosetError::Unbounded("maximum"))?)
    } else {
        None
    };
    let s_keep: Vec<usize> = (0..s.len()).filter(|&y| Some(y) != skip).collect();
    let nt = t.len();
    let mut labels: Vec<String> = (0..nt)
        .map(|x| format!("{CYLINDER_SOURCE_PREFIX}{}", t.label(x)))
        .collect();
    labels.extend(
        s_keep
            .iter()
            .map(|&y| format!("{CYLINDER_TARGET_PREFIX}{}", s.label(y))),
    );
    Ok(Poset::from_trusted_relation(labels, |a, b| {
        match (a < nt, b < nt) {
            (true, true) => t.leq(a, b),
            (false, false) => s.leq(s_keep[a - nt], s_keep[b - nt]),
            (true, false) => s.leq(f.apply(a), s_keep[b - nt]),
            (false, true) => false,
        }
    }))
}

#[cfg(test)]
mod tests {
    use super::*;

    fn chain(n: usize) -> Poset {
        let labels: Vec<String> = (0..=n).map(|i| format!("c{i}")).collect();
        let pairs: Vec<(usize, usize)> = (0..n).map(|i| (i, i + 1)).collect();
        Poset::new(labels, &pairs).unwrap()
    }

    #[test]
    fn product_of_chains_is_grid() {
        let g = direct_product(&chain(1), &chain(2));
        assert_eq!(g.len(), 6);
        assert_eq!(g.poset_height(), 3);
        assert!(g.leq(g.index_of("(c0,c1)").unwrap(), g.index_of("(c1,c2)").unwrap()));
        assert!(!g.comparable(g.index_of("(c1,c0)").unwrap(), g.index_of("(c0,c1)").unwrap()));
    }

    #[test]
    fn strict_interval_and_proper_part() {
        let c = chain(3);
        let (open, map) = subposet(&c, &Selector::StrictInterval(0, 3)).unwrap();
        assert_eq!(open.labels(), &["c1", "c2"]);
        assert_eq!(map, vec![1, 2]);
        let (proper, _) = subposet(&c, &Selector::ProperPart).unwrap();
        assert_eq!(proper, open);
        assert!(subposet(&c, &Selector::Interval(3, 0)).is_err());
    }

    #[test]
    fn non_monotone_map_rejected() {
        let c = Arc::new(chain(1));
        let err = PosetMap::new(c.clone(), c, vec![1, 0]).unwrap_err();
        assert!(matches!(err, PosetError::NotOrderPreserving(_, _)));
    }
}

//! Posets of words: ordered decompositions and injective words on a complex.

use std::collections::HashMap;
use std::sync::Arc;

use dlat_decomp::{Analysis, DecompKind, DecompPoset};
use dlat_poset::{Poset, PosetMap};
use dlat_topology::{face_label, SimplicialComplex};
use itertools::Itertools;

use crate::error::{DerivedError, Result};

/// A poset whose elements are tuples of distinct letters, with the forgetful map to the
/// underlying unordered poset.
#[derive(Clone, Debug)]
pub struct WordPoset {
    words: Vec<Vec<usize>>,
    poset: Poset,
    forget: Vec<usize>,
    unordered: Arc<Poset>,
}

/// `(a,b,c)`; the empty word is `()`.
pub fn word_label<'a>(letter: impl Fn(usize) -> &'a str, word: &[usize]) -> String {
    let parts: Vec<&str> = word.iter().map(|&x| letter(x)).collect();
    format!("({})", parts.join(","))
}

/// Order-preserving refinement: for all `i <= j` there are `k <= l` with `x_i <= y_k` and
/// `x_j <= y_l`.
pub fn ordered_leq(p: &Poset, x: &[usize], y: &[usize]) -> bool {
    let below: Vec<Vec<bool>> = x
        .iter()
        .map(|&a| y.iter().map(|&b| p.leq(a, b)).collect())
        .collect();
    // first and last positions of y above each letter of x
    let first: Vec<Option<usize>> = below.iter().map(|row| row.iter().position(|&b| b)).collect();
    let last: Vec<Option<usize>> = below.iter().map(|row| row.iter().rposition(|&b| b)).collect();
    (0..x.len()).all(|i| {
        (i..x.len()).all(|j| match (first[i], last[j]) {
            (Some(k), Some(l)) => k <= l,
            _ => false,
        })
    })
}

/// `a` is obtained from `b` by deleting letters.
pub fn is_subword(a: &[usize], b: &[usize]) -> bool {
    let mut it = b.iter();
    a.iter().all(|x| it.any(|y| y == x))
}

impl WordPoset {
    fn assemble(
        words: Vec<Vec<usize>>,
        labels: Vec<String>,
        leq: impl Fn(&[usize], &[usize]) -> bool,
        forget: Vec<usize>,
        unordered: Arc<Poset>,
    ) -> Result<WordPoset> {
        let poset = Poset::from_relation(labels.clone(), |i, j| leq(&words[i], &words[j]))?;
        let position: HashMap<&str, usize> = labels.iter().enumerate().map(|(i, l)| (l.as_str(), i)).collect();
        let order: Vec<usize> = poset.labels().iter().map(|l| position[l.as_str()]).collect();
        let words: Vec<Vec<usize>> = order.iter().map(|&o| words[o].clone()).collect();
        let forget: Vec<usize> = order.iter().map(|&o| forget[o]).collect();
        let map = PosetMap::new(Arc::new(poset.clone()), unordered.clone(), forget.clone());
        if map.is_err() {
            return Err(DerivedError::Inconsistent(
                "forgetful map is not order-preserving".to_string(),
            ));
        }
        Ok(WordPoset {
            words,
            poset,
            forget,
            unordered,
        })
    }

    pub fn poset(&self) -> &Poset {
        &self.poset
    }

    pub fn len(&self) -> usize {
        self.words.len()
    }

    pub fn is_empty(&self) -> bool {
        self.words.is_empty()
    }

    pub fn word(&self, i: usize) -> &[usize] {
        &self.words[i]
    }

    pub fn words(&self) -> &[Vec<usize>] {
        &self.words
    }

    /// Index in the unordered poset of the underlying set of word `i`.
    pub fn forget(&self, i: usize) -> usize {
        self.forget[i]
    }

    pub fn unordered(&self) -> &Poset {
        &self.unordered
    }

    /// The forgetful map as a checked poset map.
    pub fn forgetful_map(&self) -> PosetMap {
        PosetMap::new(Arc::new(self.poset.clone()), self.unordered.clone(), self.forget.clone())
            .expect("checked when the word poset was built")
    }

    /// Words lying over the elements selected by `pred` (indices of the unordered poset).
    pub fn fiber(&self, pred: impl Fn(usize) -> bool) -> (Poset, Vec<usize>) {
        self.poset.filter(|i| pred(self.forget[i]))
    }
}

/// Every arrangement of every element of D or PD, ordered by order-preserving refinement.
pub fn ordered_version(an: &Analysis<'_>, kind: DecompKind) -> Result<WordPoset> {
    let gs = an.structure();
    let unordered: &DecompPoset = match kind {
        DecompKind::Full => an.full(),
        DecompKind::Partial => an.partial(),
        other => {
            return Err(DerivedError::Inconsistent(format!(
                "ordered versions are built for D and PD, not {other}"
            )))
        }
    };
    let mut words = Vec::new();
    let mut forget = Vec::new();
    for (i, d) in unordered.elements().iter().enumerate() {
        an.budget().spend(1)?;
        for w in d.parts().iter().copied().permutations(d.len()) {
            words.push(w);
            forget.push(i);
        }
    }
    an.budget().spend(words.len() as u64)?;
    let labels = words.iter().map(|w| word_label(|x| gs.label(x), w)).collect();
    let p = gs.poset();
    WordPoset::assemble(
        words,
        labels,
        |x, y| ordered_leq(p, x, y),
        forget,
        Arc::new(unordered.poset().clone()),
    )
}

/// Nonempty injective words on the faces of `k`, ordered by subwords; the forgetful map
/// goes to the face poset of `k`.
pub fn injective_words(k: &SimplicialComplex, budget: usize) -> Result<WordPoset> {
    let faces = k.faces_by_dim(budget)?;
    let face_poset = k.face_poset(budget)?;
    let mut words = Vec::new();
    let mut forget = Vec::new();
    for face in faces.iter().flatten() {
        let target = face_poset
            .index_of(&face_label(k.vertices(), face))
            .expect("face labels index the face poset");
        for w in face.iter().map(|&v| v as usize).permutations(face.len()) {
            words.push(w);
            forget.push(target);
        }
        if words.len() > budget {
            return Err(DerivedError::Topology(dlat_topology::TopologyError::BudgetExceeded {
                what: "injective words",
                limit: budget,
            }));
        }
    }
    let labels = words
        .iter()
        .map(|w| word_label(|x| k.vertices()[x].as_str(), w))
        .collect();
    WordPoset::assemble(words, labels, is_subword, forget, Arc::new(face_poset))
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn subwords() {
        assert!(is_subword(&[1, 3], &[1, 2, 3]));
        assert!(!is_subword(&[3, 1], &[1, 2, 3]));
        assert!(is_subword(&[], &[4]));
    }

    #[test]
    fn refinement_on_an_antichain() {
        let p = Poset::new(vec!["a", "b", "c"], &[]).unwrap();
        assert!(ordered_leq(&p, &[0, 1], &[0, 1]));
        assert!(!ordered_leq(&p, &[1, 0], &[0, 1]));
        assert!(ordered_leq(&p, &[], &[2]));
    }

    #[test]
    fn edge_has_four_words() {
        let k = SimplicialComplex::simplex(vec!["a", "b"]);
        let w = injective_words(&k, 1000).unwrap();
        assert_eq!(w.len(), 4);
    }
}

//! Exact Euler-characteristic identities relating ordered, inflated and unordered objects.

use std::collections::BTreeMap;

use dlat_decomp::Analysis;
use dlat_poset::{subposet, Selector};
use dlat_topology::{reduced_euler_complex, reduced_euler_poset, SimplicialComplex};
use num_bigint::BigInt;
use serde::Serialize;

use crate::error::{DerivedError, Result};
use crate::words::WordPoset;

/// Both sides of an integer identity.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct EulerCheck {
    pub name: String,
    #[serde(serialize_with = "dlat_topology::json::integer")]
    pub left: BigInt,
    #[serde(serialize_with = "dlat_topology::json::integer")]
    pub right: BigInt,
}

impl EulerCheck {
    pub fn holds(&self) -> bool {
        self.left == self.right
    }
}

fn sign(k: usize) -> BigInt {
    if k % 2 == 0 {
        BigInt::from(1)
    } else {
        BigInt::from(-1)
    }
}

fn factorial(m: usize) -> BigInt {
    (1..=m).fold(BigInt::from(1), |acc, i| acc * i)
}

/// Number of derangements of `m` points, `Σ_i (-1)^i m!/i!`.
pub fn derangements(m: usize) -> BigInt {
    (0..=m).fold(BigInt::from(0), |acc, i| acc + sign(i) * (factorial(m) / factorial(i)))
}

/// χ̃ of top-removed ordered decompositions against `Σ_k (-1)^k k! N_k`.
pub fn ordered_full_identity(an: &Analysis<'_>, od: &WordPoset) -> Result<EulerCheck> {
    let top = od
        .poset()
        .top()
        .ok_or_else(|| DerivedError::Inconsistent("no maximum in ordered decompositions".into()))?;
    let (redm, _) = od.poset().filter(|i| i != top);
    let mut counts: BTreeMap<usize, usize> = BTreeMap::new();
    for d in an.full().elements() {
        *counts.entry(d.len()).or_default() += 1;
    }
    let right = counts
        .iter()
        .fold(BigInt::from(0), |acc, (&k, &n)| acc + sign(k) * factorial(k) * n);
    Ok(EulerCheck {
        name: "ordered-full".into(),
        left: reduced_euler_poset(&redm),
        right,
    })
}

/// χ̃ of proper ordered partial decompositions against χ̃(proper PD) plus signed χ̃ of the
/// open intervals `(∅, σ)` over top-removed D.
pub fn ordered_partial_identity(an: &Analysis<'_>, opd: &WordPoset) -> Result<EulerCheck> {
    let (proper_opd, _) = subposet(opd.poset(), &Selector::ProperPart)?;
    let pd = an.partial();
    let (proper_pd, _) = subposet(pd.poset(), &Selector::ProperPart)?;
    let bottom = pd
        .poset()
        .bottom()
        .ok_or_else(|| DerivedError::Inconsistent("PD has no minimum".into()))?;
    let top = an.full().poset().top();
    let mut right = reduced_euler_poset(&proper_pd);
    for (i, sigma) in an.full().elements().iter().enumerate() {
        if Some(i) == top {
            continue;
        }
        let s = pd.index_of(sigma).expect("full decompositions are partial decompositions");
        let (open, _) = subposet(pd.poset(), &Selector::StrictInterval(bottom, s))?;
        right += sign(sigma.len() - 1) * reduced_euler_poset(&open);
    }
    Ok(EulerCheck {
        name: "ordered-partial".into(),
        left: reduced_euler_poset(&proper_opd),
        right,
    })
}

fn link_sum(
    k: &SimplicialComplex,
    budget: usize,
    weight: impl Fn(&[u32]) -> BigInt,
) -> Result<BigInt> {
    let mut total = reduced_euler_complex(k, budget)?;
    for face in k.faces_by_dim(budget)?.into_iter().flatten() {
        let w = weight(&face);
        if w == BigInt::from(0) {
            continue;
        }
        let link = k.link(&face)?;
        total += w * sign(face.len()) * reduced_euler_complex(&link, budget)?;
    }
    Ok(total)
}

/// χ̃ of injective words on `k` against `χ̃(K) + Σ D(|σ|)(-1)^{|σ|} χ̃(Lk σ)`.
pub fn injective_words_identity(k: &SimplicialComplex, words: &WordPoset, budget: usize) -> Result<EulerCheck> {
    let right = link_sum(k, budget, |face| derangements(face.len()))?;
    Ok(EulerCheck {
        name: "injective-words".into(),
        left: reduced_euler_poset(words.poset()),
        right,
    })
}

/// χ̃ of an inflation against `χ̃(K) + Σ (∏|P_x| - 1)(-1)^{|σ|} χ̃(Lk σ)`.
pub fn inflation_identity(
    k: &SimplicialComplex,
    fibers: &BTreeMap<String, Vec<String>>,
    inflated: &SimplicialComplex,
    budget: usize,
) -> Result<EulerCheck> {
    let size = |v: u32| fibers.get(&k.vertices()[v as usize]).map_or(0, |f| f.len());
    let right = link_sum(k, budget, |face| {
        face.iter().fold(BigInt::from(1), |acc, &v| acc * (size(v) as i64 - 1))
    })?;
    Ok(EulerCheck {
        name: "inflation".into(),
        left: reduced_euler_complex(inflated, budget)?,
        right,
    })
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn derangement_numbers() {
        let d: Vec<BigInt> = (0..=5).map(derangements).collect();
        assert_eq!(d, [1, 0, 1, 2, 9, 44].map(BigInt::from));
    }
}

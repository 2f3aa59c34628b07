//! Reduced Euler characteristics, with the convention `χ̃({∅}) = -1`.

use num_bigint::BigInt;
use num_traits::{One, Zero};

use dlat_poset::Poset;

use crate::complex::SimplicialComplex;
use crate::error::Result;

/// `-1 + Σ_k (-1)^k f_k` from face counts.
pub fn euler_from_counts(counts: &[u64]) -> BigInt {
    let mut acc = BigInt::from(-1);
    for (k, &c) in counts.iter().enumerate() {
        if k % 2 == 0 {
            acc += c;
        } else {
            acc -= c;
        }
    }
    acc
}

pub fn reduced_euler_complex(k: &SimplicialComplex, budget: usize) -> Result<BigInt> {
    Ok(euler_from_counts(&k.face_counts(budget)?))
}

/// Number of chains of each size (`result[i]` counts chains with `i + 1` elements), by a
/// dynamic programme over a linear extension.
pub fn chain_counts(p: &Poset) -> Vec<BigInt> {
    let n = p.len();
    let h = p.poset_height();
    let mut ending: Vec<Vec<BigInt>> = vec![Vec::new(); n];
    let mut totals = vec![BigInt::zero(); if n == 0 { 0 } else { h + 1 }];
    for &x in p.linear_extension() {
        let mut row = vec![BigInt::zero(); p.height(x) + 1];
        row[0] = BigInt::one();
        for &y in p.below(x) {
            for (len, c) in ending[y].iter().enumerate() {
                row[len + 1] += c;
            }
        }
        for (len, c) in row.iter().enumerate() {
            totals[len] += c;
        }
        ending[x] = row;
    }
    totals
}

/// `χ̃(Δ(P))` from chain counts.
pub fn reduced_euler_poset(p: &Poset) -> BigInt {
    let mut acc = BigInt::from(-1);
    for (k, c) in chain_counts(p).iter().enumerate() {
        if k % 2 == 0 {
            acc += c;
        } else {
            acc -= c;
        }
    }
    acc
}

/// `μ(0̂, 1̂)` of `P` with a new minimum and maximum adjoined, by the Möbius recursion.
pub fn mobius_of_bounded_extension(p: &Poset) -> BigInt {
    // m[x] = μ(0̂, x) = -Σ_{0̂ <= y < x} μ(0̂, y)
    let mut m = vec![BigInt::zero(); p.len()];
    let mut total = BigInt::one();
    for &x in p.linear_extension() {
        let mut v = -BigInt::one();
        for &y in p.below(x) {
            v -= &m[y];
        }
        total += &v;
        m[x] = v;
    }
    -total
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn empty_poset() {
        let p = Poset::new(Vec::<String>::new(), &[]).unwrap();
        assert_eq!(reduced_euler_poset(&p), BigInt::from(-1));
        assert_eq!(mobius_of_bounded_extension(&p), BigInt::from(-1));
        assert_eq!(reduced_euler_complex(&SimplicialComplex::empty(), 10).unwrap(), BigInt::from(-1));
    }

    #[test]
    fn point_and_antichain() {
        let pt = Poset::new(vec!["x"], &[]).unwrap();
        assert_eq!(reduced_euler_poset(&pt), BigInt::zero());
        let three = Poset::new(vec!["x", "y", "z"], &[]).unwrap();
        assert_eq!(reduced_euler_poset(&three), BigInt::from(2));
        assert_eq!(mobius_of_bounded_extension(&three), BigInt::from(2));
    }
}

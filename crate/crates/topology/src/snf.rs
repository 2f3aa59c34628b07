//! Exact integer elimination: sparse unit-pivot reduction followed by a dense Smith normal
//! form on whatever remains. Generic over the integer type; checked arithmetic reports
//! overflow so callers can retry with big integers.

use std::collections::BTreeSet;
use std::fmt::Debug;

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{CheckedAdd, CheckedMul, CheckedSub, Signed};

use crate::error::{Result, TopologyError};

/// Integer types usable by the elimination kernel.
pub trait Scalar: Clone + Debug + Integer + Signed + CheckedAdd + CheckedSub + CheckedMul + From<i32> {
    fn to_bigint(&self) -> BigInt;
}

impl Scalar for i64 {
    fn to_bigint(&self) -> BigInt {
        BigInt::from(*self)
    }
}

impl Scalar for BigInt {
    fn to_bigint(&self) -> BigInt {
        self.clone()
    }
}

pub type SmallScalar = i64;
pub type BigScalar = BigInt;

fn mul<T: Scalar>(a: &T, b: &T) -> Result<T> {
    a.checked_mul(b).ok_or(TopologyError::Overflow)
}

fn sub<T: Scalar>(a: &T, b: &T) -> Result<T> {
    a.checked_sub(b).ok_or(TopologyError::Overflow)
}

/// A sparse matrix stored by rows; each row is sorted by column.
#[derive(Clone, Debug)]
pub struct SparseMatrix<T> {
    pub rows: usize,
    pub cols: usize,
    pub entries: Vec<Vec<(usize, T)>>,
}

impl<T: Scalar> SparseMatrix<T> {
    pub fn new(rows: usize, cols: usize) -> Self {
        SparseMatrix {
            rows,
            cols,
            entries: vec![Vec::new(); rows],
        }
    }

    /// Adds `value` at `(r, c)`.
    pub fn push(&mut self, r: usize, c: usize, value: T) {
        let row = &mut self.entries[r];
        match row.binary_search_by_key(&c, |e| e.0) {
            Ok(i) => {
                let sum = row[i].1.clone() + value;
                if sum.is_zero() {
                    row.remove(i);
                } else {
                    row[i].1 = sum;
                }
            }
            Err(i) => {
                if !value.is_zero() {
                    row.insert(i, (c, value));
                }
            }
        }
    }

    pub fn convert<U: Scalar>(&self, f: impl Fn(&T) -> U) -> SparseMatrix<U> {
        SparseMatrix {
            rows: self.rows,
            cols: self.cols,
            entries: self
                .entries
                .iter()
                .map(|r| r.iter().map(|(c, v)| (*c, f(v))).collect())
                .collect(),
        }
    }
}

/// Rank and the invariant factors greater than one.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct SmithInvariants {
    pub rank: usize,
    pub torsion: Vec<BigInt>,
}

/// `row_a - factor * row_b` for sorted sparse rows.
fn combine<T: Scalar>(a: &[(usize, T)], b: &[(usize, T)], factor: &T) -> Result<Vec<(usize, T)>> {
    let mut out = Vec::with_capacity(a.len() + b.len());
    let (mut i, mut j) = (0, 0);
    while i < a.len() || j < b.len() {
        if j == b.len() || (i < a.len() && a[i].0 < b[j].0) {
            out.push(a[i].clone());
            i += 1;
        } else if i == a.len() || b[j].0 < a[i].0 {
            let v = mul(factor, &b[j].1)?;
            out.push((b[j].0, -v));
            j += 1;
        } else {
            let v = sub(&a[i].1, &mul(factor, &b[j].1)?)?;
            if !v.is_zero() {
                out.push((a[i].0, v));
            }
            i += 1;
            j += 1;
        }
    }
    Ok(out)
}

/// Smith invariants of `m`.
pub fn smith_invariants<T: Scalar>(m: &SparseMatrix<T>) -> Result<SmithInvariants> {
    let mut rows = m.entries.clone();
    let mut alive = vec![true; m.rows];
    let mut col_rows: Vec<BTreeSet<usize>> = vec![BTreeSet::new(); m.cols];
    for (r, row) in rows.iter().enumerate() {
        for (c, _) in row {
            col_rows[*c].insert(r);
        }
    }
    let mut rank = 0usize;
    // unit pivots, chosen per row by the sparsest column
    loop {
        let mut progress = false;
        let mut order: Vec<usize> = (0..m.rows).filter(|&r| alive[r] && !rows[r].is_empty()).collect();
        order.sort_by_key(|&r| rows[r].len());
        for r in order {
            if !alive[r] || rows[r].is_empty() {
                continue;
            }
            let pivot = rows[r]
                .iter()
                .filter(|(_, v)| v.abs().is_one())
                .min_by_key(|(c, _)| col_rows[*c].len())
                .map(|(c, v)| (*c, v.clone()));
            let Some((c, u)) = pivot else { continue };
            let others: Vec<usize> = col_rows[c].iter().copied().filter(|&o| o != r).collect();
            let pivot_row = std::mem::take(&mut rows[r]);
            for o in others {
                let entry = rows[o]
                    .binary_search_by_key(&c, |e| e.0)
                    .map(|i| rows[o][i].1.clone())
                    .expect("column index is consistent");
                let factor = mul(&entry, &u)?;
                let old = std::mem::take(&mut rows[o]);
                let new = combine(&old, &pivot_row, &factor)?;
                for (cc, _) in &old {
                    col_rows[*cc].remove(&o);
                }
                for (cc, _) in &new {
                    col_rows[*cc].insert(o);
                }
                rows[o] = new;
            }
            for (cc, _) in &pivot_row {
                col_rows[*cc].remove(&r);
            }
            alive[r] = false;
            rank += 1;
            progress = true;
        }
        if !progress {
            break;
        }
    }
    // dense remainder
    let live_rows: Vec<usize> = (0..m.rows).filter(|&r| alive[r] && !rows[r].is_empty()).collect();
    let live_cols: Vec<usize> = (0..m.cols).filter(|&c| !col_rows[c].is_empty()).collect();
    if live_rows.is_empty() {
        return Ok(SmithInvariants { rank, torsion: Vec::new() });
    }
    let col_pos: std::collections::HashMap<usize, usize> =
        live_cols.iter().enumerate().map(|(i, &c)| (c, i)).collect();
    let mut dense = vec![vec![T::zero(); live_cols.len()]; live_rows.len()];
    for (i, &r) in live_rows.iter().enumerate() {
        for (c, v) in &rows[r] {
            dense[i][col_pos[c]] = v.clone();
        }
    }
    let diag = dense_smith(dense)?;
    let mut torsion = Vec::new();
    for d in diag {
        rank += 1;
        if !d.abs().is_one() {
            torsion.push(d.abs().to_bigint());
        }
    }
    torsion.sort();
    Ok(SmithInvariants { rank, torsion })
}

/// Nonzero diagonal of the Smith normal form of a dense matrix, each entry dividing the next.
pub fn dense_smith<T: Scalar>(mut a: Vec<Vec<T>>) -> Result<Vec<T>> {
    let rows = a.len();
    let cols = a.first().map_or(0, Vec::len);
    let mut diag = Vec::new();
    let mut t = 0;
    while t < rows.min(cols) {
        // smallest nonzero entry of the trailing block
        let mut best: Option<(usize, usize)> = None;
        for (i, row) in a.iter().enumerate().skip(t) {
            for (j, v) in row.iter().enumerate().skip(t) {
                if !v.is_zero() && best.is_none_or(|(bi, bj)| v.abs() < a[bi][bj].abs()) {
                    best = Some((i, j));
                }
            }
        }
        let Some((pi, pj)) = best else { break };
        a.swap(t, pi);
        for row in a.iter_mut() {
            row.swap(t, pj);
        }
        loop {
            let p = a[t][t].clone();
            let mut clean = true;
            for i in t + 1..rows {
                if a[i][t].is_zero() {
                    continue;
                }
                let q = a[i][t].div_floor(&p);
                for j in t..cols {
                    let v = sub(&a[i][j], &mul(&q, &a[t][j])?)?;
                    a[i][j] = v;
                }
                if !a[i][t].is_zero() {
                    clean = false;
                }
            }
            for j in t + 1..cols {
                if a[t][j].is_zero() {
                    continue;
                }
                let q = a[t][j].div_floor(&p);
                for row in a.iter_mut().skip(t) {
                    let v = sub(&row[j], &mul(&q, &row[t])?)?;
                    row[j] = v;
                }
                if !a[t][j].is_zero() {
                    clean = false;
                }
            }
            if clean {
                // divisibility: fold any non-multiple into row t and continue reducing
                let bad = (t + 1..rows).find(|&i| (t + 1..cols).any(|j| !a[i][j].is_multiple_of(&p)));
                match bad {
                    None => break,
                    Some(i) => {
                        for j in t..cols {
                            let v = a[t][j].checked_add(&a[i][j]).ok_or(TopologyError::Overflow)?;
                            a[t][j] = v;
                        }
                        continue;
                    }
                }
            }
            // move the smallest nonzero entry of row t / column t to the pivot
            let mut best = (t, t);
            for i in t..rows {
                if !a[i][t].is_zero() && a[i][t].abs() < a[best.0][best.1].abs() {
                    best = (i, t);
                }
            }
            for j in t..cols {
                if !a[t][j].is_zero() && a[t][j].abs() < a[best.0][best.1].abs() {
                    best = (t, j);
                }
            }
            a.swap(t, best.0);
            for row in a.iter_mut() {
                row.swap(t, best.1);
            }
        }
        diag.push(a[t][t].abs());
        t += 1;
    }
    Ok(diag)
}

/// Smith invariants of an integer matrix, on `i64` first and on big integers after overflow.
pub fn smith_invariants_exact(m: &SparseMatrix<i64>) -> SmithInvariants {
    match smith_invariants(m) {
        Ok(s) => s,
        Err(_) => {
            let big = m.convert(|v| BigInt::from(*v));
            smith_invariants(&big).expect("big integers do not overflow")
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn from_dense(rows: &[&[i64]]) -> SparseMatrix<i64> {
        let mut m = SparseMatrix::new(rows.len(), rows[0].len());
        for (i, r) in rows.iter().enumerate() {
            for (j, &v) in r.iter().enumerate() {
                m.push(i, j, v);
            }
        }
        m
    }

    #[test]
    fn torsion_two() {
        let m = from_dense(&[&[2, 0], &[0, 3]]);
        let s = smith_invariants(&m).unwrap();
        assert_eq!(s.rank, 2);
        assert_eq!(s.torsion, vec![BigInt::from(6)]);
    }

    #[test]
    fn mixed_units_and_non_units() {
        let m = from_dense(&[&[1, 2, 3], &[4, 5, 6], &[7, 8, 9]]);
        let s = smith_invariants(&m).unwrap();
        assert_eq!(s.rank, 2);
        assert_eq!(s.torsion, vec![BigInt::from(3)]);
    }

    #[test]
    fn overflow_falls_back_to_big_integers() {
        let big = i64::MAX / 2;
        let m = from_dense(&[&[big, 3], &[5, big]]);
        assert!(matches!(smith_invariants(&m), Err(TopologyError::Overflow) | Ok(_)));
        let s = smith_invariants_exact(&m);
        assert_eq!(s.rank, 2);
        let det = BigInt::from(big) * BigInt::from(big) - BigInt::from(15);
        let product: BigInt = s.torsion.iter().product();
        assert_eq!(product, det);
    }
}

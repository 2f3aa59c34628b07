//! Row reduction and subspace arithmetic over a [`FiniteField`].

use crate::field::{Elem, FiniteField};

pub type Vector = Vec<Elem>;

/// A subspace of `GF(q)^n`, stored by its reduced row-echelon basis (pivots leftmost).
#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Subspace {
    n: usize,
    rows: Vec<Vector>,
}

/// Reduced row-echelon form of the given rows; zero rows are dropped.
pub fn rref(field: &FiniteField, rows: &[Vector], n: usize) -> Vec<Vector> {
    let mut m: Vec<Vector> = rows.to_vec();
    let mut rank = 0;
    for col in 0..n {
        let Some(pivot) = (rank..m.len()).find(|&r| m[r][col] != 0) else {
            continue;
        };
        m.swap(rank, pivot);
        let inv = field.inv(m[rank][col]).expect("pivot is nonzero");
        for c in 0..n {
            m[rank][c] = field.mul(m[rank][c], inv);
        }
        for r in 0..m.len() {
            if r != rank && m[r][col] != 0 {
                let factor = m[r][col];
                for c in 0..n {
                    let t = field.mul(factor, m[rank][c]);
                    m[r][c] = field.sub(m[r][c], t);
                }
            }
        }
        rank += 1;
        if rank == m.len() {
            break;
        }
    }
    m.truncate(rank);
    m
}

pub fn rank(field: &FiniteField, rows: &[Vector], n: usize) -> usize {
    rref(field, rows, n).len()
}

/// Basis of the right null space `{u : M u = 0}` of a matrix with `n` columns.
pub fn null_space(field: &FiniteField, rows: &[Vector], n: usize) -> Vec<Vector> {
    let r = rref(field, rows, n);
    let pivots: Vec<usize> = r
        .iter()
        .map(|row| row.iter().position(|&x| x != 0).expect("rref rows are nonzero"))
        .collect();
    let mut basis = Vec::new();
    for free in (0..n).filter(|c| !pivots.contains(c)) {
        let mut v = vec![0; n];
        v[free] = 1;
        for (row, &p) in r.iter().zip(&pivots) {
            v[p] = field.neg(row[free]);
        }
        basis.push(v);
    }
    basis
}

/// Formats a vector as a digit string, with `.` separators once entries need more than one digit.
pub fn vector_label(field: &FiniteField, v: &[Elem]) -> String {
    if field.order() <= 10 {
        v.iter().map(|x| x.to_string()).collect()
    } else {
        v.iter().map(|x| x.to_string()).collect::<Vec<_>>().join(".")
    }
}

impl Subspace {
    pub fn zero(n: usize) -> Subspace {
        Subspace { n, rows: Vec::new() }
    }

    pub fn whole(n: usize) -> Subspace {
        let rows = (0..n)
            .map(|i| (0..n).map(|j| u32::from(i == j)).collect())
            .collect();
        Subspace { n, rows }
    }

    pub fn span(field: &FiniteField, vectors: &[Vector], n: usize) -> Subspace {
        Subspace {
            n,
            rows: rref(field, vectors, n),
        }
    }

    /// Wraps rows already in reduced row-echelon form.
    pub(crate) fn from_rref(n: usize, rows: Vec<Vector>) -> Subspace {
        Subspace { n, rows }
    }

    pub fn ambient_dim(&self) -> usize {
        self.n
    }

    pub fn dim(&self) -> usize {
        self.rows.len()
    }

    pub fn basis(&self) -> &[Vector] {
        &self.rows
    }

    pub fn contains_vector(&self, field: &FiniteField, v: &[Elem]) -> bool {
        let mut rows = self.rows.clone();
        rows.push(v.to_vec());
        rank(field, &rows, self.n) == self.dim()
    }

    pub fn is_subspace_of(&self, field: &FiniteField, other: &Subspace) -> bool {
        self.dim() <= other.dim() && self.rows.iter().all(|v| other.contains_vector(field, v))
    }

    pub fn sum(&self, field: &FiniteField, other: &Subspace) -> Subspace {
        let mut rows = self.rows.clone();
        rows.extend(other.rows.iter().cloned());
        Subspace::span(field, &rows, self.n)
    }

    /// Intersection, computed from the kernel of `[A; -B]^T` style relations.
    pub fn intersection(&self, field: &FiniteField, other: &Subspace) -> Subspace {
        let (a, b) = (self.dim(), other.dim());
        if a == 0 || b == 0 {
            return Subspace::zero(self.n);
        }
        // columns of the system are the coefficients (c_1..c_a, d_1..d_b) with sum c_i a_i = sum d_j b_j
        let system: Vec<Vector> = (0..self.n)
            .map(|coord| {
                let mut row: Vector = self.rows.iter().map(|r| r[coord]).collect();
                row.extend(other.rows.iter().map(|r| field.neg(r[coord])));
                row
            })
            .collect();
        let kernel = null_space(field, &system, a + b);
        let vectors: Vec<Vector> = kernel
            .iter()
            .map(|coeffs| {
                let mut v = vec![0; self.n];
                for (c, row) in coeffs[..a].iter().zip(&self.rows) {
                    for (slot, &x) in v.iter_mut().zip(row) {
                        *slot = field.add(*slot, field.mul(*c, x));
                    }
                }
                v
            })
            .collect();
        Subspace::span(field, &vectors, self.n)
    }

    /// Every vector of the subspace, in lexicographic order of coefficient tuples.
    pub fn vectors(&self, field: &FiniteField) -> Vec<Vector> {
        let q = field.order() as usize;
        let d = self.dim();
        let total = q.pow(d as u32);
        let mut out = Vec::with_capacity(total);
        for idx in 0..total {
            let mut rest = idx;
            let mut v = vec![0; self.n];
            for row in self.rows.iter().rev() {
                let c = (rest % q) as Elem;
                rest /= q;
                if c != 0 {
                    for (slot, &x) in v.iter_mut().zip(row) {
                        *slot = field.add(*slot, field.mul(c, x));
                    }
                }
            }
            out.push(v);
        }
        out
    }

    pub fn label(&self, field: &FiniteField) -> String {
        let rows: Vec<String> = self.rows.iter().map(|r| vector_label(field, r)).collect();
        format!("span({})", rows.join(","))
    }
}

/// Every subspace of `GF(q)^n`, enumerated by pivot pattern and free RREF entries.
pub fn all_subspaces(field: &FiniteField, n: usize) -> Vec<Subspace> {
    let q = field.order() as u64;
    let mut out = Vec::new();
    for mask in 0u32..(1 << n) {
        let pivots: Vec<usize> = (0..n).filter(|&c| mask & (1 << c) != 0).collect();
        // free slots: (row, column) with column right of the row pivot and not a pivot column
        let free: Vec<(usize, usize)> = pivots
            .iter()
            .enumerate()
            .flat_map(|(r, &p)| {
                (p + 1..n)
                    .filter(|c| mask & (1 << c) == 0)
                    .map(move |c| (r, c))
            })
            .collect();
        let total = q.pow(free.len() as u32);
        for idx in 0..total {
            let mut rows: Vec<Vector> = pivots
                .iter()
                .map(|&p| {
                    let mut r = vec![0; n];
                    r[p] = 1;
                    r
                })
                .collect();
            let mut rest = idx;
            for &(r, c) in free.iter().rev() {
                rows[r][c] = (rest % q) as Elem;
                rest /= q;
            }
            out.push(Subspace::from_rref(n, rows));
        }
    }
    out
}

/// Gaussian binomial coefficient `[n choose k]_q`.
pub fn gaussian_binomial(q: u64, n: u32, k: u32) -> u64 {
    if k > n {
        return 0;
    }
    let mut num: u128 = 1;
    let mut den: u128 = 1;
    for i in 0..k {
        num *= (q as u128).pow(n - i) - 1;
        den *= (q as u128).pow(i + 1) - 1;
    }
    (num / den) as u64
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn counts_match_gaussian_binomials() {
        for (q, n) in [(2u64, 3usize), (3, 2), (4, 2), (2, 4)] {
            let f = FiniteField::new(q).unwrap();
            let subs = all_subspaces(&f, n);
            let expected: u64 = (0..=n as u32).map(|k| gaussian_binomial(q, n as u32, k)).sum();
            assert_eq!(subs.len() as u64, expected);
        }
    }

    #[test]
    fn intersection_of_two_planes_in_three_space_is_a_line() {
        let f = FiniteField::new(2).unwrap();
        let a = Subspace::span(&f, &[vec![1, 0, 0], vec![0, 1, 0]], 3);
        let b = Subspace::span(&f, &[vec![0, 1, 0], vec![0, 0, 1]], 3);
        let i = a.intersection(&f, &b);
        assert_eq!(i.dim(), 1);
        assert_eq!(i.label(&f), "span(010)");
        assert_eq!(a.sum(&f, &b), Subspace::whole(3));
    }

    #[test]
    fn null_space_dimension() {
        let f = FiniteField::new(3).unwrap();
        let k = null_space(&f, &[vec![1, 1, 1]], 3);
        assert_eq!(k.len(), 2);
        for v in k {
            assert_eq!(f.add(f.add(v[0], v[1]), v[2]), 0);
        }
    }
}

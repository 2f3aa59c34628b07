//! Posets of non-degenerate subspaces of formed spaces.

use std::collections::BTreeMap;

use dlat_poset::BoundedPoset;

use crate::error::{GroundError, Result};
use crate::field::{Elem, FiniteField};
use crate::lattices::{inclusion_poset, MAX_ELEMENTS};
use crate::linalg::{all_subspaces, gaussian_binomial, null_space, rank, vector_label, Subspace, Vector};
use crate::structure::{construction_order, GroundStructure, Kind, Metadata};

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Involution {
    Identity,
    /// `x ↦ x^r` on `GF(r^2)`.
    Frobenius,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum FormKind {
    /// Identity Gram matrix over `GF(q^2)` with `x ↦ x^q`.
    Unitary,
    /// `[[0, I], [-I, 0]]` over `GF(q)`.
    Symplectic,
    /// An explicit Gram matrix over `GF(q)`.
    Gram {
        matrix: Vec<Vec<u64>>,
        involution: Involution,
    },
}

/// A sesquilinear form `Ψ(v, w) = Σ v_i G_ij σ(w_j)` with `σ(x) = x^e`, `σ² = id`.
#[derive(Clone, Debug)]
pub struct Form {
    field: FiniteField,
    gram: Vec<Vector>,
    sigma_exp: u64,
    dim: usize,
}

impl Form {
    pub fn field(&self) -> &FiniteField {
        &self.field
    }

    pub fn dim(&self) -> usize {
        self.dim
    }

    pub fn sigma(&self, x: Elem) -> Elem {
        if self.sigma_exp == 1 {
            x
        } else {
            self.field.pow(x, self.sigma_exp)
        }
    }

    pub fn eval(&self, v: &[Elem], w: &[Elem]) -> Elem {
        let f = &self.field;
        let mut acc = 0;
        for (i, &vi) in v.iter().enumerate() {
            if vi == 0 {
                continue;
            }
            for (j, &wj) in w.iter().enumerate() {
                let g = self.gram[i][j];
                if g != 0 && wj != 0 {
                    acc = f.add(acc, f.mul(f.mul(vi, g), self.sigma(wj)));
                }
            }
        }
        acc
    }

    /// `{w : Ψ(s, w) = 0 for all s ∈ S}`.
    pub fn right_perp(&self, s: &Subspace) -> Subspace {
        let f = &self.field;
        // Ψ(s, w) = (s G) · σ(w); solve for u = σ(w), then w = σ(u) since σ is an involution
        let rows: Vec<Vector> = s
            .basis()
            .iter()
            .map(|b| {
                (0..self.dim)
                    .map(|j| {
                        (0..self.dim).fold(0, |acc, i| f.add(acc, f.mul(b[i], self.gram[i][j])))
                    })
                    .collect()
            })
            .collect();
        let kernel = if rows.is_empty() {
            Subspace::whole(self.dim).basis().to_vec()
        } else {
            null_space(f, &rows, self.dim)
        };
        let images: Vec<Vector> = kernel
            .iter()
            .map(|u| u.iter().map(|&x| self.sigma(x)).collect())
            .collect();
        Subspace::span(f, &images, self.dim)
    }

    /// `{w : Ψ(w, s) = 0 for all s ∈ S}`.
    pub fn left_perp(&self, s: &Subspace) -> Subspace {
        let f = &self.field;
        let rows: Vec<Vector> = s
            .basis()
            .iter()
            .map(|b| {
                (0..self.dim)
                    .map(|i| {
                        (0..self.dim).fold(0, |acc, j| {
                            f.add(acc, f.mul(self.gram[i][j], self.sigma(b[j])))
                        })
                    })
                    .collect()
            })
            .collect();
        let kernel = if rows.is_empty() {
            Subspace::whole(self.dim).basis().to_vec()
        } else {
            null_space(f, &rows, self.dim)
        };
        Subspace::span(f, &kernel, self.dim)
    }

    /// Rank of the restriction of the form to `S`.
    pub fn restricted_rank(&self, s: &Subspace) -> usize {
        let rows: Vec<Vector> = s
            .basis()
            .iter()
            .map(|v| s.basis().iter().map(|w| self.eval(v, w)).collect())
            .collect();
        rank(&self.field, &rows, s.dim())
    }

    pub fn is_nondegenerate_on(&self, s: &Subspace) -> bool {
        self.restricted_rank(s) == s.dim()
    }

    /// Checks `Ψ(v, ·)` and `Ψ(·, v)` have the same kernel for every projective point `v`.
    fn check_reflexive(&self, lines: &[Subspace]) -> Result<()> {
        for line in lines {
            if self.left_perp(line) != self.right_perp(line) {
                return Err(GroundError::NonReflexive(format!(
                    "left and right orthogonals of {} differ",
                    line.label(&self.field)
                )));
            }
        }
        Ok(())
    }
}

fn build_form(kind: &FormKind, q: u64, dim: usize) -> Result<(Form, String)> {
    match kind {
        FormKind::Unitary => {
            let q2 = q
                .checked_mul(q)
                .ok_or(GroundError::NotPrimePower(q))?;
            crate::field::prime_power(q).ok_or(GroundError::NotPrimePower(q))?;
            let field = FiniteField::new(q2)?;
            let gram = (0..dim)
                .map(|i| (0..dim).map(|j| u32::from(i == j)).collect())
                .collect();
            Ok((
                Form {
                    field,
                    gram,
                    sigma_exp: q,
                    dim,
                },
                "unitary".into(),
            ))
        }
        FormKind::Symplectic => {
            if dim % 2 != 0 {
                return Err(GroundError::InvalidParameter(format!(
                    "symplectic spaces need even dimension, got {dim}"
                )));
            }
            let field = FiniteField::new(q)?;
            let m = dim / 2;
            let minus_one = field.neg(1);
            let gram = (0..dim)
                .map(|i| {
                    (0..dim)
                        .map(|j| {
                            if i < m && j == i + m {
                                1
                            } else if i >= m && j + m == i {
                                minus_one
                            } else {
                                0
                            }
                        })
                        .collect()
                })
                .collect();
            Ok((
                Form {
                    field,
                    gram,
                    sigma_exp: 1,
                    dim,
                },
                "symplectic".into(),
            ))
        }
        FormKind::Gram { matrix, involution } => {
            let field = FiniteField::new(q)?;
            let sigma_exp = match involution {
                Involution::Identity => {
                    if field.characteristic() == 2 {
                        return Err(GroundError::UnsupportedForm(
                            "sigma = identity in characteristic 2".into(),
                        ));
                    }
                    1
                }
                Involution::Frobenius => {
                    if field.degree() % 2 != 0 {
                        return Err(GroundError::UnsupportedForm(format!(
                            "sigma = frobenius needs a square field order, got {q}"
                        )));
                    }
                    (field.characteristic() as u64).pow(field.degree() / 2)
                }
            };
            if matrix.len() != dim || matrix.iter().any(|r| r.len() != dim) {
                return Err(GroundError::InvalidParameter(format!(
                    "Gram matrix must be {dim}x{dim}"
                )));
            }
            if let Some(bad) = matrix.iter().flatten().find(|&&x| x >= q) {
                return Err(GroundError::InvalidParameter(format!(
                    "Gram entry {bad} is not an element of GF({q})"
                )));
            }
            let gram = matrix
                .iter()
                .map(|r| r.iter().map(|&x| x as u32).collect())
                .collect();
            let tag = match involution {
                Involution::Identity => "gram-identity",
                Involution::Frobenius => "gram-frobenius",
            };
            Ok((
                Form {
                    field,
                    gram,
                    sigma_exp,
                    dim,
                },
                tag.into(),
            ))
        }
    }
}

/// The poset of non-degenerate subspaces (with `0` and `V`) of a formed space, with
/// compatibility `x ∩ y = 0`, `x ⊆ y^⊥`, `y ⊆ x^⊥`.
pub fn formed_space(kind: &FormKind, q: u64, dim: usize) -> Result<GroundStructure> {
    if dim == 0 {
        return Err(GroundError::InvalidParameter("formed space needs dim >= 1".into()));
    }
    let (form, tag) = build_form(kind, q, dim)?;
    let field = form.field().clone();
    let fq = field.order() as u64;
    let count: u64 = (0..=dim as u32)
        .map(|k| gaussian_binomial(fq, dim as u32, k))
        .fold(0u64, |acc, c| acc.saturating_add(c));
    if count > MAX_ELEMENTS {
        return Err(GroundError::SizeLimit {
            what: "ambient subspace count",
            value: count,
            limit: MAX_ELEMENTS,
        });
    }
    let whole = Subspace::whole(dim);
    let g = form.restricted_rank(&whole);
    if g < dim {
        return Err(GroundError::DegenerateForm { rank: g, dim });
    }
    let all = all_subspaces(&field, dim);
    let lines: Vec<Subspace> = all.iter().filter(|s| s.dim() == 1).cloned().collect();
    form.check_reflexive(&lines)?;

    let subs: Vec<Subspace> = all
        .into_iter()
        .filter(|s| s.dim() == 0 || s.dim() == dim || form.is_nondegenerate_on(s))
        .collect();
    for s in &subs {
        let perp = form.right_perp(s);
        if s.dim() + perp.dim() != dim {
            return Err(GroundError::NonReflexive(format!(
                "dim {} + dim perp {} != {dim} for {}",
                s.dim(),
                perp.dim(),
                s.label(&field)
            )));
        }
    }
    let labels: Vec<String> = subs.iter().map(|s| s.label(&field)).collect();
    let poset = inclusion_poset(&field, &subs, labels.clone())?;
    let base = BoundedPoset::new(poset)?;
    let order = construction_order(&base, &labels);
    let sorted: Vec<&Subspace> = order.iter().map(|&i| &subs[i]).collect();

    let orthogonal = |a: &Subspace, b: &Subspace| {
        a.basis()
            .iter()
            .all(|v| b.basis().iter().all(|w| form.eval(v, w) == 0 && form.eval(w, v) == 0))
    };
    let n = sorted.len();
    let mut table = vec![vec![false; n]; n];
    for x in 0..n {
        for y in x..n {
            let ok = sorted[x].intersection(&field, sorted[y]).dim() == 0
                && orthogonal(sorted[x], sorted[y]);
            table[x][y] = ok;
            table[y][x] = ok;
        }
    }

    let atom_bases = match kind {
        FormKind::Unitary => Some(unitary_bases(&form, &base, &sorted)),
        FormKind::Symplectic => Some(symplectic_bases(&form, &base, &sorted)),
        FormKind::Gram { .. } => None,
    };
    let name = match kind {
        FormKind::Unitary => format!("unitary:q={q},n={dim}"),
        FormKind::Symplectic => format!("symplectic:q={q},n={dim}"),
        FormKind::Gram { involution, .. } => format!(
            "form:q={q},n={dim},sigma={}",
            match involution {
                Involution::Identity => "identity",
                Involution::Frobenius => "frobenius",
            }
        ),
    };
    GroundStructure::new(
        name,
        Kind::Formed,
        base,
        |x, y| table[x][y],
        atom_bases,
        Metadata {
            q: Some(q),
            n: Some(dim),
            form: Some(tag),
            ..Metadata::default()
        },
    )
}

/// Unit vectors `Ψ(v, v) = 1` of each non-degenerate line.
fn unitary_bases(form: &Form, base: &BoundedPoset, subs: &[&Subspace]) -> BTreeMap<usize, Vec<String>> {
    let f = form.field();
    base.upper_covers(base.bottom())
        .iter()
        .filter(|&&a| subs[a].dim() == 1)
        .map(|&a| {
            let vs = subs[a]
                .vectors(f)
                .into_iter()
                .filter(|v| form.eval(v, v) == 1)
                .map(|v| vector_label(f, &v))
                .collect();
            (a, vs)
        })
        .collect()
}

/// Ordered hyperbolic pairs `Ψ(v, w) = 1` of each non-degenerate plane.
fn symplectic_bases(form: &Form, base: &BoundedPoset, subs: &[&Subspace]) -> BTreeMap<usize, Vec<String>> {
    let f = form.field();
    base.upper_covers(base.bottom())
        .iter()
        .filter(|&&a| subs[a].dim() == 2)
        .map(|&a| {
            let vectors = subs[a].vectors(f);
            let mut pairs = Vec::new();
            for v in &vectors {
                for w in &vectors {
                    if form.eval(v, w) == 1 {
                        pairs.push(format!("({},{})", vector_label(f, v), vector_label(f, w)));
                    }
                }
            }
            (a, pairs)
        })
        .collect()
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn unitary_plane_over_gf4() {
        let g = formed_space(&FormKind::Unitary, 2, 2).unwrap();
        assert_eq!(g.len(), 4);
        let atoms = g.atoms();
        assert_eq!(atoms.len(), 2);
        assert!(g.compatible(atoms[0], atoms[1]));
        // q + 1 unit vectors on each non-degenerate line
        for a in atoms {
            assert_eq!(g.atom_bases().unwrap()[&a].len(), 3);
        }
    }

    #[test]
    fn symplectic_plane_has_no_proper_elements() {
        let g = formed_space(&FormKind::Symplectic, 3, 2).unwrap();
        assert_eq!(g.len(), 2);
    }

    #[test]
    fn odd_symplectic_rejected() {
        assert!(formed_space(&FormKind::Symplectic, 3, 3).is_err());
    }

    #[test]
    fn degenerate_and_char_two() {
        let zero = FormKind::Gram {
            matrix: vec![vec![1, 0], vec![0, 0]],
            involution: Involution::Identity,
        };
        assert!(matches!(
            formed_space(&zero, 3, 2),
            Err(GroundError::DegenerateForm { rank: 1, dim: 2 })
        ));
        let id = FormKind::Gram {
            matrix: vec![vec![1, 0], vec![0, 1]],
            involution: Involution::Identity,
        };
        assert!(matches!(formed_space(&id, 4, 2), Err(GroundError::UnsupportedForm(_))));
        assert!(formed_space(&id, 3, 2).is_ok());
    }

    #[test]
    fn non_reflexive_form() {
        // Ψ(v,w) = v1 w1 + v1 w2 + v2 w2 over GF(3): e1 ⟂ e2 fails one way only
        let g = FormKind::Gram {
            matrix: vec![vec![1, 1], vec![0, 1]],
            involution: Involution::Identity,
        };
        assert!(matches!(formed_space(&g, 3, 2), Err(GroundError::NonReflexive(_))));
    }
}

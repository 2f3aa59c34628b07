use std::collections::BTreeSet;

use dlat_ground::*;
use proptest::prelude::*;

const SMALL_PRIME_POWERS: [u64; 18] = [2, 3, 4, 5, 7, 8, 9, 11, 13, 16, 17, 19, 23, 25, 27, 29, 32, 64];

#[test]
fn field_axioms_exhaustive_up_to_64() {
    for q in SMALL_PRIME_POWERS {
        let f = FiniteField::new(q).unwrap();
        let q = q as u32;
        for a in 0..q {
            assert_eq!(f.add(a, 0), a);
            assert_eq!(f.mul(a, 1), a);
            assert_eq!(f.add(a, f.neg(a)), 0);
            if a != 0 {
                assert_eq!(f.mul(a, f.inv(a).unwrap()), 1);
            }
            for b in 0..q {
                assert_eq!(f.add(a, b), f.add(b, a));
                assert_eq!(f.mul(a, b), f.mul(b, a));
                for c in 0..q {
                    assert_eq!(f.add(f.add(a, b), c), f.add(a, f.add(b, c)));
                    assert_eq!(f.mul(f.mul(a, b), c), f.mul(a, f.mul(b, c)));
                    assert_eq!(f.mul(a, f.add(b, c)), f.add(f.mul(a, b), f.mul(a, c)));
                }
            }
        }
        // cyclic multiplicative group
        assert_eq!(f.multiplicative_order(f.primitive_element()), q - 1);
        // Frobenius is additive
        for a in 0..q.min(16) {
            for b in 0..q.min(16) {
                assert_eq!(f.frobenius(f.add(a, b)), f.add(f.frobenius(a), f.frobenius(b)));
            }
        }
    }
}

fn gaussian_oracle(q: u64, n: u32) -> u64 {
    // count k-subspaces as (number of ordered bases of k independent vectors) / |GL_k|
    let mut total = 0;
    for k in 0..=n {
        let mut num = 1u64;
        let mut den = 1u64;
        for i in 0..k {
            num *= q.pow(n) - q.pow(i);
            den *= q.pow(k) - q.pow(i);
        }
        total += num / den;
    }
    total
}

#[test]
fn subspace_counts_are_gaussian_sums() {
    for (q, n) in [(2u64, 2usize), (3, 2), (2, 3), (2, 4), (3, 3), (4, 2), (5, 2)] {
        let g = subspace_lattice(q, n).unwrap();
        assert_eq!(g.len() as u64, gaussian_oracle(q, n as u32), "q={q} n={n}");
        assert_eq!(g.rank(), n);
        let atoms = g.atoms();
        assert_eq!(atoms.len() as u64, (q.pow(n as u32) - 1) / (q - 1));
        for a in atoms {
            assert_eq!(g.atom_bases().unwrap()[&a].len() as u64, q - 1);
        }
    }
}

/// Vectors of the subspace named by a `span(...)` label over the prime field GF(p),
/// computed by taking every linear combination of the listed rows.
fn vector_set(label: &str, p: u32, n: usize) -> BTreeSet<Vec<u32>> {
    let inner = label.trim_start_matches("span(").trim_end_matches(')');
    let rows: Vec<Vec<u32>> = if inner.is_empty() {
        Vec::new()
    } else {
        inner
            .split(',')
            .map(|r| r.chars().map(|c| c.to_digit(10).unwrap()).collect())
            .collect()
    };
    let mut out = BTreeSet::new();
    let combos = (p as usize).pow(rows.len() as u32);
    for idx in 0..combos {
        let mut rest = idx;
        let mut v = vec![0u32; n];
        for r in &rows {
            let c = (rest % p as usize) as u32;
            rest /= p as usize;
            for (slot, x) in v.iter_mut().zip(r) {
                *slot = (*slot + c * x) % p;
            }
        }
        out.insert(v);
    }
    out
}

fn closure(vectors: &BTreeSet<Vec<u32>>, p: u32) -> BTreeSet<Vec<u32>> {
    let mut set = vectors.clone();
    loop {
        let mut grown = set.clone();
        for a in &set {
            for b in &set {
                for c in 0..p {
                    let v: Vec<u32> = a.iter().zip(b).map(|(x, y)| (x + c * y) % p).collect();
                    grown.insert(v);
                }
            }
        }
        if grown.len() == set.len() {
            return set;
        }
        set = grown;
    }
}

#[test]
fn subspace_joins_and_meets_match_linear_algebra() {
    for (p, n) in [(2u32, 2usize), (2, 3), (3, 2)] {
        let g = subspace_lattice(p as u64, n).unwrap();
        let sets: Vec<BTreeSet<Vec<u32>>> = (0..g.len()).map(|i| vector_set(g.label(i), p, n)).collect();
        for x in 0..g.len() {
            for y in 0..g.len() {
                assert_eq!(g.poset().leq(x, y), sets[x].is_subset(&sets[y]));
                let meet = g.poset().meet(&[x, y]).unwrap();
                let inter: BTreeSet<Vec<u32>> = sets[x].intersection(&sets[y]).cloned().collect();
                assert_eq!(sets[meet], inter);
                let join = g.poset().join(&[x, y]).unwrap();
                let union: BTreeSet<Vec<u32>> = sets[x].union(&sets[y]).cloned().collect();
                assert_eq!(sets[join], closure(&union, p));
                assert_eq!(g.compatible(x, y), inter.len() == 1);
            }
        }
    }
}

#[test]
fn uniform_full_rank_is_boolean() {
    for n in 1..=5 {
        let u = uniform_matroid_flats(n, n).unwrap();
        let b = boolean_lattice(n).unwrap();
        assert_eq!(u.poset().labels(), b.poset().labels());
        assert!(u.poset().same_order_as(b.poset()));
    }
    let u = uniform_matroid_flats(4, 3).unwrap();
    assert_eq!(u.rank(), 3);
    assert_eq!(u.len(), 1 + 4 + 6 + 1);
}

fn structures() -> Vec<GroundStructure> {
    [
        "boolean:n=3",
        "boolean:n=4",
        "partition:n=4",
        "subspace:q=2,n=3",
        "subspace:q=3,n=2",
        "uniform:n=4,k=3",
        "uniform:n=5,k=2",
        "unitary:q=2,n=2",
        "unitary:q=2,n=3",
        "symplectic:q=3,n=4",
        "symplectic:q=2,n=4",
        "sample:exchange-failure",
        "sample:weak",
    ]
    .iter()
    .map(|s| build_structure(s).unwrap())
    .collect()
}

#[test]
fn compatibility_is_symmetric_and_bottom_compatible() {
    for g in structures() {
        for x in 0..g.len() {
            assert!(g.compatible(x, g.bottom()), "{}", g.name());
            for y in 0..g.len() {
                assert_eq!(g.compatible(x, y), g.compatible(y, x), "{}", g.name());
                if x != g.bottom() && g.poset().leq(x, y) {
                    assert!(!g.compatible(x, y));
                }
            }
        }
    }
}

#[test]
fn formed_spaces_satisfy_dimension_formula() {
    for (kind, q, dim) in [
        (FormKind::Unitary, 2u64, 3usize),
        (FormKind::Unitary, 3, 2),
        (FormKind::Symplectic, 3, 4),
        (FormKind::Symplectic, 2, 4),
    ] {
        let g = formed_space(&kind, q, dim).unwrap();
        let fq = if kind == FormKind::Unitary { q * q } else { q };
        let field = FiniteField::new(fq).unwrap();
        // every proper element has its orthogonal complement in the poset, compatible with it
        for x in 0..g.len() {
            if x == g.bottom() || x == g.top() {
                continue;
            }
            let complements: Vec<usize> = (0..g.len())
                .filter(|&y| {
                    g.compatible(x, y) && g.poset().join(&[x, y]) == Some(g.top())
                })
                .collect();
            assert_eq!(complements.len(), 1, "{} {}", g.name(), g.label(x));
            let y = complements[0];
            assert_eq!(g.height(x) + g.height(y), g.rank());
        }
        assert_eq!(field.order() as u64, fq);
    }
}

#[test]
fn symplectic_counts() {
    // non-degenerate planes in a 4-dimensional symplectic space over GF(q): q^2 (q^2 + 1)
    for q in [2u64, 3] {
        let g = formed_space(&FormKind::Symplectic, q, 4).unwrap();
        let planes = (0..g.len()).filter(|&x| g.height(x) == 1).count() as u64;
        assert_eq!(planes, q * q * (q * q + 1));
        assert_eq!(g.len() as u64, planes + 2);
        for bases in g.atom_bases().unwrap().values() {
            assert_eq!(bases.len() as u64, q * (q * q - 1));
        }
    }
}

#[test]
fn unitary_counts() {
    // non-isotropic points of a Hermitian plane/space over GF(q^2)
    let g = formed_space(&FormKind::Unitary, 2, 3).unwrap();
    let lines = (0..g.len()).filter(|&x| g.height(x) == 1).count();
    let planes = (0..g.len()).filter(|&x| g.height(x) == 2).count();
    // 21 points, 9 isotropic
    assert_eq!(lines, 12);
    assert_eq!(planes, 12);
    for bases in g.atom_bases().unwrap().values() {
        assert_eq!(bases.len(), 3);
    }
}

#[test]
fn lower_interval_inherits_compatibility() {
    let g = subspace_lattice(2, 3).unwrap();
    let plane = (0..g.len()).find(|&x| g.height(x) == 2).unwrap();
    let sub = g.lower_interval(plane).unwrap();
    assert_eq!(sub.len(), 5);
    assert_eq!(sub.rank(), 2);
    for x in 0..sub.len() {
        for y in 0..sub.len() {
            let gx = g.index_of(sub.label(x)).unwrap();
            let gy = g.index_of(sub.label(y)).unwrap();
            assert_eq!(sub.compatible(x, y), g.compatible(gx, gy));
        }
    }
    assert_eq!(sub.atom_bases().unwrap().len(), 3);
}

#[test]
fn json_ingestion_of_weak_poset() {
    let text = r#"{"name":"w","elements":["0","a","b","c","d","1"],
        "covers":[[0,1],[0,2],[1,3],[2,4],[3,5],[4,5]]}"#;
    let g = load_lattice_str(text).unwrap();
    assert_eq!(g.kind(), Kind::Custom);
    let idx = |l: &str| g.index_of(l).unwrap();
    assert!(g.compatible(idx("a"), idx("d")));
    assert!(!g.compatible(idx("a"), idx("c")));
}

proptest! {
    #[test]
    fn field_inverse_and_pow(qi in 0usize..SMALL_PRIME_POWERS.len(), a in 1u32..64, e in 0u64..200) {
        let q = SMALL_PRIME_POWERS[qi];
        let f = FiniteField::new(q).unwrap();
        let a = a % (q as u32);
        prop_assume!(a != 0);
        let mut acc = 1;
        for _ in 0..e {
            acc = f.mul(acc, a);
        }
        prop_assert_eq!(f.pow(a, e), acc);
        prop_assert_eq!(f.pow(a, q - 1), 1);
    }
}

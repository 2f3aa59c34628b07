use std::sync::Arc;

use dlat_poset::io::PosetDocument;
use dlat_poset::{
    direct_product, is_lattice, mapping_cylinder, subposet, BoundedPoset, Poset, PosetMap,
    Selector,
};
use num_bigint::BigInt;
use proptest::prelude::*;

/// Reflexive-transitive closure by Floyd–Warshall, used as an oracle.
fn closure(n: usize, pairs: &[(usize, usize)]) -> Vec<Vec<bool>> {
    let mut r = vec![vec![false; n]; n];
    for (i, row) in r.iter_mut().enumerate() {
        row[i] = true;
    }
    for &(i, j) in pairs {
        r[i][j] = true;
    }
    for k in 0..n {
        for i in 0..n {
            for j in 0..n {
                if r[i][k] && r[k][j] {
                    r[i][j] = true;
                }
            }
        }
    }
    r
}

/// Reduced Euler characteristic by enumerating every chain, as an oracle.
fn chain_euler(p: &Poset) -> i64 {
    fn extend(p: &Poset, last: usize, len: usize, acc: &mut i64) {
        // a chain with `len` elements contributes (-1)^(len-1)
        *acc += if len % 2 == 1 { 1 } else { -1 };
        for &y in p.above(last) {
            extend(p, y, len + 1, acc);
        }
    }
    let mut acc = -1;
    for x in 0..p.len() {
        extend(p, x, 1, &mut acc);
    }
    acc
}

fn seven_element_lattice() -> Poset {
    let labels = vec!["0", "a", "b", "c", "d", "e", "1"];
    let pairs = [(0, 1), (0, 2), (0, 3), (1, 4), (2, 4), (2, 5), (3, 5), (4, 6), (5, 6)];
    Poset::new(labels, &pairs).unwrap()
}

fn boolean(n: usize) -> Poset {
    let labels: Vec<String> = (0..1usize << n).map(|m| format!("m{m:02}")).collect();
    Poset::from_relation(labels, |a, b| a & b == a).unwrap()
}

#[test]
fn seven_element_lattice_has_height_three() {
    let p = seven_element_lattice();
    assert_eq!(p.len(), 7);
    let b = BoundedPoset::new(p.clone()).unwrap();
    assert_eq!(b.rank(), 3);
    assert!(is_lattice(&p).is_lattice);
    let d = p.index_of("d").unwrap();
    let e = p.index_of("e").unwrap();
    assert_eq!(p.meet(&[d, e]), p.index_of("b"));
}

#[test]
fn boolean_mobius_and_heights() {
    let b3 = BoundedPoset::new(boolean(3)).unwrap();
    assert_eq!(b3.rank(), 3);
    assert_eq!(b3.mobius_number(), BigInt::from(-1));
    assert!(is_lattice(&boolean(4)).is_lattice);
}

#[test]
fn partition_lattice_pi3_mobius() {
    // 123 at the top, three atoms, discrete partition at the bottom
    let labels = vec!["1|2|3", "1|23", "12|3", "13|2", "123"];
    let pairs = [(0, 1), (0, 2), (0, 3), (1, 4), (2, 4), (3, 4)];
    let p = BoundedPoset::new(Poset::new(labels, &pairs).unwrap()).unwrap();
    assert_eq!(p.mobius_number(), BigInt::from(2));
    assert_eq!(p.height(p.index_of("1|23").unwrap()), 1);
}

#[test]
fn partial_decompositions_of_two_chains_not_a_lattice() {
    // PD(S) for S = {0,a,b,c,d,1} with a<c, b<d.
    let labels = vec!["{}", "{a}", "{b}", "{c}", "{d}", "{a,d}", "{b,c}", "{1}"];
    let pairs = [
        (0, 1),
        (0, 2),
        (0, 3),
        (0, 4),
        (1, 3),
        (2, 4),
        (1, 5),
        (4, 5),
        (2, 6),
        (3, 6),
        (5, 7),
        (6, 7),
    ];
    let p = Poset::new(labels, &pairs).unwrap();
    let a = p.index_of("{a}").unwrap();
    let b = p.index_of("{b}").unwrap();
    assert_eq!(p.join(&[a, b]), None);
    let verdict = is_lattice(&p);
    assert!(!verdict.is_lattice);
    let (x, y) = verdict.witness.unwrap();
    assert!(p.join(&[x, y]).is_none() || p.meet(&[x, y]).is_none());
}

#[test]
fn cylinder_of_a_two_step_projection() {
    let t = Poset::from_relation(vec!["(0,0)", "(0,1)", "(1,0)", "(1,1)"], |i, j| {
        // labels are sorted so index i encodes (i/2, i%2)
        i == j || i / 2 < j / 2
    })
    .unwrap();
    let s = Poset::new(vec!["0", "1"], &[(0, 1)]).unwrap();
    let image = (0..4).map(|i| i / 2).collect();
    let f = PosetMap::new(Arc::new(t.clone()), Arc::new(s.clone()), image).unwrap();
    let m = mapping_cylinder(&f, false).unwrap();
    assert_eq!(m.len(), 6);
    let redm = mapping_cylinder(&f, true).unwrap();
    assert_eq!(redm.len(), 5);
    assert_eq!(chain_euler(&redm), -2);
    // restrictions reproduce the original orders
    let (tt, _) = m.filter(|i| m.label(i).starts_with("t:"));
    let (ss, _) = m.filter(|i| m.label(i).starts_with("s:"));
    for i in 0..4 {
        for j in 0..4 {
            assert_eq!(tt.leq(i, j), t.leq(i, j));
        }
    }
    assert!(ss.leq(0, 1) && !ss.leq(1, 0));
}

#[test]
fn identity_cylinder_is_contractible() {
    let b2 = Arc::new(boolean(2));
    let f = PosetMap::new(b2.clone(), b2, (0..4).collect()).unwrap();
    let m = mapping_cylinder(&f, false).unwrap();
    assert_eq!(m.len(), 8);
    assert_eq!(chain_euler(&m), 0);
}

#[test]
fn proper_part_of_subspace_lattice_gf2_squared_is_antichain() {
    let labels = vec!["0", "U1", "U2", "U3", "V"];
    let pairs = [(0, 1), (0, 2), (0, 3), (1, 4), (2, 4), (3, 4)];
    let p = BoundedPoset::new(Poset::new(labels, &pairs).unwrap()).unwrap();
    let (proper, _) = subposet(&p, &Selector::ProperPart).unwrap();
    assert_eq!(proper.len(), 3);
    assert_eq!(proper.relation_size(), 3);
    assert_eq!(p.mobius_number(), BigInt::from(2));
    let (whole, _) = subposet(&p, &Selector::Interval(p.bottom(), p.top())).unwrap();
    assert_eq!(&whole, p.poset());
}

#[test]
fn pi2_squared_is_a_grid() {
    let pi2 = Poset::new(vec!["1|2", "12"], &[(0, 1)]).unwrap();
    let g = direct_product(&pi2, &pi2);
    assert_eq!(g.len(), 4);
    let b2 = boolean(2);
    assert_eq!(g.cover_pairs().len(), b2.cover_pairs().len());
    assert_eq!(g.poset_height(), 2);
}

fn arb_dag() -> impl Strategy<Value = (usize, Vec<(usize, usize)>)> {
    (1usize..9).prop_flat_map(|n| {
        let edges = proptest::collection::vec((0..n, 0..n), 0..(n * 2));
        (Just(n), edges).prop_map(|(n, es)| {
            // orient edges from smaller to larger index so the result is acyclic
            let es = es
                .into_iter()
                .filter(|(a, b)| a != b)
                .map(|(a, b)| (a.min(b), a.max(b)))
                .collect();
            (n, es)
        })
    })
}

proptest! {
    #[test]
    fn closure_matches_oracle((n, pairs) in arb_dag()) {
        let labels: Vec<String> = (0..n).map(|i| format!("x{i}")).collect();
        let p = Poset::new(labels.clone(), &pairs).unwrap();
        let oracle = closure(n, &pairs);
        for i in 0..n {
            for j in 0..n {
                let pi = p.index_of(&labels[i]).unwrap();
                let pj = p.index_of(&labels[j]).unwrap();
                prop_assert_eq!(p.leq(pi, pj), oracle[i][j]);
            }
        }
        // covers regenerate the order
        let again = Poset::new(p.labels().to_vec(), &p.cover_pairs()).unwrap();
        prop_assert!(again.same_order_as(&p));
        // covers are irredundant
        for (i, j) in p.cover_pairs() {
            prop_assert!(!p.above(i).iter().any(|&k| p.lt(k, j)));
        }
    }

    #[test]
    fn mobius_sums_vanish((n, pairs) in arb_dag()) {
        let labels: Vec<String> = (0..n).map(|i| format!("x{i}")).collect();
        let p = Poset::new(labels, &pairs).unwrap();
        for x in 0..n {
            for &y in p.above(x) {
                let mut total = BigInt::from(0);
                for z in 0..n {
                    if p.leq(x, z) && p.leq(z, y) {
                        total += p.mobius(x, z).unwrap();
                    }
                }
                prop_assert_eq!(total, BigInt::from(0));
            }
        }
    }

    #[test]
    fn opposite_is_involutive_and_products_multiply((n, pairs) in arb_dag(), (m, qpairs) in arb_dag()) {
        let p = Poset::new((0..n).map(|i| format!("p{i}")).collect(), &pairs).unwrap();
        let q = Poset::new((0..m).map(|i| format!("q{i}")).collect(), &qpairs).unwrap();
        prop_assert_eq!(p.opposite().opposite(), p.clone());
        prop_assert_eq!(direct_product(&p, &q).len(), n * m);
        let text = PosetDocument::from_poset("p", &p).to_json();
        prop_assert_eq!(PosetDocument::parse(&text).unwrap().to_poset().unwrap(), p);
    }

    #[test]
    fn bounded_extension_mobius_is_chain_euler((n, pairs) in arb_dag()) {
        let mut labels: Vec<String> = (0..n).map(|i| format!("x{i}")).collect();
        labels.push("__bot".into());
        labels.push("__top".into());
        let mut all = pairs.clone();
        for i in 0..n {
            all.push((n, i));
            all.push((i, n + 1));
        }
        all.push((n, n + 1));
        let hat = BoundedPoset::new(Poset::new(labels, &all).unwrap()).unwrap();
        let (inner, _) = subposet(&hat, &Selector::ProperPart).unwrap();
        prop_assert_eq!(hat.mobius_number(), BigInt::from(chain_euler(&inner)));
    }
}

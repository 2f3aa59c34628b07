use std::collections::BTreeSet;

use dlat_decomp::*;
use dlat_ground::linalg::{all_subspaces, Subspace};
use dlat_ground::field::FiniteField;
use dlat_ground::{
    boolean_lattice, formed_space, partition_lattice, sample, subspace_lattice,
    uniform_matroid_flats, FormKind, GroundStructure,
};
use proptest::prelude::*;

fn budget() -> Budget {
    Budget::default()
}

fn corpus() -> Vec<GroundStructure> {
    vec![
        boolean_lattice(1).unwrap(),
        boolean_lattice(2).unwrap(),
        boolean_lattice(3).unwrap(),
        boolean_lattice(4).unwrap(),
        partition_lattice(3).unwrap(),
        partition_lattice(4).unwrap(),
        subspace_lattice(2, 2).unwrap(),
        subspace_lattice(2, 3).unwrap(),
        subspace_lattice(3, 2).unwrap(),
        uniform_matroid_flats(4, 3).unwrap(),
        formed_space(&FormKind::Unitary, 2, 2).unwrap(),
        formed_space(&FormKind::Unitary, 2, 3).unwrap(),
        formed_space(&FormKind::Symplectic, 3, 4).unwrap(),
        sample("exchange-failure").unwrap(),
        sample("weak").unwrap(),
    ]
}

/// Collections of pairwise disjoint nonempty subsets of [n], counted directly.
fn disjoint_families(n: usize, full_only: bool) -> usize {
    fn go(blocks_left: &[u32], used: u32, start: usize, n: usize, full_only: bool) -> usize {
        let all = (1u32 << n) - 1;
        let mut total = if !full_only || used == all { 1 } else { 0 };
        for (i, &b) in blocks_left.iter().enumerate().skip(start) {
            if b & used == 0 {
                total += go(blocks_left, used | b, i + 1, n, full_only);
            }
        }
        total
    }
    let blocks: Vec<u32> = (1..1u32 << n).collect();
    go(&blocks, 0, 0, n, full_only)
}

/// Direct-sum families of nonzero subspaces of GF(q)^n: `(full, partial)` counts.
fn direct_sum_families(q: u64, n: usize) -> (usize, usize) {
    let f = FiniteField::new(q).unwrap();
    let subs: Vec<Subspace> = all_subspaces(&f, n).into_iter().filter(|s| s.dim() > 0).collect();
    fn go(
        f: &FiniteField,
        subs: &[Subspace],
        start: usize,
        acc: &Subspace,
        n: usize,
        counts: &mut (usize, usize),
    ) {
        counts.1 += 1;
        if acc.dim() == n {
            counts.0 += 1;
        }
        for i in start..subs.len() {
            let s = acc.sum(f, &subs[i]);
            if s.dim() == acc.dim() + subs[i].dim() {
                go(f, subs, i + 1, &s, n, counts);
            }
        }
    }
    let mut counts = (0, 0);
    go(&f, &subs, 0, &Subspace::zero(n), n, &mut counts);
    counts
}

#[test]
fn boolean_decompositions_are_set_partitions() {
    for n in 1..=4 {
        let b = boolean_lattice(n).unwrap();
        let d = DecompPoset::build(&b, DecompKind::Full, &budget()).unwrap();
        let pd = DecompPoset::build(&b, DecompKind::Partial, &budget()).unwrap();
        assert_eq!(d.len(), disjoint_families(n, true), "D(B_{n})");
        assert_eq!(pd.len(), disjoint_families(n, false), "PD(B_{n})");
    }
    let b3 = boolean_lattice(3).unwrap();
    assert_eq!(DecompPoset::build(&b3, DecompKind::Partial, &budget()).unwrap().len(), 15);
}

#[test]
fn subspace_decompositions_are_direct_sums() {
    for (q, n) in [(2, 2), (2, 3), (3, 2)] {
        let s = subspace_lattice(q, n).unwrap();
        let d = DecompPoset::build(&s, DecompKind::Full, &budget()).unwrap();
        let pd = DecompPoset::build(&s, DecompKind::Partial, &budget()).unwrap();
        let (full, partial) = direct_sum_families(q, n);
        assert_eq!((d.len(), pd.len()), (full, partial), "GF({q})^{n}");
    }
    let s = subspace_lattice(2, 2).unwrap();
    assert_eq!(DecompPoset::build(&s, DecompKind::Full, &budget()).unwrap().len(), 4);
    assert_eq!(DecompPoset::build(&s, DecompKind::Partial, &budget()).unwrap().len(), 8);
}

fn labels(gs: &GroundStructure, dp: &DecompPoset) -> BTreeSet<String> {
    dp.elements().iter().map(|d| d.label(gs)).collect()
}

fn set(items: &[&str]) -> BTreeSet<String> {
    items.iter().map(|s| s.to_string()).collect()
}

#[test]
fn weak_sample_has_more_weak_decompositions() {
    let s = sample("weak").unwrap();
    let dw = DecompPoset::build(&s, DecompKind::WeakFull, &budget()).unwrap();
    let d = DecompPoset::build(&s, DecompKind::Full, &budget()).unwrap();
    assert_eq!(labels(&s, &dw), set(&["{a,b}", "{b,c}", "{a,d}", "{c,d}", "{1}"]));
    assert_eq!(labels(&s, &d), set(&["{1}", "{a,d}", "{b,c}"]));
    // comparable weak decompositions of equal size
    let ab = dw.find(&s, &["a", "b"]).unwrap();
    let cd = dw.find(&s, &["c", "d"]).unwrap();
    assert!(dw.poset().lt(ab, cd));
}

#[test]
fn exchange_failure_lattice() {
    let s = sample("exchange-failure").unwrap();
    let b = budget();
    let an = Analysis::new(&s, &b).unwrap();
    assert_eq!(labels(&s, an.full()), set(&["{1}", "{a,e}", "{c,d}"]));
    let sh = an.sub_h();
    assert!(sh.routes_agree());
    let names: BTreeSet<String> = sh.map.iter().map(|&i| s.label(i).to_string()).collect();
    assert_eq!(names, set(&["0", "a", "c", "d", "e", "1"]));
    let ex = an.check(Property::Ex).unwrap();
    assert!(!ex.holds);
    let w = ex.witness.unwrap();
    assert!(w.starts_with("sigma={a,e} y=e tau={b,c}"), "{w}");
    let cm = an.check(Property::Cm).unwrap();
    assert!(!cm.holds);
    assert!(cm.witness.unwrap().starts_with("x=a y=e x'=d y'=c"));
    assert!(!an.check(Property::Unique).unwrap().holds);
}

#[test]
fn uniform_matroid_decompositions() {
    let u = uniform_matroid_flats(4, 3).unwrap();
    let b = budget();
    let an = Analysis::new(&u, &b).unwrap();
    assert_eq!(an.full().len(), 17);
    assert_eq!(an.full().count_with_parts(1), 1);
    assert_eq!(an.full().count_with_parts(2), 12);
    assert_eq!(an.full().count_with_parts(3), 4);
    assert_eq!(an.sub_h().len(), u.len());
}

#[test]
fn complements_in_formed_and_vector_spaces() {
    let s = subspace_lattice(2, 2).unwrap();
    let line = s.atoms()[0];
    assert_eq!(h_complements(&s, line, s.top()).unwrap().len(), 2);
    let u = formed_space(&FormKind::Unitary, 2, 2).unwrap();
    for l in u.atoms() {
        let c = h_complements(&u, l, u.top()).unwrap();
        assert_eq!(c.len(), 1);
        assert!(u.compatible(l, c[0]));
    }
}

#[test]
fn property_matrix() {
    for gs in corpus() {
        let b = budget();
        let an = Analysis::new(&gs, &b).unwrap();
        let report = |p| an.check(p).unwrap();
        let name = gs.name();
        let li = report(Property::Li);
        let e = report(Property::E1E2);
        assert_eq!(e.holds, li.holds, "{name}");
        let unique = report(Property::Unique).holds;
        let ex = report(Property::Ex).holds;
        let cm = report(Property::Cm).holds;
        // the product description of lower intervals yields every extension
        if li.holds {
            assert!(ex, "{name}");
        }
        assert_eq!(li.holds, !name.starts_with("sample:"), "{name}: {:?}", li.witness);
        if name.starts_with("subspace") || name.starts_with("boolean") {
            assert!(ex && cm, "{name}");
        }
        let expect_unique = name.starts_with("boolean")
            || name.starts_with("unitary")
            || name.starts_with("symplectic");
        assert_eq!(unique, expect_unique, "{name}");
        if unique && ex {
            assert!(cm, "{name}");
        }
    }
}

#[test]
fn structural_invariants_on_corpus() {
    for gs in corpus() {
        let b = budget();
        let an = Analysis::new(&gs, &b).unwrap();
        let name = gs.name();
        let cert = height_certificate(&an);
        assert!(cert.consistent(), "{name}: {cert:?}");
        let with_min = full_with_minimum(&an).unwrap();
        assert!(dlat_poset::is_lattice(&with_min).is_lattice, "{name}");
        assert_eq!(upper_intervals_are_partition_lattices(&an).unwrap(), None, "{name}");
        assert!(an.sub_h().routes_agree(), "{name}");
        let (pd_lattice, sh_lattice) = lattice_pair(&an);
        if pd_lattice {
            assert!(sh_lattice, "{name}");
        }
        let shape = unique_minimum_shape(&an).unwrap();
        assert_ne!(shape, Some(false), "{name}");
        if name.starts_with("boolean") {
            assert_eq!(shape, Some(true), "{name}");
        }
    }
}

#[test]
fn document_round_trip() {
    let s = subspace_lattice(2, 2).unwrap();
    let d = DecompPoset::build(&s, DecompKind::Partial, &budget()).unwrap();
    let text = d.to_json(&s);
    let doc: DecompDocument = serde_json::from_str(&text).unwrap();
    assert_eq!(doc.structure, "subspace:q=2,n=2");
    assert_eq!(doc.kind, "PD");
    assert_eq!(doc.elements.len(), 8);
    assert_eq!(doc.covers.len(), d.poset().cover_pairs().len());
}

proptest! {
    #[test]
    fn boolean_candidates_match_partition_oracle(masks in proptest::collection::vec(0u32..16, 0..5)) {
        let b = boolean_lattice(4).unwrap();
        let parts: Vec<usize> = masks.iter().map(|&m| b.index_of(&dlat_ground::set_label(m)).unwrap()).collect();
        let distinct: BTreeSet<u32> = masks.iter().copied().collect();
        let disjoint = masks.iter().enumerate().all(|(i, a)| masks[i + 1..].iter().all(|c| a & c == 0));
        let covers = masks.iter().fold(0, |acc, m| acc | m) == 15;
        let oracle = !masks.is_empty()
            && distinct.len() == masks.len()
            && !masks.contains(&0)
            && disjoint
            && covers;
        prop_assert_eq!(is_full_decomposition(&b, &parts, Mode::Strict).unwrap(), oracle);
        prop_assert_eq!(is_full_decomposition(&b, &parts, Mode::Weak).unwrap(), oracle);
    }
}

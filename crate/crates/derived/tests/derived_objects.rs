use std::collections::BTreeMap;

use dlat_decomp::{Analysis, Budget, DecompKind, Property};
use dlat_derived::*;
use dlat_ground::{
    boolean_lattice, formed_space, partition_lattice, sample, subspace_lattice, uniform_matroid_flats,
    FormKind, GroundStructure,
};
use dlat_poset::{subposet, Selector};
use dlat_topology::{homology_complex, homology_poset, reduced_euler_complex, reduced_euler_poset, Ring, SimplicialComplex};
use num_bigint::BigInt;

const FACES: usize = 2_000_000;

fn with_analysis<T>(gs: &GroundStructure, f: impl FnOnce(&Analysis<'_>) -> T) -> T {
    let budget = Budget::default();
    let an = Analysis::new(gs, &budget).unwrap();
    f(&an)
}

#[test]
fn frame_complex_examples() {
    let s = subspace_lattice(2, 2).unwrap();
    with_analysis(&s, |an| {
        let fr = frame_complexes(an).unwrap();
        assert!(fr.coincide());
        assert_eq!(fr.full.face_counts(FACES).unwrap(), vec![3, 3]);
        assert_eq!(fr.full_frames, 3);
    });
    let u = uniform_matroid_flats(4, 3).unwrap();
    with_analysis(&u, |an| {
        let fr = frame_complexes(an).unwrap();
        assert_eq!(fr.full.face_counts(FACES).unwrap(), vec![4, 6, 4]);
        assert_eq!(fr.full.facets().len(), 4);
    });
    let b = boolean_lattice(3).unwrap();
    with_analysis(&b, |an| {
        let fr = frame_complexes(an).unwrap();
        assert_eq!(fr.full.facets().len(), 1);
        assert_eq!(fr.full.dim(), 2);
    });
}

#[test]
fn partial_bases_over_gf3_plane() {
    let s = subspace_lattice(3, 2).unwrap();
    with_analysis(&s, |an| {
        let fr = frame_complexes(an).unwrap();
        let (pb, b) = partial_basis_complexes(an, &fr).unwrap();
        assert_eq!(pb.complex.num_vertices(), 8);
        assert_eq!(b.complex, pb.complex);
        let k = &fr.full;
        for face in k.faces_by_dim(FACES).unwrap().into_iter().flatten() {
            let pre = pb
                .complex
                .induced(|v| face.contains(&pb.deflation[v as usize]))
                .unwrap();
            // join of the fibers: χ̃ = (-1)^{r-1} ∏ (|P_x| - 1)
            let expected = if face.len() % 2 == 1 { 1 } else { -1 };
            assert_eq!(reduced_euler_complex(&pre, FACES).unwrap(), BigInt::from(expected));
            if face.len() == 2 {
                assert_eq!(pre.facets().len(), 4);
            }
        }
    });
    let s2 = subspace_lattice(2, 2).unwrap();
    with_analysis(&s2, |an| {
        let fr = frame_complexes(an).unwrap();
        let (pb, _) = partial_basis_complexes(an, &fr).unwrap();
        assert_eq!(pb.complex.face_counts(FACES).unwrap(), fr.full.face_counts(FACES).unwrap());
    });
    assert!(matches!(
        with_analysis(&boolean_lattice(2).unwrap(), |an| partial_basis_complexes(an, &frame_complexes(an).unwrap())),
        Err(DerivedError::MissingBases(_))
    ));
}

#[test]
fn ordered_version_sizes() {
    let s = subspace_lattice(2, 2).unwrap();
    with_analysis(&s, |an| {
        let opd = ordered_version(an, DecompKind::Partial).unwrap();
        assert_eq!(opd.len(), 11);
        let (proper, _) = subposet(opd.poset(), &Selector::ProperPart).unwrap();
        assert_eq!(reduced_euler_poset(&proper), BigInt::from(-4));
    });
    let b = boolean_lattice(3).unwrap();
    with_analysis(&b, |an| {
        let od = ordered_version(an, DecompKind::Full).unwrap();
        assert_eq!(od.len(), 13);
    });
}

#[test]
fn injective_words_examples() {
    let tri = SimplicialComplex::new(vec!["a", "b", "c"], vec![vec![0, 1], vec![1, 2], vec![0, 2]]).unwrap();
    let w = injective_words(&tri, FACES).unwrap();
    assert_eq!(w.len(), 9);
    for m in 1..=4usize {
        let names: Vec<String> = (0..m).map(|i| format!("v{i}")).collect();
        let simplex = SimplicialComplex::simplex(names);
        let words = injective_words(&simplex, FACES).unwrap();
        let h = homology_poset(words.poset(), Ring::Integers, FACES).unwrap();
        let d: u64 = derangements(m).try_into().unwrap();
        assert_eq!(h.rank(m as i64 - 1), d, "m = {m}");
        assert!(h.is_spherical(m as i64 - 1) || d == 0);
    }
}

#[test]
fn bergman_counts_full_frames() {
    for (gs, frames) in [
        (boolean_lattice(2).unwrap(), 1u64),
        (subspace_lattice(2, 2).unwrap(), 3),
        (sample("exchange-failure").unwrap(), 0),
    ] {
        with_analysis(&gs, |an| {
            let fr = frame_complexes(an).unwrap();
            let delta = augmented_bergman(an, &fr, FACES).unwrap();
            let h = homology_complex(&delta, Ring::Integers, FACES).unwrap();
            let top = gs.rank() as i64 - 1;
            assert_eq!(h.rank(top), frames, "{}", gs.name());
            let total: u64 = h.betti.values().sum();
            assert_eq!(total, frames, "{}", gs.name());
            let cyl = span_cylinder(an, &fr, FACES).unwrap();
            let hc = homology_poset(&cyl, Ring::Integers, FACES).unwrap();
            assert!(hc.same_groups(&h), "{}", gs.name());
        });
    }
}

#[test]
fn charney_examples() {
    let s = subspace_lattice(2, 2).unwrap();
    with_analysis(&s, |an| {
        let (g, _) = charney_poset(an).unwrap();
        assert_eq!(g.len(), 6);
        assert_eq!(g.cover_pairs().len(), 0);
        let od = ordered_version(an, DecompKind::Full).unwrap();
        let beta = charney_beta(an, &od, FACES).unwrap();
        assert!(beta.is_isomorphism());
    });
    for (gs, iso) in [
        (subspace_lattice(2, 3).unwrap(), true),
        (sample("exchange-failure").unwrap(), false),
    ] {
        with_analysis(&gs, |an| {
            let od = ordered_version(an, DecompKind::Full).unwrap();
            let beta = charney_beta(an, &od, FACES).unwrap();
            assert!(beta.is_embedding() && beta.downward_closed && beta.rank_preserving, "{beta:?}");
            assert_eq!(beta.surjective, iso, "{}", gs.name());
        });
    }
}

#[test]
fn g_map_examples() {
    for (gs, iso) in [
        (boolean_lattice(3).unwrap(), true),
        (formed_space(&FormKind::Unitary, 2, 2).unwrap(), true),
        (subspace_lattice(2, 2).unwrap(), false),
    ] {
        with_analysis(&gs, |an| {
            let od = ordered_version(an, DecompKind::Full).unwrap();
            let g = g_map(an, &od, FACES).unwrap();
            assert!(g.order_preserving);
            assert_eq!(g.is_isomorphism(), iso, "{}", gs.name());
            let unique = an.check(Property::Unique).unwrap().holds;
            let ex = an.check(Property::Ex).unwrap().holds;
            assert_eq!(g.is_isomorphism(), unique && ex);
        });
    }
}

#[test]
fn euler_identities_small_corpus() {
    let corpus = vec![
        boolean_lattice(3).unwrap(),
        partition_lattice(4).unwrap(),
        subspace_lattice(2, 2).unwrap(),
        uniform_matroid_flats(4, 3).unwrap(),
        formed_space(&FormKind::Unitary, 2, 2).unwrap(),
    ];
    for gs in corpus {
        with_analysis(&gs, |an| {
            let od = ordered_version(an, DecompKind::Full).unwrap();
            let opd = ordered_version(an, DecompKind::Partial).unwrap();
            let i = ordered_full_identity(an, &od).unwrap();
            assert!(i.holds(), "{}: {i:?}", gs.name());
            let ii = ordered_partial_identity(an, &opd).unwrap();
            assert!(ii.holds(), "{}: {ii:?}", gs.name());
            let fr = frame_complexes(an).unwrap();
            for k in [&fr.full, &fr.partial] {
                let words = injective_words(k, FACES).unwrap();
                let iii = injective_words_identity(k, &words, FACES).unwrap();
                assert!(iii.holds(), "{}: {iii:?}", gs.name());
                let fibers: BTreeMap<String, Vec<String>> = k
                    .vertices()
                    .iter()
                    .enumerate()
                    .map(|(i, v)| (v.clone(), (0..=i % 3).map(|j| format!("p{j}")).collect()))
                    .collect();
                let inflated = inflate(k, &fibers).unwrap();
                let iv = inflation_identity(k, &fibers, &inflated.complex, FACES).unwrap();
                assert!(iv.holds(), "{}: {iv:?}", gs.name());
            }
        });
    }
}

#[test]
fn permutohedron_fibers_are_spheres() {
    let b = boolean_lattice(3).unwrap();
    with_analysis(&b, |an| {
        let od = ordered_version(an, DecompKind::Full).unwrap();
        let d = an.full().poset();
        for s in 0..d.len() {
            let (fiber, map) = od.fiber(|t| d.leq(s, t));
            let top = od.poset().top().unwrap();
            let (without_top, _) = fiber.filter(|i| map[i] != top);
            let k = an.full().element(s).len() as i64;
            let h = homology_poset(&without_top, Ring::Integers, FACES).unwrap();
            assert!(h.is_spherical(k - 2), "{h:?}");
        }
    });
}

#[test]
fn unique_complementation_gives_unique_facets() {
    let u = formed_space(&FormKind::Unitary, 2, 3).unwrap();
    with_analysis(&u, |an| {
        assert!(an.check(Property::Unique).unwrap().holds);
        let fr = frame_complexes(an).unwrap();
        let n = u.rank();
        for face in fr.partial.faces_by_dim(FACES).unwrap().into_iter().flatten() {
            if face.len() == n - 1 {
                let count = fr
                    .partial
                    .facets()
                    .iter()
                    .filter(|f| face.iter().all(|v| f.binary_search(v).is_ok()))
                    .count();
                assert_eq!(count, 1);
            }
        }
    });
}

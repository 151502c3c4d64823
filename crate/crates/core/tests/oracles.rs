//! Oracle parity and invariant tests: library operations against
//! independent brute-force recomputation on small instances.

mod common;

use proptest::prelude::*;

use polydec_core::complex::{cycle_complex, Face, SimplicialComplex};
use polydec_core::decomp::{find_weak_decomposition, SearchOptions};
use polydec_core::delta::{delta_complex, delta_margins};
use polydec_core::diameter::FacetRidgeGraph;
use polydec_core::obstruction::phi;
use polydec_core::transport::enumerate_vertices;

fn face(ids: &[usize]) -> Face {
    Face::of(ids.iter().copied())
}

/// Strategy: a small random pure-or-not complex on up to 8 vertices.
fn small_complex() -> impl Strategy<Value = SimplicialComplex> {
    (2usize..=8)
        .prop_flat_map(|vc| {
            let facet = proptest::collection::vec(0..vc, 1..=4);
            (
                Just(vc),
                proptest::collection::vec(facet, 1..=6),
            )
        })
        .prop_map(|(vc, facets)| {
            SimplicialComplex::from_facets(facets.into_iter().map(Face::of), vc).unwrap()
        })
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(64))]

    #[test]
    fn deletion_and_link_are_consistent(c in small_complex()) {
        for tau in common::all_faces_brute(&c) {
            let del = c.deletion(tau).unwrap();
            for &f in del.facets() {
                prop_assert!(!tau.is_subset_of(f) || tau.is_empty() && f.is_empty());
            }
            // deletion faces are exactly the faces not containing tau
            for sigma in common::all_faces_brute(&c) {
                let expect = !tau.is_subset_of(sigma);
                prop_assert_eq!(del.contains_face(sigma), expect);
            }
            let link = c.link(tau).unwrap();
            for &sigma in link.facets() {
                prop_assert!(sigma.intersection(tau).is_empty());
                prop_assert!(c.contains_face(sigma.union(tau)));
            }
            // link faces are exactly the disjoint sets whose union is a face
            for sigma in common::all_faces_brute(&c) {
                let expect = sigma.intersection(tau).is_empty()
                    && c.contains_face(sigma.union(tau));
                prop_assert_eq!(link.contains_face(sigma), expect);
            }
        }
    }

    #[test]
    fn rank_matches_brute_force(c in small_complex(), bits in 0u64..256) {
        let s = Face::from_bits(bits % (1 << c.vertex_count()));
        let r = c.rank_of(s);
        prop_assert_eq!(r.rank, common::rank_brute(&c, s));
        prop_assert_eq!(r.rank + r.corank, s.cardinality());
        prop_assert!(c.contains_face(r.witness));
        prop_assert!(r.witness.is_subset_of(s));
    }

    #[test]
    fn f_counts_match_brute_closure(c in small_complex()) {
        let dim = c.dimension().unwrap();
        for k in -1..=dim {
            prop_assert_eq!(c.f_count(k).unwrap(), common::f_count_brute(&c, k));
        }
    }

    #[test]
    fn closure_soundness(c in small_complex()) {
        // every subset of every facet has corank 0 on its own vertex set
        for &f in c.facets() {
            let verts = f.vertex_vec();
            for bits in 0..(1u64 << verts.len()) {
                let sub = Face::of(
                    verts.iter().enumerate().filter(|(i, _)| bits >> i & 1 == 1).map(|(_, &v)| v),
                );
                prop_assert_eq!(c.rank_of(sub).corank, 0);
            }
        }
    }

    #[test]
    fn make_complex_is_idempotent(c in small_complex()) {
        let again = SimplicialComplex::from_facets(
            c.facets().iter().copied(),
            c.vertex_count(),
        ).unwrap();
        prop_assert_eq!(&again, &c);
    }

    #[test]
    fn face_order_matches_vertex_list_order(a in 0u64..4096, b in 0u64..4096) {
        let (fa, fb) = (Face::from_bits(a), Face::from_bits(b));
        let expected = fa.vertex_vec().cmp(&fb.vertex_vec());
        prop_assert_eq!(fa.cmp(&fb), expected);
    }

    #[test]
    fn json_round_trips(c in small_complex()) {
        let s = c.to_json(None).unwrap();
        let (back, _) = SimplicialComplex::from_json(&s).unwrap();
        prop_assert_eq!(back, c);
    }

    #[test]
    fn distances_are_symmetric_with_triangle_inequality(c in small_complex()) {
        if !c.is_pure() || c.is_void() {
            return Ok(());
        }
        let g = FacetRidgeGraph::build(&c).unwrap();
        let n = g.node_count();
        let dist: Vec<Vec<Option<u32>>> = (0..n).map(|s| g.bfs_distances(s)).collect();
        for i in 0..n {
            for j in 0..n {
                prop_assert_eq!(dist[i][j], dist[j][i]);
                for l in 0..n {
                    if let (Some(ij), Some(il), Some(lj)) = (dist[i][j], dist[i][l], dist[l][j]) {
                        prop_assert!(ij <= il + lj);
                    }
                }
            }
        }
    }

    #[test]
    fn weak_search_verdict_stable_without_memo(c in small_complex()) {
        if !c.is_pure() || c.is_void() {
            return Ok(());
        }
        let defaults = SearchOptions::default();
        let no_memo = SearchOptions { disable_memo: true, ..SearchOptions::default() };
        let with = find_weak_decomposition(&c, 0, &defaults).unwrap();
        let without = find_weak_decomposition(&c, 0, &no_memo).unwrap();
        prop_assert_eq!(with.status, without.status);
        prop_assert_eq!(with.certificate, without.certificate);
    }
}

#[test]
fn delta22_deletion_of_u1_stays_pure_dimension_3() {
    let d = delta_complex(2, 2).unwrap();
    let del = d.complex.deletion(face(&[0])).unwrap();
    assert!(del.is_pure());
    assert_eq!(del.dimension(), Some(3));
    assert_eq!(del.facet_count(), 18);
}

#[test]
fn delta22_link_of_u1u2_is_the_triangle_on_v345() {
    let d = delta_complex(2, 2).unwrap();
    let u12 = Face::of([d.labeling.u(0).index(), d.labeling.u(1).index()]);
    let link = d.complex.link(u12).unwrap();
    let v = |nu: usize| d.labeling.v(nu - 1).index();
    let expected = [
        Face::of([v(3), v(4)]),
        Face::of([v(3), v(5)]),
        Face::of([v(4), v(5)]),
    ];
    let mut expected = expected.to_vec();
    expected.sort_unstable();
    assert_eq!(link.facets(), expected.as_slice());
    assert!(link.is_pure());
    assert_eq!(link.dimension(), Some(1));
}

#[test]
fn delta22_face_counts() {
    let d = delta_complex(2, 2).unwrap();
    assert_eq!(d.complex.f_count(0).unwrap(), 10);
    assert_eq!(d.complex.f_count(1).unwrap(), 40);
    assert_eq!(d.complex.f_count(3).unwrap(), 30);
    // cross-check against the brute closure
    assert_eq!(common::f_count_brute(&d.complex, 1), 40);
}

#[test]
fn delta22_rank_examples() {
    let d = delta_complex(2, 2).unwrap();
    let u = |nu: usize| d.labeling.u(nu - 1).index();
    let v = |nu: usize| d.labeling.v(nu - 1).index();

    let r = d.complex.rank_of(Face::of([u(1), v(2)]));
    assert_eq!((r.rank, r.corank), (2, 0));

    let r = d.complex.rank_of(Face::of([u(1), u(2), u(3)]));
    assert_eq!((r.rank, r.corank), (2, 1));
    assert_eq!(common::rank_brute(&d.complex, Face::of([u(1), u(2), u(3)])), 2);

    let r = d.complex.rank_of(Face::of([u(1), v(1)]));
    assert_eq!((r.rank, r.corank), (1, 1));
}

#[test]
fn delta22_ridge_graph_is_4_regular_and_connected() {
    let d = delta_complex(2, 2).unwrap();
    let g = FacetRidgeGraph::build(&d.complex).unwrap();
    assert_eq!(g.node_count(), 30);
    assert_eq!(g.regular_degree(), Some(4));
    assert!(g.is_connected());
    assert!(g.diameter().unwrap() <= 6);
}

#[test]
fn delta_facet_structure_for_small_parameters() {
    for (a, b) in [(1, 1), (2, 1), (2, 2), (3, 2), (3, 3)] {
        let d = delta_complex(a, b).unwrap();
        let (uf, vf) = (d.labeling.u_face(), d.labeling.v_face());
        for &f in d.complex.facets() {
            assert_eq!(f.intersection(vf).cardinality(), a);
            assert_eq!(f.intersection(uf).cardinality(), b);
            for uu in f.intersection(uf).vertices() {
                for vv in f.intersection(vf).vertices() {
                    assert_ne!(
                        d.labeling.pair_index(uu),
                        d.labeling.pair_index(vv),
                        "facet {f} uses both sides of a pair at ({a},{b})"
                    );
                }
            }
        }
    }
}

#[test]
fn hexagon_margins_polar_is_delta_1_1() {
    let margins = delta_margins(1, 1).unwrap();
    let vertices = enumerate_vertices(&margins).unwrap();
    assert_eq!(vertices.len(), 6);
    let d = delta_complex(1, 1).unwrap();
    // up to relabeling this is the 6-cycle
    let g = FacetRidgeGraph::build(&d.complex).unwrap();
    let c6 = FacetRidgeGraph::build(&cycle_complex(6)).unwrap();
    assert_eq!(g.regular_degree(), c6.regular_degree());
    assert_eq!(g.diameter().unwrap(), c6.diameter().unwrap());
}

#[test]
fn delta_vertex_counts_match_the_formula_up_to_4_4() {
    for a in 1..=4usize {
        for b in 1..=4usize {
            let margins = delta_margins(a, b).unwrap();
            let count = enumerate_vertices(&margins).unwrap().len() as u64;
            assert_eq!(
                count,
                polydec_core::delta::facet_count_formula(a, b),
                "vertex count off at ({a},{b})"
            );
        }
    }
}

#[test]
fn delta_ridge_graphs_are_regular_and_connected() {
    for (a, b) in [(1, 1), (2, 1), (2, 2), (3, 1), (3, 2), (4, 1)] {
        let d = delta_complex(a, b).unwrap();
        let g = FacetRidgeGraph::build(&d.complex).unwrap();
        assert_eq!(g.regular_degree(), Some(a + b), "degree off at ({a},{b})");
        assert!(g.is_connected(), "disconnected at ({a},{b})");
    }
}

/// Every certificate the searches produce must verify and put its
/// complex under the matching diameter bound, and strong success
/// implies weak success.
#[test]
fn certified_complexes_satisfy_their_bounds() {
    use polydec_core::decomp::{find_strong_decomposition, SearchStatus};
    use polydec_core::diameter::{bound_report, BoundKind};

    let boundary_3_simplex = SimplicialComplex::from_facets(
        [
            Face::of([0, 1, 2]),
            Face::of([0, 1, 3]),
            Face::of([0, 2, 3]),
            Face::of([1, 2, 3]),
        ],
        4,
    )
    .unwrap();
    let cases = [
        cycle_complex(6),
        boundary_3_simplex,
        delta_complex(1, 1).unwrap().complex,
        delta_complex(2, 1).unwrap().complex,
        delta_complex(2, 2).unwrap().complex,
    ];
    let opts = SearchOptions::default();
    for c in &cases {
        for k in 0..=1usize {
            let weak = find_weak_decomposition(c, k, &opts).unwrap();
            if let Some(cert) = &weak.certificate {
                polydec_core::decomp::verify_certificate(c, cert).unwrap();
                let r = bound_report(c, BoundKind::ProvanBilleraWeak { k }).unwrap();
                assert!(r.satisfied, "weak bound fails on a certified complex: {r:?}");
            }
            let strong = find_strong_decomposition(c, k, &opts).unwrap();
            if let Some(cert) = &strong.certificate {
                polydec_core::decomp::verify_certificate(c, cert).unwrap();
                let r = bound_report(c, BoundKind::ProvanBilleraStrong { k }).unwrap();
                assert!(r.satisfied, "strong bound fails on a certified complex: {r:?}");
                assert_eq!(
                    weak.status,
                    SearchStatus::Decomposable,
                    "strong succeeded but weak failed"
                );
            }
        }
    }
}

#[test]
fn phi_values_track_shedding_on_delta22() {
    let d = delta_complex(2, 2).unwrap();
    let u = |nu: usize| d.labeling.u(nu - 1).index();
    let s = Face::of([u(1), u(2)]);
    assert_eq!(phi(&d.labeling, &d.complex, s).unwrap(), 0);
    let shed = d.complex.deletion(Face::of([u(1)])).unwrap();
    assert_eq!(phi(&d.labeling, &shed, s).unwrap(), 1);
}

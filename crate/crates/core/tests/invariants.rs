//! Cross-module invariants: serialization round-trips, orbit-stabilizer
//! identities, and the structural properties the generators advertise.

use proptest::prelude::*;
use symbreak::canon::automorphism_group;
use symbreak::constructions::{self, GroupTable};
use symbreak::graph::Graph;
use symbreak::io;
use symbreak::operators::{contract_partition, lexicographic_product, line_graph};

fn arb_graph(max_n: usize) -> impl Strategy<Value = Graph> {
    (1..=max_n).prop_flat_map(|n| {
        let pairs: Vec<(usize, usize)> =
            (0..n).flat_map(|u| (u + 1..n).map(move |v| (u, v))).collect();
        proptest::collection::vec(any::<bool>(), pairs.len()).prop_map(move |mask| {
            let edges: Vec<(usize, usize)> = pairs
                .iter()
                .zip(mask.iter())
                .filter(|(_, &m)| m)
                .map(|(&e, _)| e)
                .collect();
            Graph::from_edges(n, &edges).unwrap()
        })
    })
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(64))]

    #[test]
    fn graph6_round_trip(g in arb_graph(100)) {
        let s = io::to_graph6(&g);
        let back = io::from_graph6(&s).unwrap();
        prop_assert_eq!(back, g);
    }

    #[test]
    fn sparse6_round_trip(g in arb_graph(100)) {
        let s = io::to_sparse6(&g);
        let back = io::from_sparse6(&s).unwrap();
        prop_assert_eq!(back, g);
    }

    #[test]
    fn adjacency_text_round_trip(g in arb_graph(40)) {
        let s = io::to_adjacency_text(&g);
        let back = io::from_adjacency_text(&s).unwrap();
        prop_assert_eq!(back, g);
    }

    #[test]
    fn handshake_holds(g in arb_graph(30)) {
        let total: usize = (0..g.n()).map(|v| g.degree(v)).sum();
        prop_assert_eq!(total, 2 * g.edge_count());
        g.check_invariants().unwrap();
    }

    #[test]
    fn orbit_stabilizer_product(g in arb_graph(8)) {
        let group = automorphism_group(&g);
        for v in 0..g.n() {
            let orbit = group.orbit_of_vertex(v).len() as u128;
            let stab = group.pointwise_stabilizer(&[v]).order();
            prop_assert_eq!(orbit * stab, group.order());
        }
    }

    #[test]
    fn canonical_form_is_invariant(g in arb_graph(9), seed in any::<u64>()) {
        // relabelling must not change the canonical form
        let n = g.n();
        let mut image: Vec<usize> = (0..n).collect();
        let mut state = seed;
        for i in (1..n).rev() {
            state = state.wrapping_mul(6364136223846793005).wrapping_add(1442695040888963407);
            let j = (state >> 33) as usize % (i + 1);
            image.swap(i, j);
        }
        let relabelled = g.relabelled(&image);
        let (cg, _) = symbreak::canon::canonical_form(&g);
        let (ch, _) = symbreak::canon::canonical_form(&relabelled);
        prop_assert_eq!(cg, ch);
    }
}

#[test]
fn wreath_structure_invariants() {
    for n in 3..=8 {
        let w = constructions::wreath(n).unwrap();
        assert_eq!(w.n(), 2 * n);
        assert_eq!(w.regularity(), Some(4));
        let product =
            lexicographic_product(&constructions::cycle(n).unwrap(), &Graph::empty(2));
        assert_eq!(w, product);
        // contracting the fibres gives the base cycle
        let blocks: Vec<Vec<usize>> = (0..n).map(|i| vec![2 * i, 2 * i + 1]).collect();
        let q = contract_partition(&w, &blocks).unwrap();
        assert!(symbreak::canon::is_isomorphic(&q, &constructions::cycle(n).unwrap()).is_some());
        // advertised group order
        let expected = if n == 4 { 1152u128 } else { (1u128 << n) * 2 * n as u128 };
        assert_eq!(automorphism_group(&w).order(), expected);
    }
}

#[test]
fn line_graph_degree_identity_on_catalog_generators() {
    for g in [
        constructions::petersen(),
        constructions::heawood(),
        constructions::cage46(),
        constructions::holt(),
    ] {
        let (lg, map) = line_graph(&g);
        for (i, &(u, v)) in map.iter().enumerate() {
            assert_eq!(lg.degree(i), g.degree(u) + g.degree(v) - 2);
        }
    }
}

#[test]
fn stabilizer_chain_membership_sieve() {
    // random words in the generators must sift to members; the chain order
    // matches the advertised structure of the 5-fibre wreath graph
    use rand::{Rng, SeedableRng};
    let w5 = constructions::wreath(5).unwrap();
    let group = automorphism_group(&w5);
    assert_eq!(group.order(), 320);
    let mut rng = rand_chacha::ChaCha8Rng::seed_from_u64(0x5eed);
    let gens = group.generators().to_vec();
    for _ in 0..200 {
        let mut word = symbreak::perm::Perm::identity(w5.n());
        for _ in 0..rng.gen_range(1..12) {
            let pick = rng.gen_range(0..gens.len());
            if rng.gen_bool(0.5) {
                word = word.then(&gens[pick]);
            } else {
                word = word.then(&gens[pick].inverse());
            }
        }
        assert!(group.contains(&word));
    }
    // and a permutation that is not an automorphism is rejected
    let image: Vec<usize> = (0..w5.n()).map(|v| (v + 1) % w5.n()).collect();
    let shift = symbreak::perm::Perm::from_image(image).unwrap();
    if !symbreak::canon::is_automorphism(&w5, &shift) {
        assert!(!group.contains(&shift));
    }
}

#[test]
fn group_serialization_round_trip() {
    let g = constructions::petersen();
    let group = automorphism_group(&g);
    let json = serde_json::to_string(&group).unwrap();
    let back: symbreak::group::PermGroup = serde_json::from_str(&json).unwrap();
    assert_eq!(back.order(), group.order());
    for p in group.generators() {
        assert!(back.contains(p));
    }
}

#[test]
fn vertex_transitive_connectivity_bound() {
    // a vertex-transitive graph of valency r is at least ceil(2r/3)-connected
    let w5 = constructions::wreath(5).unwrap();
    assert!(symbreak::connectivity::is_k_connected(&w5, 3));
    assert!(symbreak::connectivity::is_k_connected_exhaustive(&w5, 3));
    assert!(symbreak::connectivity::is_k_connected_flow(&w5, 3));
    for g in [
        constructions::petersen(),                       // cubic: >= 2
        constructions::circulant(9, &[1, 2, 7, 8]).unwrap(), // 4-valent: >= 3
        constructions::holt(),
    ] {
        let r = g.regularity().unwrap();
        let bound = (2 * r).div_ceil(3);
        assert!(symbreak::connectivity::is_k_connected(&g, bound));
    }
}

#[test]
fn catalog_graphs_round_trip_and_satisfy_invariants() {
    for entry in symbreak::classifier::bundled_catalog() {
        let g = &entry.graph;
        g.check_invariants().unwrap();
        assert_eq!(io::from_graph6(&io::to_graph6(g)).unwrap(), *g, "{}", entry.name);
        assert_eq!(io::from_sparse6(&io::to_sparse6(g)).unwrap(), *g, "{}", entry.name);
    }
}

#[test]
fn distinguishing_number_one_means_rigid() {
    use symbreak::distinguishing::{distinguishing_number, SearchLimits};
    // an asymmetric tree, a rigid graph and two symmetric graphs
    let rigid = Graph::from_edges(7, &[(0, 1), (1, 2), (2, 3), (3, 4), (4, 5), (2, 6)]).unwrap();
    let cases = [
        (rigid, true),
        (constructions::cycle(6).unwrap(), false),
        (constructions::petersen(), false),
    ];
    for (g, expect_rigid) in cases {
        let trivial = automorphism_group(&g).is_trivial();
        assert_eq!(trivial, expect_rigid);
        let (d, _) = distinguishing_number(&g, 4, SearchLimits::default()).unwrap();
        assert_eq!(d == 1, trivial);
    }
}

#[test]
fn index_is_bounded_by_the_number() {
    use symbreak::distinguishing::{
        distinguishing_index, distinguishing_number, SearchLimits,
    };
    // for connected non-tree graphs on 5 or more vertices
    for g in [
        constructions::complete(5),
        constructions::petersen(),
        constructions::cycle(6).unwrap(),
        constructions::wreath(5).unwrap(),
    ] {
        let (d, _) = distinguishing_number(&g, 6, SearchLimits::default()).unwrap();
        let idx = distinguishing_index(&g, 6, SearchLimits::default()).unwrap();
        assert!(idx.value <= d, "index {} above number {d}", idx.value);
    }
}

#[test]
fn cayley_generators_give_vertex_transitive_graphs() {
    let table = GroupTable::dihedral(7);
    let g = constructions::cayley(&table, &[1, 6, 7, 8]).unwrap();
    assert!(automorphism_group(&g).is_transitive());
    let c = constructions::circulant(7, &[1, 2, 5, 6]).unwrap();
    assert!(automorphism_group(&c).is_transitive());
}

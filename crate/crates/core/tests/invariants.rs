//! Property-based invariants over random hypergraphs and bipartite graphs.

use proptest::prelude::*;

use xturan_core::constructions::complete_bipartite;
use xturan_core::hypergraph::Hypergraph;
use xturan_core::io;
use xturan_core::norms;
use xturan_core::regularization;
use xturan_core::walks;

/// Random simple 2-graph on up to 12 vertices.
fn arb_graph() -> impl Strategy<Value = Hypergraph> {
    (2usize..=12).prop_flat_map(|n| {
        let pairs: Vec<(usize, usize)> =
            (0..n).flat_map(|i| (i + 1..n).map(move |j| (i, j))).collect();
        proptest::collection::vec(any::<bool>(), pairs.len()).prop_map(move |mask| {
            let chosen: Vec<(usize, usize)> = pairs
                .iter()
                .zip(&mask)
                .filter(|(_, &keep)| keep)
                .map(|(&e, _)| e)
                .collect();
            Hypergraph::graph(n, &chosen).expect("simple pairs")
        })
    })
}

/// Random 3-uniform hypergraph on up to 8 vertices.
fn arb_3graph() -> impl Strategy<Value = Hypergraph> {
    (3usize..=8).prop_flat_map(|n| {
        let mut triples = Vec::new();
        for a in 0..n {
            for b in a + 1..n {
                for c in b + 1..n {
                    triples.push(vec![a, b, c]);
                }
            }
        }
        let len = triples.len();
        proptest::collection::vec(any::<bool>(), len).prop_map(move |mask| {
            let chosen: Vec<Vec<usize>> = triples
                .iter()
                .zip(&mask)
                .filter(|(_, &keep)| keep)
                .map(|(e, _)| e.clone())
                .collect();
            Hypergraph::new(3, n, chosen).expect("valid triples")
        })
    })
}

proptest! {
    /// Degree sum = r * edge count, so the 1-norm is r * e(H).
    #[test]
    fn one_norm_is_r_times_edges(g in arb_3graph()) {
        let norm = norms::p_norm(&g, 1.0).unwrap().value;
        prop_assert_eq!(norm, (3 * g.edge_count()) as f64);
    }

    /// Power-mean monotonicity: (|H|_p / n)^{1/p} nondecreasing in p.
    #[test]
    fn power_mean_monotone(g in arb_graph(), p in 1.0f64..4.0, gap in 0.1f64..2.0) {
        let q = p + gap;
        let n = g.n() as f64;
        let lhs = (norms::p_norm(&g, p).unwrap().value / n).powf(1.0 / p);
        let rhs = (norms::p_norm(&g, q).unwrap().value / n).powf(1.0 / q);
        prop_assert!(lhs <= rhs * (1.0 + 1e-9) + 1e-9);
    }

    /// Minkowski on the degree sequence: adding one edge raises the norm,
    /// and norms are monotone under taking subgraphs.
    #[test]
    fn norm_monotone_under_subgraphs(g in arb_graph(), p in 1.0f64..4.0) {
        let full = norms::p_norm(&g, p).unwrap().value;
        if let Some(e) = g.edges().first().cloned() {
            let smaller = g.without_edge(&e);
            let sub = norms::p_norm(&smaller, p).unwrap().value;
            prop_assert!(sub <= full + 1e-9);
        }
    }

    /// Walk counts agree with norms in the first two cases:
    /// W_2 = 2e = |G|_1 and W_3 = |G|_2.
    #[test]
    fn walk_norm_identities(g in arb_graph()) {
        let w2 = walks::walk_count(&g, 1).unwrap() as f64;
        let w3 = walks::walk_count(&g, 2).unwrap() as f64;
        prop_assert_eq!(w2, norms::p_norm(&g, 1.0).unwrap().value);
        prop_assert_eq!(w3, norms::p_norm(&g, 2.0).unwrap().value);
    }

    /// Heavy-vertex sets are small: fewer than n/K vertices can carry
    /// degree^p at least K * |G|_p / n.
    #[test]
    fn heavy_set_size_bound(g in arb_graph(), k in 2.0f64..16.0, p in 1.0f64..3.0) {
        let heavy = regularization::heavy_vertices(&g, p, k).unwrap();
        prop_assert!((heavy.len() as f64) <= g.n() as f64 / k + 1e-9);
    }

    /// Prop. 5.1: the selected dyadic class always meets its guarantee.
    #[test]
    fn dyadic_guarantee_holds(degrees in proptest::collection::vec(0u64..64, 1..40),
                              n_other in 2usize..64,
                              p in 1.0f64..3.0) {
        prop_assume!(degrees.iter().any(|&d| d > 0));
        let rep = regularization::dyadic_select_degrees(&degrees, n_other, p).unwrap();
        prop_assert!(rep.edges_from_selected as f64 >= rep.guarantee - 1e-9);
    }

    /// graph6 round-trip is the identity on 2-graphs.
    #[test]
    fn graph6_round_trip(g in arb_graph()) {
        let text = io::write_graph6(&g).unwrap();
        let back = io::parse_graph6(&text).unwrap();
        prop_assert_eq!(g.n(), back.n());
        let mut a = g.edges().to_vec();
        let mut b = back.edges().to_vec();
        a.sort();
        b.sort();
        prop_assert_eq!(a, b);
    }

    /// Hypergraph text format round-trips exactly.
    #[test]
    fn hyper_text_round_trip(g in arb_3graph()) {
        let text = io::write_hypergraph(&g);
        let back = io::parse_hypergraph(&text).unwrap();
        prop_assert_eq!(g.r(), back.r());
        prop_assert_eq!(g.n(), back.n());
        prop_assert_eq!(g.edges().to_vec(), back.edges().to_vec());
    }
}

#[test]
fn bipartite_text_round_trip() {
    let g = complete_bipartite(3, 4);
    let text = io::write_bipartite(&g);
    let back = io::parse_bipartite(&text).unwrap();
    assert_eq!(g.left_size(), back.left_size());
    assert_eq!(g.right_size(), back.right_size());
    assert_eq!(g.edges(), back.edges());
}

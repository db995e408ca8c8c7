use extremalkit_core::graph::{contains_clique, turan_edge_count, Graph};
use extremalkit_core::multipartite::{ex_multipartite, merged_witness_graph, HostSpec};
use extremalkit_core::oracle::{max_edges_clique_free_subgraph, max_weight_clique_free, max_weight_clique_free_with_t_edges};
use extremalkit_core::partition::partition_heuristic;
use extremalkit_core::rational::Rational;
use extremalkit_core::weighted::{
    best_t_edge_subgraph_of_b, build_b, ex_min, ex_prod, partition_graph, weight_of, VertexWeighting,
    WeightedEdgeFunction,
};
use proptest::prelude::*;

fn weights(max_n: usize) -> impl Strategy<Value = Vec<i64>> {
    prop::collection::vec(0i64..15, 1..=max_n)
}

fn rational_weights(max_n: usize) -> impl Strategy<Value = Vec<Rational>> {
    prop::collection::vec((0i64..12, 1i64..5), 1..=max_n)
        .prop_map(|v| v.into_iter().map(|(p, q)| Rational::new(p.into(), q.into())).collect())
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(64))]

    #[test]
    fn min_weight_matches_brute_force(raw in weights(6), clique in 3usize..6) {
        let w = VertexWeighting::from_integers(&raw).unwrap();
        let (truth, _) = max_weight_clique_free(raw.len(), &WeightedEdgeFunction::min(w.clone()), clique).unwrap();
        prop_assert_eq!(ex_min(&w, clique).unwrap(), truth);
        let b = build_b(clique, &w).unwrap();
        prop_assert!(!contains_clique(&b.graph, clique));
    }

    #[test]
    fn product_weight_matches_brute_force(w in rational_weights(6), clique in 3usize..6) {
        let n = w.len();
        let w = VertexWeighting::new(w).unwrap();
        let f = WeightedEdgeFunction::product(w.clone());
        let (truth, _) = max_weight_clique_free(n, &f, clique).unwrap();
        let (value, partition) = ex_prod(&w, clique).unwrap();
        prop_assert_eq!(&value, &truth);
        let witness = partition_graph(&partition);
        prop_assert!(!contains_clique(&witness, clique));
        prop_assert_eq!(weight_of(&witness, &f).unwrap(), value.clone());
        let (heuristic, _) = partition_heuristic(w.weights(), clique - 1).unwrap();
        prop_assert!(heuristic <= value);
    }

    #[test]
    fn multipartite_matches_brute_force(parts in prop::collection::vec(1usize..4, 1..5), clique in 3usize..5) {
        prop_assume!(parts.iter().sum::<usize>() <= 8);
        let spec = HostSpec::new(parts, clique).unwrap();
        let (value, partition) = ex_multipartite(&spec).unwrap();
        let (truth, _) = max_edges_clique_free_subgraph(&spec.host(), clique).unwrap();
        prop_assert_eq!(value, truth);
        let witness = merged_witness_graph(&spec, &partition).unwrap();
        prop_assert_eq!(witness.edge_count() as u64, value);
        prop_assert!(witness.is_subgraph_of(&spec.host()));
    }

    #[test]
    fn t_edge_family_matches_brute_force(raw in weights(5), clique in 3usize..5, t in 0usize..11) {
        let n = raw.len();
        prop_assume!(t <= n * (n - 1) / 2);
        let w = VertexWeighting::from_integers(&raw).unwrap();
        let b = best_t_edge_subgraph_of_b(&w, clique, t).unwrap();
        let truth = max_weight_clique_free_with_t_edges(n, &w, clique, t).unwrap();
        // subgraphs of B are candidates, so they never beat the optimum
        if let Some(b) = b {
            prop_assert!(truth.is_some_and(|t| b <= t));
        }
    }
}

#[test]
fn unit_weights_give_turan_numbers() {
    for n in 1..=8 {
        for clique in 3..=9 {
            let w = VertexWeighting::unit(n);
            let expected = Rational::from_integer(turan_edge_count(n as u64, clique as u64 - 1).into());
            assert_eq!(ex_min(&w, clique).unwrap(), expected);
            assert_eq!(ex_prod(&w, clique).unwrap().0, expected);
        }
    }
}

#[test]
fn octahedron() {
    let spec = HostSpec::new(vec![2, 2, 2], 3).unwrap();
    assert_eq!(ex_multipartite(&spec).unwrap().0, 8);
    assert_eq!(max_edges_clique_free_subgraph(&spec.host(), 3).unwrap().0, 8);
}

/// Non-adjacency is an equivalence relation with at most `max_parts` classes.
fn is_complete_partite(g: &Graph, max_parts: usize) -> bool {
    let n = g.vertex_count();
    let mut class = vec![usize::MAX; n];
    let mut classes = 0;
    for v in 0..n {
        if class[v] != usize::MAX {
            continue;
        }
        for u in v..n {
            if u == v || !g.has_edge(u, v) {
                class[u] = classes;
            }
        }
        classes += 1;
    }
    classes <= max_parts && (0..n).all(|u| (0..n).all(|v| u == v || g.has_edge(u, v) == (class[u] != class[v])))
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(32))]

    // with positive weights every product-weight optimum is complete partite
    #[test]
    fn product_optima_are_complete_partite(raw in prop::collection::vec(1i64..7, 2..=5), clique in 3usize..5) {
        let n = raw.len();
        let w = VertexWeighting::from_integers(&raw).unwrap();
        let f = WeightedEdgeFunction::product(w.clone());
        let slots: Vec<_> = (0..n).flat_map(|u| (u + 1..n).map(move |v| (u, v))).collect();
        let best = ex_prod(&w, clique).unwrap().0;
        for mask in 0u32..(1 << slots.len()) {
            let edges: Vec<_> = slots.iter().enumerate().filter(|(i, _)| mask >> i & 1 == 1).map(|(_, e)| *e).collect();
            let g = Graph::from_edges(n, &edges).unwrap();
            if !contains_clique(&g, clique) && weight_of(&g, &f).unwrap() == best {
                prop_assert!(is_complete_partite(&g, clique - 1), "{:?}", edges);
            }
        }
    }
}

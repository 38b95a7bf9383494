use graphlets::generate::erdos_renyi;
use graphlets::kcore::kcore_numbers;
use graphlets::local::{CountingStrategy, EdgeCounter};
use graphlets::oracle::brute_force_counts;
use graphlets::{
    exact_integer_counts, load_graph, EngineConfig, Format, Graph, Graphlet, SampleDesign,
    VertexId,
};
use proptest::prelude::*;

fn arb_graph(max_n: usize) -> impl Strategy<Value = Graph> {
    (3..=max_n)
        .prop_flat_map(|n| {
            let pairs = proptest::collection::vec((0..n as u32, 0..n as u32), 1..n * 3);
            (Just(n), pairs)
        })
        .prop_filter_map("needs an edge", |(n, pairs)| Graph::from_edges(n, pairs).ok())
}

fn arb_graph_with_perm(max_n: usize) -> impl Strategy<Value = (Graph, Vec<VertexId>)> {
    arb_graph(max_n).prop_flat_map(|g| {
        let perm: Vec<VertexId> = (0..g.n() as VertexId).collect();
        (Just(g), Just(perm).prop_shuffle())
    })
}

/// Core numbers by repeated removal of vertices below k.
fn naive_cores(g: &Graph) -> Vec<usize> {
    let n = g.n();
    let mut core = vec![0; n];
    for k in 1..=g.max_degree() {
        let mut alive = vec![true; n];
        loop {
            let mut changed = false;
            for v in 0..n {
                if !alive[v] {
                    continue;
                }
                let d = g
                    .neighbors(v as VertexId)
                    .iter()
                    .filter(|&&w| alive[w as usize])
                    .count();
                if d < k {
                    alive[v] = false;
                    changed = true;
                }
            }
            if !changed {
                break;
            }
        }
        for v in 0..n {
            if alive[v] {
                core[v] = k;
            }
        }
    }
    core
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(64))]

    #[test]
    fn exact_matches_brute_force(g in arb_graph(11)) {
        prop_assert_eq!(exact_integer_counts(&g, 1).unwrap(), brute_force_counts(&g).unwrap());
    }

    #[test]
    fn strategies_agree(g in arb_graph(14)) {
        let mut a = EdgeCounter::new(&g, CountingStrategy::Marker);
        let mut b = EdgeCounter::new(&g, CountingStrategy::BinarySearch);
        for e in 0..g.m() {
            prop_assert_eq!(a.count(e).unwrap(), b.count(e).unwrap());
        }
    }

    #[test]
    fn counts_ignore_labels((g, perm) in arb_graph_with_perm(12)) {
        let h = g.permuted(&perm).unwrap();
        prop_assert_eq!(exact_integer_counts(&g, 1).unwrap(), exact_integer_counts(&h, 1).unwrap());
    }

    #[test]
    fn per_edge_sums(g in arb_graph(14)) {
        let mut counter = EdgeCounter::new(&g, CountingStrategy::Marker);
        let mut tri = 0u128;
        let mut far = 0u128;
        for e in 0..g.m() {
            let c = counter.count(e).unwrap();
            tri += c.get(Graphlet::Triangle);
            let (u, v) = g.edge(e);
            let disjoint = g
                .edges()
                .iter()
                .filter(|&&(a, b)| a != u && a != v && b != u && b != v)
                .count() as u128;
            prop_assert_eq!(c.get(Graphlet::FourNodeOneEdge), disjoint);
            far += c.get(Graphlet::ThreeNodeOneEdge);
        }
        let y = exact_integer_counts(&g, 1).unwrap();
        prop_assert_eq!(tri, 3 * y[Graphlet::Triangle]);
        prop_assert_eq!(far, y[Graphlet::ThreeNodeOneEdge]);
    }

    #[test]
    fn core_numbers_match_naive_peeling(g in arb_graph(16)) {
        let d = kcore_numbers(&g);
        let naive = naive_cores(&g);
        prop_assert_eq!(&d.core, &naive);
        for (e, &(a, b)) in g.edges().iter().enumerate() {
            prop_assert_eq!(d.edge(e), naive[a as usize].min(naive[b as usize]));
        }
    }

    #[test]
    fn canonical_round_trip(g in arb_graph(20)) {
        let text = g.to_canonical_string();
        let h = load_graph(&text, Format::Canonical).unwrap();
        prop_assert_eq!(h.to_canonical_string(), text);
        prop_assert_eq!(h.edges(), g.edges());
    }

    #[test]
    fn worker_count_does_not_change_estimates(g in arb_graph(20), seed in any::<u64>()) {
        let design = SampleDesign::probability(0.5, seed);
        let one = graphlets::estimate(&g, &design, EngineConfig::new(1)).unwrap();
        let three = graphlets::estimate(&g, &design, EngineConfig::new(3)).unwrap();
        prop_assert_eq!(one, three);
    }

    #[test]
    fn complements_sum_to_vertex_subsets(g in arb_graph(14)) {
        let y = exact_integer_counts(&g, 1).unwrap();
        let n = g.n() as u128;
        let three: u128 = Graphlet::ALL[2..6].iter().map(|&p| y[p]).sum();
        let four: u128 = Graphlet::ALL[6..].iter().map(|&p| y[p]).sum();
        prop_assert_eq!(three, n * (n - 1) * (n - 2) / 6);
        prop_assert_eq!(four, n * (n - 1) * (n - 2) * (n - 3) / 24);
    }
}

#[test]
fn larger_random_graphs_match_oracle() {
    for seed in 0..5 {
        let g = erdos_renyi(18, 0.3, seed);
        assert_eq!(exact_integer_counts(&g, 2).unwrap(), brute_force_counts(&g).unwrap());
    }
}

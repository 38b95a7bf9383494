use graphlets::generate::{complete, erdos_renyi, triangle_plus_isolated};
use graphlets::micro::MicroConfig;
use graphlets::{
    estimate, exact_counts, max_graphlet_estimate, micro_counts, micro_exact, sample_edges,
    EngineConfig, Graph, Graphlet, SampleDesign, Weighting,
};

fn mean_and_var(values: &[f64]) -> (f64, f64) {
    let n = values.len() as f64;
    let mean = values.iter().sum::<f64>() / n;
    let var = values.iter().map(|v| (v - mean).powi(2)).sum::<f64>() / (n - 1.0);
    (mean, var)
}

fn runs(g: &Graph, p: f64, pattern: Graphlet, n: u64) -> Vec<f64> {
    (0..n)
        .map(|s| {
            estimate(g, &SampleDesign::probability(p, 7000 + s), EngineConfig::new(1))
                .unwrap()
                .x[pattern]
        })
        .collect()
}

#[test]
fn bernoulli_estimates_are_centered() {
    let g = erdos_renyi(40, 0.2, 11);
    let truth = exact_counts(&g, 1).unwrap();
    for pattern in [Graphlet::Triangle, Graphlet::FourPath, Graphlet::TailedTriangle] {
        let xs = runs(&g, 0.3, pattern, 400);
        let (mean, var) = mean_and_var(&xs);
        let se = (var / xs.len() as f64).sqrt();
        let z = (mean - truth.x[pattern]).abs() / se;
        assert!(z < 4.0, "{pattern:?}: mean {mean} truth {} z {z}", truth.x[pattern]);
    }
}

#[test]
fn spread_shrinks_as_probability_grows() {
    let g = erdos_renyi(40, 0.2, 12);
    let spreads: Vec<f64> = [0.1, 0.3, 0.6]
        .iter()
        .map(|&p| mean_and_var(&runs(&g, p, Graphlet::FourPath, 300)).1)
        .collect();
    assert!(spreads[0] > spreads[1] && spreads[1] > spreads[2], "{spreads:?}");
}

#[test]
fn reported_variance_tracks_empirical_variance() {
    let g = erdos_renyi(40, 0.2, 13);
    let design = |s| SampleDesign::size(g.m() / 4, s);
    let est: Vec<_> = (0..400)
        .map(|s| estimate(&g, &design(s), EngineConfig::new(1)).unwrap())
        .collect();
    let xs: Vec<f64> = est.iter().map(|e| e.x[Graphlet::TwoStar]).collect();
    let (_, empirical) = mean_and_var(&xs);
    let reported = est.iter().map(|e| e.var[Graphlet::TwoStar]).sum::<f64>() / est.len() as f64;
    let ratio = reported / empirical;
    assert!((0.7..1.4).contains(&ratio), "ratio {ratio}");
}

#[test]
fn kcore_weighting_follows_core_numbers() {
    // Triangle edges have core 2, the pendant has core 1: 2/7 each vs 1/7.
    let g = Graph::from_edges(4, [(0, 1), (1, 2), (0, 2), (2, 3)]).unwrap();
    let design = SampleDesign::size(100_000, 5)
        .with_weighting(Weighting::KCore)
        .with_replacement(true);
    let edges = sample_edges(&g, &design).unwrap();
    let mut hits = [0usize; 4];
    for e in edges {
        hits[e] += 1;
    }
    let pendant = g.edge_id(2, 3).unwrap();
    for (e, &h) in hits.iter().enumerate() {
        let expected = if e == pendant { 1.0 / 7.0 } else { 2.0 / 7.0 };
        let freq = h as f64 / 100_000.0;
        assert!((freq - expected).abs() < 0.005, "edge {e}: {freq} vs {expected}");
    }
}

#[test]
fn micro_sampling_is_unbiased_per_edge() {
    let g = erdos_renyi(60, 0.3, 3);
    let e = (0..g.m()).max_by_key(|&e| g.edge_hardness(e)).unwrap();
    let exact = micro_exact(&g, e).unwrap();
    for pattern in [Graphlet::FourClique, Graphlet::FourCycle, Graphlet::ChordalCycle] {
        let xs: Vec<f64> = (0..400)
            .map(|s| micro_counts(&g, e, 0.3, s).unwrap().x[pattern])
            .collect();
        let (mean, var) = mean_and_var(&xs);
        let se = (var / xs.len() as f64).sqrt().max(1e-9);
        assert!(
            (mean - exact.x[pattern]).abs() / se < 4.0,
            "{pattern:?}: mean {mean} exact {}",
            exact.x[pattern]
        );
    }
    assert_eq!(
        micro_exact(&g, e).unwrap().x,
        graphlets::micro::micro_counts_with(&g, e, &MicroConfig::exact()).unwrap().x
    );
}

#[test]
fn exhaustive_extremal_finds_the_clique() {
    let g = graphlets::generate::disjoint_union(&complete(5), &triangle_plus_isolated());
    let r = max_graphlet_estimate(&g, Graphlet::FourClique, &SampleDesign::exhaustive(), 2).unwrap();
    assert_eq!(r.z, 3.0);
    assert_eq!(r.evaluated, g.m());
}

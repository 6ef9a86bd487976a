//! Distributional tests of the samplers against the census.

use twoforest::census::{enumerate, random_corpus, to_f64};
use twoforest::sampler::{
    self, map_forests, SampleStatistic, SamplerConfig, SamplingMode, WilsonSampler,
};
use twoforest::{ForestModel, WeightedGraph};

fn forest_chi_square(g: &WeightedGraph, samples: usize, seed: u64, workers: usize) -> f64 {
    let census = enumerate(g).unwrap();
    let forests: Vec<_> = census.two_forests.iter().map(|f| f.forest.edges.clone()).collect();
    let k2 = to_f64(&census.kappa2);
    let probs: Vec<f64> = census.two_forests.iter().map(|f| to_f64(&f.weight) / k2).collect();
    let cfg = SamplerConfig::new(samples, seed).workers(workers);
    sampler::chi_square(&sampler::forest_histogram(g, &forests, &cfg).unwrap(), &probs)
        .unwrap()
        .p_value
}

#[test]
fn forests_follow_weights_on_random_graphs() {
    for (i, g) in random_corpus(6, 5, 7, 99).iter().enumerate() {
        if g.vertex_count() < 3 {
            continue;
        }
        let p = forest_chi_square(g, 20_000, i as u64, 2);
        assert!(p > 1e-4, "graph {i}: p = {p}");
    }
}

#[test]
fn trees_follow_weights() {
    let g = WeightedGraph::from_labeled(
        &[("a", "b", 2.0), ("b", "c", 0.5), ("c", "a", 1.0), ("c", "d", 1.0), ("d", "a", 2.0)],
        "a",
    )
    .unwrap();
    let census = enumerate(&g).unwrap();
    let trees: Vec<_> = census.trees.iter().map(|t| t.tree.edges.clone()).collect();
    let k = to_f64(&census.kappa);
    let probs: Vec<f64> = census.trees.iter().map(|t| to_f64(&t.weight) / k).collect();
    let t = sampler::chi_square(&sampler::tree_histogram(&g, &trees, 20_000, 3).unwrap(), &probs).unwrap();
    assert!(t.passes(1e-4), "{t:?}");
}

#[test]
fn runs_are_reproducible_per_seed_and_workers() {
    let g = random_corpus(1, 6, 9, 5).remove(0);
    let stat = SampleStatistic::SecondMoment;
    let a = sampler::run_batch(&g, &stat, &SamplerConfig::new(3_000, 42).workers(3)).unwrap();
    let b = sampler::run_batch(&g, &stat, &SamplerConfig::new(3_000, 42).workers(3)).unwrap();
    assert_eq!(serde_json::to_string(&a).unwrap(), serde_json::to_string(&b).unwrap());
    let c = sampler::run_batch(&g, &stat, &SamplerConfig::new(3_000, 43).workers(3)).unwrap();
    assert_ne!(a.mean, c.mean);
}

#[test]
fn estimates_cover_exact_values() {
    let g = WeightedGraph::from_labeled(
        &[("a", "b", 0.5), ("b", "c", 2.0), ("c", "d", 1.0), ("d", "a", 1.0), ("a", "c", 2.0), ("d", "e", 0.5), ("e", "b", 1.0)],
        "e",
    )
    .unwrap();
    let model = ForestModel::new(&g).unwrap();
    let m = model.size_moments();
    let cfg = SamplerConfig::new(40_000, 8).workers(2);
    for (stat, exact) in [
        (SampleStatistic::MeanSize, m.mean),
        (SampleStatistic::SecondMoment, m.second_moment),
        (SampleStatistic::BoundarySize, model.expected_boundary()),
        (SampleStatistic::ProbPair { u: 0, v: 2 }, model.prob_pair_in_sigma(0, 2).unwrap()),
    ] {
        for mode in [SamplingMode::Rejection, SamplingMode::Importance] {
            let b = sampler::run_batch(&g, &stat, &cfg.mode(mode)).unwrap();
            assert!(
                (b.mean - exact).abs() < 4.0 * b.stderr,
                "{stat:?} {mode:?}: {} ± {} vs {exact}",
                b.mean,
                b.stderr
            );
        }
    }
}

#[test]
fn acceptance_rate_matches_proposal_expectation() {
    // unit conductances: acceptance = E_proposal[1/|∂F|]
    let g = WeightedGraph::from_labeled(&[("u", "v", 1.0), ("v", "w", 1.0), ("w", "b", 1.0), ("b", "u", 1.0), ("u", "w", 1.0)], "b").unwrap();
    let cfg = SamplerConfig::new(20_000, 1).workers(1);
    let b = sampler::run_batch(&g, &SampleStatistic::MeanSize, &cfg).unwrap();
    assert!(b.acceptance_rate > 0.0 && b.acceptance_rate <= 1.0);
    let draws = map_forests(&g, &cfg, |d| d.boundary_conductance);
    assert!(draws.iter().all(|&c| c >= g.min_conductance()));
}

#[test]
fn wilson_trees_span() {
    let g = random_corpus(1, 6, 9, 12).remove(0);
    let s = WilsonSampler::new(&g);
    let mut rng = sampler::worker_rng(0, 0);
    for _ in 0..100 {
        let t = s.sample_tree(&mut rng).to_spanning_tree();
        assert_eq!(t.edges.len(), g.vertex_count() - 1);
        assert!(matches!(g.classify(&t.edges).unwrap(), twoforest::Subgraph::SpanningTree(_)));
    }
}

//! Exact forest sampling, estimates with standard errors, and a χ² check.
//!
//! cargo run --release --example sampling

use twoforest::census::{enumerate, to_f64};
use twoforest::sampler::{self, SampleStatistic, SamplerConfig, SamplingMode};
use twoforest::{ForestModel, Result, WeightedGraph};

fn main() -> Result<()> {
    let g = WeightedGraph::from_labeled(
        &[("a", "b", 1.0), ("a", "c", 2.0), ("b", "c", 0.5), ("c", "d", 1.0), ("d", "b", 2.0), ("a", "d", 1.0)],
        "d",
    )?;
    let model = ForestModel::new(&g)?;
    let cfg = SamplerConfig::new(40_000, 11).workers(4);

    for spec in ["mean_size", "second_moment", "boundary_size", "prob_pair:0,2"] {
        let stat = SampleStatistic::parse(spec)?;
        let batch = sampler::run_batch(&g, &stat, &cfg)?;
        println!(
            "{spec:>14}: {:.4} ± {:.4}  (acceptance {:.3})",
            batch.mean, batch.stderr, batch.acceptance_rate
        );
    }
    let m = model.size_moments();
    println!("exact: E|Sigma| = {:.4}, E|Sigma|^2 = {:.4}, E|dSigma| = {:.4}, P(a,c) = {:.4}",
        m.mean, m.second_moment, model.expected_boundary(), model.prob_pair_in_sigma(0, 2)?);

    let imp = sampler::run_batch(&g, &SampleStatistic::MeanSize, &cfg.mode(SamplingMode::Importance))?;
    println!("importance-weighted E|Sigma| = {:.4} ± {:.4}", imp.mean, imp.stderr);

    let census = enumerate(&g)?;
    let forests: Vec<_> = census.two_forests.iter().map(|f| f.forest.edges.clone()).collect();
    let k2 = to_f64(&census.kappa2);
    let probs: Vec<f64> = census.two_forests.iter().map(|f| to_f64(&f.weight) / k2).collect();
    let test = sampler::chi_square(&sampler::forest_histogram(&g, &forests, &cfg)?, &probs)?;
    println!(
        "chi-square over {} forests: {:.2} on {} dof, p = {:.3}",
        forests.len(), test.statistic, test.degrees_of_freedom, test.p_value
    );
    Ok(())
}

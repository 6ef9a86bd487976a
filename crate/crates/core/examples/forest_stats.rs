//! Closed-form forest statistics on small graphs.
//!
//! cargo run --example forest_stats

use twoforest::{ForestModel, Result, WeightedGraph};

fn show(name: &str, graph: &WeightedGraph) -> Result<()> {
    let model = ForestModel::new(graph)?;
    let s = model.statistics();
    println!("{name}: |V| = {}, |E| = {}", s.vertex_count, s.edge_count);
    println!("  kappa        = {:.6}", s.log_kappa.exp());
    println!("  kappa2/kappa = {:.6}", s.ratio_k2_k);
    println!("  E|dSigma|    = {:.6}", s.ell_star);
    println!("  E|Sigma|     = {:.6}", s.mean_size);
    println!("  E|Sigma|^2   = {:.6}", s.second_moment);
    for row in model.vertex_table() {
        if let Some(pinned) = row.pinned_mean_size {
            println!(
                "  {:>3}: P(in Sigma) = {:.6}, E|Sigma| pinned here = {:.6}",
                row.label, row.prob_in_sigma, pinned
            );
        }
    }
    for row in model.edge_table() {
        println!(
            "  {}-{}: P(tree) = {:.6}, P(separates) = {:.6}",
            row.u, row.v, row.tree_probability, row.prob_separates
        );
    }
    Ok(())
}

fn main() -> Result<()> {
    let k3 = WeightedGraph::from_labeled(&[("u", "v", 1.0), ("v", "b", 1.0), ("b", "u", 1.0)], "b")?;
    show("K3", &k3)?;
    let c4 = WeightedGraph::from_labeled(
        &[("v1", "v2", 1.0), ("v2", "v3", 1.0), ("v3", "b", 1.0), ("b", "v1", 1.0)],
        "b",
    )?;
    show("C4", &c4)?;
    // ratio = 1/c1 + 1/c2 on a weighted path
    let path = WeightedGraph::from_labeled(&[("u", "v", 0.5), ("v", "b", 2.0)], "b")?;
    show("path(1/2, 2)", &path)?;
    Ok(())
}

//! Closed forms against exact enumeration on a random corpus.
//!
//! cargo run --release --example oracle_census -- [graphs] [seed]

use twoforest::census::{enumerate, random_corpus};
use twoforest::cli::verification_rows;
use twoforest::Result;

fn main() -> Result<()> {
    let mut args = std::env::args().skip(1);
    let count = args.next().and_then(|a| a.parse().ok()).unwrap_or(50);
    let seed = args.next().and_then(|a| a.parse().ok()).unwrap_or(1);
    let corpus = random_corpus(count, 6, 9, seed);
    let (mut checks, mut worst) = (0, 0.0f64);
    for g in &corpus {
        for row in verification_rows(g, 1e-9)? {
            checks += 1;
            if row.oracle != 0.0 {
                worst = worst.max(row.abs_error / row.oracle.abs());
            }
            assert!(row.pass, "{} failed: {} vs {}", row.quantity, row.formula, row.oracle);
        }
    }
    println!("{} graphs, {checks} checks, worst relative error {worst:.2e}", corpus.len());

    let census = enumerate(&corpus[0])?;
    println!(
        "first graph: {} trees (kappa = {}), {} two-forests (kappa2 = {})",
        census.trees.len(),
        census.kappa,
        census.two_forests.len(),
        census.kappa2
    );
    Ok(())
}

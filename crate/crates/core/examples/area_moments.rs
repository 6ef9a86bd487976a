//! Monte Carlo area moments E(A^k)/n^{2k−2} of the cycle of a uniform
//! spanning unicycle on n×n grids.
//!
//! cargo run --release --example area_moments -- [samples]

use twoforest::lattice::area_moment_estimate;
use twoforest::sampler::SamplerConfig;
use twoforest::Result;

fn main() -> Result<()> {
    let samples = std::env::args().nth(1).and_then(|a| a.parse().ok()).unwrap_or(20_000);
    let workers = std::thread::available_parallelism().map_or(1, |n| n.get());
    for k in [1, 2, 3] {
        for n in [8, 16, 32] {
            let e = area_moment_estimate(n, k, &SamplerConfig::new(samples, 17).workers(workers))?;
            println!("k = {k}, n = {n:>2}: {:.5} ± {:.5}", e.value, e.error);
        }
    }
    Ok(())
}

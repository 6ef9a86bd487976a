//! Finite-mesh forest statistics on the unit square against their
//! continuum predictions.
//!
//! cargo run --release --example green_scaling

use std::f64::consts::PI;

use twoforest::lattice::{c_of_d, green_scaling_with, unit_square_box};
use twoforest::{ForestModel, Result};

fn main() -> Result<()> {
    let c = c_of_d(&[1.0, 1.0], 201)?.value;
    println!("{:>4} {:>10} {:>10} {:>8} {:>14} {:>14}", "n", "P(z,z')", "8g/n^2", "ratio", "E|S|^2/(Cn^2)", "E|S|/(4/pi ln n)");
    for n in [8, 16, 24, 32, 48] {
        let model = ForestModel::new(&unit_square_box(n)?.graph)?;
        let g = green_scaling_with(&model, n, (0.25, 0.5), (0.75, 0.5))?;
        let m = model.size_moments();
        let nf = n as f64;
        println!(
            "{n:>4} {:>10.3e} {:>10.3e} {:>8.4} {:>14.4} {:>14.4}",
            g.lhs,
            g.rhs,
            g.ratio,
            m.second_moment / (c * nf * nf),
            m.mean / (4.0 / PI * nf.ln())
        );
    }
    Ok(())
}

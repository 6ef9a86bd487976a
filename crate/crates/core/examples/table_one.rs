//! Rows of the lattice constants table for the square, hexagonal and
//! triangular lattices, with finite-size estimates next to the limits.
//!
//! cargo run --release --example table_one

use twoforest::lattice::{
    area_moment_estimate, build_lattice, c_of_d, ell_star_finite, ell_star_periodic, LatticeFamily, LatticeSpec,
};
use twoforest::sampler::SamplerConfig;
use twoforest::{ForestModel, Result};

fn main() -> Result<()> {
    println!("ell* (limit, then finite boxes n = 2, 4, 8):");
    for fam in [LatticeFamily::Square, LatticeFamily::Hexagonal, LatticeFamily::Triangular] {
        let mut row = format!("  {fam:>10}: {:>3}", ell_star_periodic(fam)?.to_string());
        for n in [2, 4, 8] {
            let l = build_lattice(&LatticeSpec::new(fam, n))?;
            row += &format!("  {:.4}", ell_star_finite(&l.graph)?);
        }
        println!("{row}");
    }

    // E|Σ|² and E(A²) relative to C(D) n², square lattice. The dual of the
    // free n×n grid is the wired box of side n−1, so the same model serves
    // both.
    let c = c_of_d(&[1.0, 1.0], 201)?.value;
    println!("square lattice, E|Sigma|^2/(C n^2) on wired boxes:");
    for n in [8, 16, 32] {
        let l = twoforest::lattice::unit_square_box(n)?;
        let m = ForestModel::new(&l.graph)?.size_moments();
        println!("  n = {n:>3}: {:.4}", m.second_moment / (c * (n * n) as f64));
    }
    println!("square lattice, E(A^2)/(C n^2) by sampling unicycles of the free grid:");
    for n in [8, 16] {
        let e = area_moment_estimate(n, 2, &SamplerConfig::new(20_000, 3).workers(4))?;
        println!("  n = {n:>3}: {:.4} ± {:.4}", e.value / c, e.error / c);
    }
    Ok(())
}

//! Lattice constants: boundary size ℓ*, mean resistance R*, and C(D).
//!
//! cargo run --release --example lattice_constants

use twoforest::lattice::{
    build_lattice, c_of_d, ell_star_finite, ell_star_periodic, exit_time_exact, r_n_eigensum, r_star,
    wired_box_mean_trace, LatticeFamily, LatticeSpec,
};
use twoforest::Result;

fn main() -> Result<()> {
    println!("periodic ell*:");
    for fam in [LatticeFamily::Square, LatticeFamily::Hexagonal, LatticeFamily::Triangular, LatticeFamily::Cubic(3)] {
        println!("  {fam:>10}: {}", ell_star_periodic(fam)?);
    }
    println!("finite wired boxes (square):");
    for n in [4, 8, 16] {
        let spec = LatticeSpec::new(LatticeFamily::Square, n);
        let l = build_lattice(&spec)?;
        println!("  side {:>3}: {:.4}", spec.side(), ell_star_finite(&l.graph)?);
    }

    for d in [3, 4] {
        let r = r_star(d)?;
        println!("R*(d={d}) = {:.7} ± {:.1e}", r.value, r.error);
    }
    for n in [16, 32, 64] {
        println!("  R_n eigensum, d=3, n={n}: {:.6}", r_n_eigensum(3, n)?);
    }
    for side in [8, 16, 31] {
        println!("  wired box mean trace, d=3, side {side}: {:.6}", wired_box_mean_trace(3, side)?);
    }

    for sides in [vec![1.0, 1.0], vec![2.0, 1.0], vec![1.0, 1.0, 1.0]] {
        let c = c_of_d(&sides, 201)?;
        println!("C({sides:?}) = {:.7} ± {:.1e}", c.value, c.error);
    }
    for n in [50, 100, 200] {
        println!("  mean exit steps / n^2, n={n}: {:.6}", exit_time_exact(n)?);
    }
    Ok(())
}

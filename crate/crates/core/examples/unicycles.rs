//! Planar duality: spanning unicycles of a grid as two-forests of its dual.
//!
//! cargo run --release --example unicycles

use twoforest::census::to_f64;
use twoforest::lattice::{free_patch, LatticeFamily};
use twoforest::planar::{build_dual, enumerate_unicycles, unicycle_from_forest, UnicycleModel};
use twoforest::sampler::{worker_rng, WilsonSampler};
use twoforest::Result;

fn main() -> Result<()> {
    let map = free_patch(LatticeFamily::Square, 3)?;
    println!(
        "3x3 grid: {} vertices, {} edges, {} faces (outer = {})",
        map.graph().vertex_count(),
        map.graph().edge_count(),
        map.face_count(),
        map.outer_face()
    );
    let model = UnicycleModel::new(&map)?;
    let s = model.statistics()?;
    let census = enumerate_unicycles(&map)?;
    println!("lambda = {:.6} (enumerated {})", s.log_lambda.exp(), census.lambda);
    println!("E(A) = {:.6}, E(A^2) = {:.6}", s.mean_area, s.second_moment_area);
    println!("enumerated: E(A) = {:.6}, E(A^2) = {:.6}", to_f64(&census.area_moment(1)), to_f64(&census.area_moment(2)));
    for (e, (p, q)) in s.cycle_edge_probs.iter().zip(&s.cycle_edge_probs_primal).enumerate() {
        println!("  edge {e:>2}: P(on cycle) dual {p:.6}, primal {q:.6}");
    }

    // sample dual forests and map them to unicycles
    let dual = build_dual(&map)?;
    let sampler = WilsonSampler::new(&dual.graph);
    let mut rng = worker_rng(5, 0);
    let draws = 20_000;
    let mut enclosed = vec![0usize; map.face_count()];
    for _ in 0..draws {
        let f = sampler.sample_forest(&mut rng).to_two_forest(&dual.graph);
        let u = unicycle_from_forest(&map, &dual, &f)?;
        for &face in &u.enclosed {
            enclosed[face] += 1;
        }
    }
    for (face, &k) in enclosed.iter().enumerate() {
        println!(
            "  face {face}: enclosed {:.4} sampled, {:.4} exact",
            k as f64 / draws as f64,
            s.face_enclosure_probs[face]
        );
    }
    Ok(())
}

//! Duality between two-forests of the dual and unicycles of the primal.

use twoforest::census::{enumerate, to_f64};
use twoforest::lattice::{free_patch, LatticeFamily};
use twoforest::planar::{build_dual, enumerate_unicycles, unicycle_from_forest, UnicycleModel};

#[test]
fn dual_forests_are_in_bijection_with_unicycles() {
    for fam in [LatticeFamily::Square, LatticeFamily::Triangular] {
        let map = free_patch(fam, 3).unwrap();
        let dual = build_dual(&map).unwrap();
        let forests = enumerate(&dual.graph).unwrap();
        let cycles = enumerate_unicycles(&map).unwrap();
        assert_eq!(forests.two_forests.len(), cycles.unicycles.len(), "{fam}");
        let mut seen = std::collections::HashSet::new();
        for f in &forests.two_forests {
            let u = unicycle_from_forest(&map, &dual, &f.forest).unwrap();
            assert_eq!(u.area(), f.forest.size());
            assert!(seen.insert(u.edges.clone()));
        }
    }
}

#[test]
fn model_matches_unicycle_enumeration() {
    for (fam, m) in [(LatticeFamily::Square, 3), (LatticeFamily::Square, 4), (LatticeFamily::Triangular, 3), (LatticeFamily::Hexagonal, 3)] {
        let map = free_patch(fam, m).unwrap();
        assert!(map.graph().edge_count() <= 24);
        let model = UnicycleModel::new(&map).unwrap();
        let s = model.statistics().unwrap();
        let census = enumerate_unicycles(&map).unwrap();
        let close = |a: f64, b: f64| (a - b).abs() <= 1e-9 * b.abs().max(1e-12);
        assert!(close(s.log_lambda.exp(), to_f64(&census.lambda)), "{fam} {m}");
        assert!(close(s.mean_area, to_f64(&census.area_moment(1))));
        assert!(close(s.second_moment_area, to_f64(&census.area_moment(2))));
        for (p, q) in s.cycle_edge_probs.iter().zip(census.cycle_edge_probs()) {
            assert!(close(*p, to_f64(&q)));
        }
        for (p, q) in s.face_enclosure_probs.iter().zip(census.face_enclosure_probs()) {
            assert!(close(*p, to_f64(&q)));
        }
    }
}

#[test]
fn double_dual_is_the_primal() {
    for fam in [LatticeFamily::Square, LatticeFamily::Triangular] {
        let map = free_patch(fam, 3).unwrap();
        map.check_double_dual().unwrap();
        let g = map.graph();
        assert_eq!(g.vertex_count() + map.face_count(), g.edge_count() + 2);
    }
}

#[test]
fn bridges_become_dropped_loops() {
    let map = free_patch(LatticeFamily::Hexagonal, 3).unwrap();
    let model = UnicycleModel::new(&map).unwrap();
    let dropped = &model.dual().dropped_loops;
    assert!(!dropped.is_empty());
    let s = model.statistics().unwrap();
    for &e in dropped {
        assert_eq!(s.cycle_edge_probs[e], 0.0);
    }
}

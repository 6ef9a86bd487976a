//! Planar maps (rotation systems), dual graphs and the correspondence between
//! two-component spanning forests of the dual and spanning unicycles of the
//! primal.
//!
//! Deleting the duals of a 2SF's edges from a plane graph leaves a connected
//! spanning subgraph with exactly one cycle, and the faces enclosed by that
//! cycle are precisely the floating component of the dual forest when the
//! outer face is the dual boundary vertex. Unicycle weights are
//! `w(U) = ∏_{e∈U} c(e)` and dual conductances are `1/c`, so
//! `w(U) = w*(F*) · ∏_e c(e)`.

use std::collections::VecDeque;

use num_rational::BigRational;
use num_traits::{One, Zero};
use serde::Serialize;

use crate::census::RollbackSets;
use crate::error::{Error, Result};
use crate::exact::rational;
use crate::graph::{Dart, Edge, EdgeId, TwoForest, VertexId, WeightedGraph};
use crate::green::GreenOracle;
use crate::stats::ForestModel;

/// A connected plane graph given by a rotation system, with faces traced
/// and one face marked as outer.
#[derive(Clone, Debug)]
pub struct PlanarMap {
    graph: WeightedGraph,
    rotation: Vec<Vec<Dart>>,
    /// dart index -> next dart counterclockwise around its tail
    next: Vec<usize>,
    face_of: Vec<usize>,
    faces: Vec<Vec<Dart>>,
    outer: usize,
}

impl PlanarMap {
    /// `rotation[v]` lists the darts leaving `v` in cyclic order. The face to
    /// the left of `outer` becomes the outer face.
    pub fn new(graph: WeightedGraph, rotation: Vec<Vec<Dart>>, outer: Dart) -> Result<Self> {
        let n = graph.vertex_count();
        let darts = 2 * graph.edge_count();
        if rotation.len() != n {
            return Err(Error::NonPlanarMap(format!(
                "rotation has {} vertices, graph has {n}",
                rotation.len()
            )));
        }
        let mut next = vec![usize::MAX; darts];
        for (v, around) in rotation.iter().enumerate() {
            for (i, d) in around.iter().enumerate() {
                if d.edge >= graph.edge_count() || d.tail(&graph) != v {
                    return Err(Error::NonPlanarMap(format!(
                        "dart {} does not leave vertex {v}",
                        d.index()
                    )));
                }
                if next[d.index()] != usize::MAX {
                    return Err(Error::NonPlanarMap(format!("dart {} listed twice", d.index())));
                }
                next[d.index()] = around[(i + 1) % around.len()].index();
            }
        }
        if let Some(missing) = next.iter().position(|&x| x == usize::MAX) {
            return Err(Error::NonPlanarMap(format!("dart {missing} missing from rotation")));
        }

        let mut face_of = vec![usize::MAX; darts];
        let mut faces = Vec::new();
        for start in 0..darts {
            if face_of[start] != usize::MAX {
                continue;
            }
            let f = faces.len();
            let mut walk = Vec::new();
            let mut d = start;
            while face_of[d] == usize::MAX {
                face_of[d] = f;
                walk.push(Dart::from_index(d));
                d = next[Dart::from_index(d).twin().index()];
            }
            faces.push(walk);
        }

        let euler = n as i64 - graph.edge_count() as i64 + faces.len() as i64;
        if euler != 2 {
            return Err(Error::NonPlanarMap(format!(
                "Euler characteristic V - E + F = {euler}, expected 2"
            )));
        }
        if outer.edge >= graph.edge_count() {
            return Err(Error::UnknownEdge(outer.edge));
        }
        let outer = face_of[outer.index()];
        Ok(PlanarMap {
            graph,
            rotation,
            next,
            face_of,
            faces,
            outer,
        })
    }

    /// Rotation from straight-line coordinates; the outer face is the one
    /// with the largest absolute enclosed area.
    pub fn from_positions(graph: WeightedGraph, positions: &[(f64, f64)]) -> Result<Self> {
        let angle = |d: Dart| {
            let (x0, y0) = positions[d.tail(&graph)];
            let (x1, y1) = positions[d.head(&graph)];
            (y1 - y0).atan2(x1 - x0)
        };
        let rotation = rotation_by_angle(&graph, angle);
        let map = PlanarMap::new(graph, rotation, Dart::forward(0))?;
        let area = |f: &Vec<Dart>| {
            f.iter()
                .map(|d| {
                    let (x0, y0) = positions[d.tail(&map.graph)];
                    let (x1, y1) = positions[d.head(&map.graph)];
                    x0 * y1 - x1 * y0
                })
                .sum::<f64>()
                .abs()
        };
        let outer = (0..map.faces.len())
            .max_by(|&a, &b| area(&map.faces[a]).total_cmp(&area(&map.faces[b])))
            .unwrap();
        let dart = map.faces[outer][0];
        map.with_outer(dart)
    }

    pub fn with_outer(mut self, dart: Dart) -> Result<Self> {
        if dart.edge >= self.graph.edge_count() {
            return Err(Error::UnknownEdge(dart.edge));
        }
        self.outer = self.face_of[dart.index()];
        Ok(self)
    }

    pub fn graph(&self) -> &WeightedGraph {
        &self.graph
    }

    pub fn rotation(&self) -> &[Vec<Dart>] {
        &self.rotation
    }

    pub fn faces(&self) -> &[Vec<Dart>] {
        &self.faces
    }

    pub fn face_count(&self) -> usize {
        self.faces.len()
    }

    pub fn outer_face(&self) -> usize {
        self.outer
    }

    /// The face to the left of `dart`.
    pub fn face_of(&self, dart: Dart) -> usize {
        self.face_of[dart.index()]
    }

    /// Next dart counterclockwise around `dart`'s tail.
    pub fn next_around(&self, dart: Dart) -> Dart {
        Dart::from_index(self.next[dart.index()])
    }

    /// The rotation system of the dual map. Fails if the primal has bridges
    /// (their duals would be loops).
    pub fn dual_map(&self) -> Result<PlanarMap> {
        let dual = build_dual(self)?;
        if !dual.dropped_loops.is_empty() {
            return Err(Error::NonPlanarMap(
                "dual map undefined: primal has bridges".into(),
            ));
        }
        let rotation = self
            .faces
            .iter()
            .map(|walk| walk.iter().map(|&d| dual.dual_dart(d)).collect())
            .collect();
        let b = self.graph.boundary();
        let map = PlanarMap::new(dual.graph.clone(), rotation, Dart::forward(0))?;
        // A dual-of-dual face is the orbit of the dual darts leaving a
        // primal vertex.
        let around_b = self.rotation[b][0];
        let outer = dual.dual_dart(around_b);
        map.with_outer(outer)
    }

    /// Checks that the dual of the dual is the original weighted graph, with
    /// faces of the double dual matched to primal vertices.
    pub fn check_double_dual(&self) -> Result<()> {
        let dual = build_dual(self)?;
        let dd_map = self.dual_map()?;
        let dd = build_dual(&dd_map)?;
        let fail = |m: String| Err(Error::BijectionViolation(m));
        if dd.graph.vertex_count() != self.graph.vertex_count()
            || dd.graph.edge_count() != self.graph.edge_count()
        {
            return fail("double dual has different size".into());
        }
        let mut vertex_of_face = vec![usize::MAX; dd.graph.vertex_count()];
        for v in 0..self.graph.vertex_count() {
            for &d in &self.rotation[v] {
                let f = dd_map.face_of(dual.dual_dart(d));
                if vertex_of_face[f] != usize::MAX && vertex_of_face[f] != v {
                    return fail(format!("face {f} maps to two vertices"));
                }
                vertex_of_face[f] = v;
            }
        }
        for (e, edge) in self.graph.edges().iter().enumerate() {
            let e1 = dual.primal_to_dual[e].expect("no loops");
            let e2 = dd.primal_to_dual[e1].expect("no loops");
            let back = &dd.graph.edges()[e2];
            let ends = [vertex_of_face[back.u], vertex_of_face[back.v]];
            if !(ends == [edge.u, edge.v] || ends == [edge.v, edge.u]) {
                return fail(format!("edge {e} lands on {ends:?}"));
            }
            if (back.conductance - edge.conductance).abs() > 1e-12 * edge.conductance {
                return fail(format!("edge {e} changed conductance"));
            }
        }
        if vertex_of_face[dd.graph.boundary()] != self.graph.boundary() {
            return fail("boundary not preserved".into());
        }
        Ok(())
    }

    /// Faces enclosed by the cycle `on_cycle`: those not reachable from the
    /// outer face without crossing a cycle edge.
    pub fn enclosed_faces(&self, on_cycle: &[bool]) -> Vec<bool> {
        let mut reached = vec![false; self.faces.len()];
        reached[self.outer] = true;
        let mut queue = VecDeque::from([self.outer]);
        while let Some(f) = queue.pop_front() {
            for d in &self.faces[f] {
                if on_cycle[d.edge] {
                    continue;
                }
                let g = self.face_of(d.twin());
                if !reached[g] {
                    reached[g] = true;
                    queue.push_back(g);
                }
            }
        }
        reached.into_iter().map(|r| !r).collect()
    }
}

/// Sorts each vertex's darts by increasing `angle`.
pub fn rotation_by_angle(graph: &WeightedGraph, angle: impl Fn(Dart) -> f64) -> Vec<Vec<Dart>> {
    (0..graph.vertex_count())
        .map(|v| {
            let mut around: Vec<(f64, Dart)> = graph
                .neighbors(v)
                .iter()
                .map(|&(_, e)| {
                    let d = if graph.edges()[e].u == v {
                        Dart::forward(e)
                    } else {
                        Dart::backward(e)
                    };
                    (angle(d), d)
                })
                .collect();
            around.sort_by(|a, b| a.0.total_cmp(&b.0).then(a.1.index().cmp(&b.1.index())));
            around.into_iter().map(|(_, d)| d).collect()
        })
        .collect()
}

/// The dual graph: one vertex per face, boundary at the outer face, and
/// `c(e*) = 1/c(e)`. Duals of bridges are loops and are left out.
#[derive(Clone, Debug)]
pub struct DualGraph {
    pub graph: WeightedGraph,
    pub primal_to_dual: Vec<Option<EdgeId>>,
    pub dual_to_primal: Vec<EdgeId>,
    /// Primal bridges, whose duals would be loops.
    pub dropped_loops: Vec<EdgeId>,
}

impl DualGraph {
    /// The dual dart crossing `d` from its left face to its right face.
    pub fn dual_dart(&self, d: Dart) -> Dart {
        let e = self.primal_to_dual[d.edge].expect("bridge has no dual dart");
        if d.reversed {
            Dart::backward(e)
        } else {
            Dart::forward(e)
        }
    }
}

/// Builds the dual of a planar map.
pub fn build_dual(map: &PlanarMap) -> Result<DualGraph> {
    let mut edges = Vec::new();
    let mut primal_to_dual = vec![None; map.graph.edge_count()];
    let mut dual_to_primal = Vec::new();
    let mut dropped_loops = Vec::new();
    for (e, edge) in map.graph.edges().iter().enumerate() {
        let left = map.face_of(Dart::forward(e));
        let right = map.face_of(Dart::backward(e));
        if left == right {
            dropped_loops.push(e);
            continue;
        }
        primal_to_dual[e] = Some(edges.len());
        dual_to_primal.push(e);
        edges.push(Edge::new(left, right, 1.0 / edge.conductance));
    }
    if edges.is_empty() {
        return Err(Error::NonPlanarMap("dual has no edges (primal is a tree)".into()));
    }
    let graph = WeightedGraph::new(map.face_count(), edges, map.outer_face())?;
    Ok(DualGraph {
        graph,
        primal_to_dual,
        dual_to_primal,
        dropped_loops,
    })
}

/// A spanning unicycle of the primal.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct Unicycle {
    pub edges: Vec<EdgeId>,
    pub cycle: Vec<EdgeId>,
    /// Inner faces surrounded by the cycle.
    pub enclosed: Vec<usize>,
}

impl Unicycle {
    pub fn area(&self) -> usize {
        self.enclosed.len()
    }
}

/// Edges of the unique cycle of a connected unicyclic edge set, found by
/// repeatedly peeling leaves.
fn cycle_edges(graph: &WeightedGraph, edges: &[EdgeId]) -> Vec<bool> {
    let n = graph.vertex_count();
    let mut in_set = vec![false; graph.edge_count()];
    let mut degree = vec![0usize; n];
    for &e in edges {
        in_set[e] = true;
        degree[graph.edges()[e].u] += 1;
        degree[graph.edges()[e].v] += 1;
    }
    let mut stack: Vec<VertexId> = (0..n).filter(|&v| degree[v] == 1).collect();
    while let Some(v) = stack.pop() {
        for &(w, e) in graph.neighbors(v) {
            if in_set[e] {
                in_set[e] = false;
                degree[v] -= 1;
                degree[w] -= 1;
                if degree[w] == 1 {
                    stack.push(w);
                }
            }
        }
    }
    in_set
}

/// Builds a unicycle record from an edge set, verifying it is connected,
/// spanning and has exactly `|V|` edges.
pub fn unicycle_from_edges(map: &PlanarMap, mut edges: Vec<EdgeId>) -> Result<Unicycle> {
    let g = &map.graph;
    edges.sort_unstable();
    if edges.len() != g.vertex_count() {
        return Err(Error::BijectionViolation(format!(
            "{} edges on {} vertices is not a unicycle",
            edges.len(),
            g.vertex_count()
        )));
    }
    let mut sets = crate::graph::DisjointSets::new(g.vertex_count());
    for &e in &edges {
        sets.union(g.edges()[e].u, g.edges()[e].v);
    }
    if sets.count() != 1 {
        return Err(Error::BijectionViolation("edge set is not connected".into()));
    }
    let on_cycle = cycle_edges(g, &edges);
    let enclosed = map.enclosed_faces(&on_cycle);
    Ok(Unicycle {
        cycle: (0..g.edge_count()).filter(|&e| on_cycle[e]).collect(),
        enclosed: (0..map.face_count()).filter(|&f| enclosed[f]).collect(),
        edges,
    })
}

/// Maps a 2SF of the dual to the primal edges whose duals it omits.
pub fn unicycle_from_forest(map: &PlanarMap, dual: &DualGraph, forest: &TwoForest) -> Result<Unicycle> {
    let mut in_forest = vec![false; dual.graph.edge_count()];
    for &e in &forest.edges {
        *in_forest
            .get_mut(e)
            .ok_or(Error::UnknownEdge(e))? = true;
    }
    let edges = (0..map.graph.edge_count())
        .filter(|&e| dual.primal_to_dual[e].is_none_or(|d| !in_forest[d]))
        .collect();
    let u = unicycle_from_edges(map, edges)?;
    if u.enclosed != forest.floating {
        return Err(Error::BijectionViolation(
            "enclosed faces differ from the floating component".into(),
        ));
    }
    Ok(u)
}

/// Closed-form unicycle statistics via the dual.
#[derive(Clone, Debug, Serialize)]
pub struct UnicycleStatistics {
    pub log_lambda: f64,
    pub log_kappa: f64,
    /// `P(e on the cycle)` from the dual forest measure.
    pub cycle_edge_probs: Vec<f64>,
    /// The same probabilities from primal transfer currents.
    pub cycle_edge_probs_primal: Vec<f64>,
    /// `P(f enclosed)`; zero for the outer face.
    pub face_enclosure_probs: Vec<f64>,
    pub mean_area: f64,
    pub second_moment_area: f64,
}

/// Primal and dual solvers for one planar map.
pub struct UnicycleModel {
    map: PlanarMap,
    dual: DualGraph,
    primal: GreenOracle,
    dual_model: ForestModel,
}

impl UnicycleModel {
    pub fn new(map: &PlanarMap) -> Result<Self> {
        let dual = build_dual(map)?;
        let dual_model = ForestModel::new(&dual.graph)?;
        let primal = GreenOracle::new(map.graph())?;
        Ok(UnicycleModel {
            map: map.clone(),
            dual,
            primal,
            dual_model,
        })
    }

    pub fn map(&self) -> &PlanarMap {
        &self.map
    }

    pub fn dual(&self) -> &DualGraph {
        &self.dual
    }

    pub fn dual_model(&self) -> &ForestModel {
        &self.dual_model
    }

    /// `log λ = log κ₂(G*) + Σ_e log c(e)`.
    pub fn log_lambda(&self) -> f64 {
        self.dual_model.log_kappa2() + self.map.graph().log_conductance_product()
    }

    /// Dual route: `e` is on the cycle iff `e*` separates the dual forest.
    pub fn prob_cycle_edge(&self, e: EdgeId) -> Result<f64> {
        self.map.graph().edge(e)?;
        match self.dual.primal_to_dual[e] {
            Some(d) => self.dual_model.prob_edge_separates(d),
            None => Ok(0.0),
        }
    }

    /// Primal route: `c(e)·κ(G)·(1 − T_G(e,e))/λ(G)`, since unicycles whose
    /// cycle uses `e` are exactly trees avoiding `e` plus `e`.
    pub fn prob_cycle_edge_primal(&self, e: EdgeId) -> Result<f64> {
        let c = self.map.graph().edge(e)?.conductance;
        let t = self.primal.tree_edge_probability(e)?;
        Ok(c * (1.0 - t) * (self.primal.log_kappa() - self.log_lambda()).exp())
    }

    pub fn prob_enclosed(&self, f: usize) -> Result<f64> {
        if f == self.map.outer_face() {
            self.dual_model.graph().check_vertex(f)?;
            return Ok(0.0);
        }
        self.dual_model.prob_in_sigma(f)
    }

    pub fn prob_pair_enclosed(&self, f: usize, g: usize) -> Result<f64> {
        let outer = self.map.outer_face();
        if f == outer || g == outer {
            self.dual_model.graph().check_vertex(f)?;
            self.dual_model.graph().check_vertex(g)?;
            return Ok(0.0);
        }
        self.dual_model.prob_pair_in_sigma(f, g)
    }

    pub fn statistics(&self) -> Result<UnicycleStatistics> {
        let m = self.map.graph().edge_count();
        let moments = self.dual_model.size_moments();
        Ok(UnicycleStatistics {
            log_lambda: self.log_lambda(),
            log_kappa: self.primal.log_kappa(),
            cycle_edge_probs: (0..m).map(|e| self.prob_cycle_edge(e)).collect::<Result<_>>()?,
            cycle_edge_probs_primal: (0..m)
                .map(|e| self.prob_cycle_edge_primal(e))
                .collect::<Result<_>>()?,
            face_enclosure_probs: (0..self.map.face_count())
                .map(|f| self.prob_enclosed(f))
                .collect::<Result<_>>()?,
            mean_area: moments.mean,
            second_moment_area: moments.second_moment,
        })
    }
}

/// Shorthand for `UnicycleModel::new(map)?.statistics()`.
pub fn unicycle_stats(map: &PlanarMap) -> Result<UnicycleStatistics> {
    UnicycleModel::new(map)?.statistics()
}

/// Every spanning unicycle with its exact weight.
#[derive(Clone, Debug)]
pub struct UnicycleCensus {
    pub unicycles: Vec<(Unicycle, BigRational)>,
    pub lambda: BigRational,
    face_count: usize,
    edge_count: usize,
}

impl UnicycleCensus {
    fn expect(&self, f: impl Fn(&Unicycle) -> BigRational) -> BigRational {
        self.unicycles
            .iter()
            .fold(BigRational::zero(), |acc, (u, w)| acc + f(u) * w)
            / &self.lambda
    }

    pub fn cycle_edge_probs(&self) -> Vec<BigRational> {
        (0..self.edge_count)
            .map(|e| self.expect(|u| indicator(u.cycle.contains(&e))))
            .collect()
    }

    pub fn face_enclosure_probs(&self) -> Vec<BigRational> {
        (0..self.face_count)
            .map(|f| self.expect(|u| indicator(u.enclosed.contains(&f))))
            .collect()
    }

    /// `E(A^k)`.
    pub fn area_moment(&self, k: u32) -> BigRational {
        self.expect(|u| BigRational::from_integer(u.area().pow(k).into()))
    }
}

fn indicator(b: bool) -> BigRational {
    if b {
        BigRational::one()
    } else {
        BigRational::zero()
    }
}

/// Enumerates all spanning unicycles (edge subsets of size `|V|` closing
/// exactly one cycle). Capped like the forest census.
pub fn enumerate_unicycles(map: &PlanarMap) -> Result<UnicycleCensus> {
    let g = map.graph();
    let limit = crate::census::ENUMERATION_EDGE_LIMIT;
    if g.edge_count() > limit {
        return Err(Error::TooLarge {
            edges: g.edge_count(),
            limit,
        });
    }
    let n = g.vertex_count();
    let cond: Vec<BigRational> = g.edges().iter().map(|e| rational(e.conductance)).collect();
    let mut found = Vec::new();

    struct Search<'a> {
        edges: &'a [Edge],
        n: usize,
        chosen: Vec<EdgeId>,
        sets: RollbackSets,
        out: &'a mut Vec<Vec<EdgeId>>,
    }
    fn recurse(s: &mut Search, start: usize, cycles: usize) {
        if s.chosen.len() == s.n {
            if cycles == 1 {
                s.out.push(s.chosen.clone());
            }
            return;
        }
        let need = s.n - s.chosen.len();
        for id in start..=s.edges.len() - need {
            let e = s.edges[id];
            if s.sets.union(e.u, e.v) {
                s.chosen.push(id);
                recurse(s, id + 1, cycles);
                s.chosen.pop();
                s.sets.undo();
            } else if cycles == 0 {
                s.chosen.push(id);
                recurse(s, id + 1, 1);
                s.chosen.pop();
            }
        }
    }
    if g.edge_count() >= n {
        let mut search = Search {
            edges: g.edges(),
            n,
            chosen: Vec::with_capacity(n),
            sets: RollbackSets::new(n),
            out: &mut found,
        };
        recurse(&mut search, 0, 0);
    }

    let mut unicycles = Vec::with_capacity(found.len());
    let mut lambda = BigRational::zero();
    for edges in found {
        let w = edges.iter().fold(BigRational::one(), |acc, &e| acc * &cond[e]);
        lambda += &w;
        unicycles.push((unicycle_from_edges(map, edges)?, w));
    }
    Ok(UnicycleCensus {
        unicycles,
        lambda,
        face_count: map.face_count(),
        edge_count: g.edge_count(),
    })
}

#[cfg(test)]
mod tests {
    use super::*;

    fn square() -> PlanarMap {
        let g = WeightedGraph::new(
            4,
            [
                Edge::new(0, 1, 1.0),
                Edge::new(1, 2, 1.0),
                Edge::new(2, 3, 1.0),
                Edge::new(3, 0, 1.0),
            ],
            0,
        )
        .unwrap();
        PlanarMap::from_positions(g, &[(0.0, 0.0), (1.0, 0.0), (1.0, 1.0), (0.0, 1.0)]).unwrap()
    }

    #[test]
    fn square_dual_is_four_parallel_edges() {
        let map = square();
        assert_eq!(map.face_count(), 2);
        let dual = build_dual(&map).unwrap();
        assert_eq!(dual.graph.vertex_count(), 2);
        assert_eq!(dual.graph.edge_count(), 4);
        assert!(dual.dropped_loops.is_empty());
        map.check_double_dual().unwrap();
    }

    #[test]
    fn square_unicycle_is_forced() {
        let map = square();
        let s = unicycle_stats(&map).unwrap();
        assert!((s.mean_area - 1.0).abs() < 1e-12);
        assert!((s.second_moment_area - 1.0).abs() < 1e-12);
        for (a, b) in s.cycle_edge_probs.iter().zip(&s.cycle_edge_probs_primal) {
            assert!((a - 1.0).abs() < 1e-12 && (b - 1.0).abs() < 1e-12);
        }
        let census = enumerate_unicycles(&map).unwrap();
        assert_eq!(census.unicycles.len(), 1);
        assert_eq!(census.area_moment(1), BigRational::one());
    }

    #[test]
    fn bridge_becomes_dropped_loop() {
        // triangle with a pendant edge 2-3
        let g = WeightedGraph::new(
            4,
            [
                Edge::new(0, 1, 1.0),
                Edge::new(1, 2, 1.0),
                Edge::new(2, 0, 1.0),
                Edge::new(2, 3, 2.0),
            ],
            0,
        )
        .unwrap();
        let map =
            PlanarMap::from_positions(g, &[(0.0, 0.0), (1.0, 0.0), (0.5, 1.0), (0.5, 2.0)]).unwrap();
        let dual = build_dual(&map).unwrap();
        assert_eq!(dual.dropped_loops, vec![3]);
        let m = UnicycleModel::new(&map).unwrap();
        assert_eq!(m.prob_cycle_edge(3).unwrap(), 0.0);
        assert!(m.prob_cycle_edge_primal(3).unwrap().abs() < 1e-12);
        assert!(map.check_double_dual().is_err());
    }

    #[test]
    fn rejects_bad_rotation() {
        let map = square();
        let mut rot = map.rotation().to_vec();
        rot[0].pop();
        assert!(matches!(
            PlanarMap::new(map.graph().clone(), rot, Dart::forward(0)),
            Err(Error::NonPlanarMap(_))
        ));
    }

    #[test]
    fn k4_twisted_rotation_fails_euler() {
        // K4 with a rotation that is not a planar embedding
        let g = WeightedGraph::new(
            4,
            [
                Edge::new(0, 1, 1.0),
                Edge::new(0, 2, 1.0),
                Edge::new(0, 3, 1.0),
                Edge::new(1, 2, 1.0),
                Edge::new(1, 3, 1.0),
                Edge::new(2, 3, 1.0),
            ],
            0,
        )
        .unwrap();
        let pos = [(0.0, 0.0), (4.0, 0.0), (2.0, 4.0), (2.0, 1.5)];
        let good = PlanarMap::from_positions(g.clone(), &pos).unwrap();
        assert_eq!(good.face_count(), 4);
        let mut rot = good.rotation().to_vec();
        rot[3].swap(0, 1);
        assert!(PlanarMap::new(g, rot, Dart::forward(0)).is_err());
    }
}

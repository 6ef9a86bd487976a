//! Weighted undirected graphs with a marked boundary vertex, plus the
//! structural operations the rest of the crate builds on: contraction,
//! pinning and exact classification of edge subsets.

use std::collections::HashMap;

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};

pub type VertexId = usize;
pub type EdgeId = usize;

/// An undirected edge with a positive conductance.
#[derive(Clone, Copy, Debug, PartialEq, Serialize, Deserialize)]
pub struct Edge {
    pub u: VertexId,
    pub v: VertexId,
    pub conductance: f64,
}

impl Edge {
    pub fn new(u: VertexId, v: VertexId, conductance: f64) -> Self {
        Edge { u, v, conductance }
    }

    /// The endpoint opposite to `x`. `x` must be an endpoint.
    pub fn other(&self, x: VertexId) -> VertexId {
        if self.u == x {
            self.v
        } else {
            debug_assert_eq!(self.v, x);
            self.u
        }
    }

    pub fn touches(&self, x: VertexId) -> bool {
        self.u == x || self.v == x
    }
}

/// An oriented copy of an edge. `reversed == false` means `u -> v`.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub struct Dart {
    pub edge: EdgeId,
    pub reversed: bool,
}

impl Dart {
    pub fn forward(edge: EdgeId) -> Self {
        Dart { edge, reversed: false }
    }

    pub fn backward(edge: EdgeId) -> Self {
        Dart { edge, reversed: true }
    }

    /// Dense index: `2e` for `u -> v`, `2e + 1` for `v -> u`.
    pub fn index(&self) -> usize {
        2 * self.edge + usize::from(self.reversed)
    }

    pub fn from_index(i: usize) -> Self {
        Dart {
            edge: i / 2,
            reversed: i % 2 == 1,
        }
    }

    pub fn twin(&self) -> Self {
        Dart {
            edge: self.edge,
            reversed: !self.reversed,
        }
    }

    pub fn tail(&self, graph: &WeightedGraph) -> VertexId {
        let e = &graph.edges[self.edge];
        if self.reversed {
            e.v
        } else {
            e.u
        }
    }

    pub fn head(&self, graph: &WeightedGraph) -> VertexId {
        let e = &graph.edges[self.edge];
        if self.reversed {
            e.u
        } else {
            e.v
        }
    }
}

/// A connected graph with strictly positive conductances and a boundary
/// vertex `b`. Parallel edges are allowed and keep distinct ids; self-loops
/// are rejected.
///
/// Immutable after construction.
#[derive(Clone, Debug)]
pub struct WeightedGraph {
    edges: Vec<Edge>,
    boundary: VertexId,
    adjacency: Vec<Vec<(VertexId, EdgeId)>>,
    labels: Vec<String>,
}

impl WeightedGraph {
    /// Validates and builds a graph on vertices `0..vertex_count`.
    pub fn new(
        vertex_count: usize,
        edges: impl IntoIterator<Item = Edge>,
        boundary: VertexId,
    ) -> Result<Self> {
        let labels = (0..vertex_count).map(|v| v.to_string()).collect();
        Self::with_labels(edges.into_iter().collect(), boundary, labels)
    }

    fn with_labels(edges: Vec<Edge>, boundary: VertexId, labels: Vec<String>) -> Result<Self> {
        let n = labels.len();
        if edges.is_empty() {
            return Err(Error::EmptyGraph);
        }
        if boundary >= n {
            return Err(Error::InvalidBoundary(boundary));
        }
        let mut adjacency = vec![Vec::new(); n];
        for (id, e) in edges.iter().enumerate() {
            if e.u >= n || e.v >= n {
                return Err(Error::InvalidVertex {
                    vertex: e.u.max(e.v),
                    reason: "edge endpoint out of range",
                });
            }
            if e.u == e.v {
                return Err(Error::SelfLoop { edge: id, vertex: e.u });
            }
            if !(e.conductance.is_finite() && e.conductance > 0.0) {
                return Err(Error::NonpositiveConductance {
                    edge: id,
                    conductance: e.conductance,
                });
            }
            adjacency[e.u].push((e.v, id));
            adjacency[e.v].push((e.u, id));
        }
        let mut sets = DisjointSets::new(n);
        for e in &edges {
            sets.union(e.u, e.v);
        }
        let components = sets.count();
        if components != 1 {
            return Err(Error::DisconnectedGraph { components });
        }
        Ok(WeightedGraph {
            edges,
            boundary,
            adjacency,
            labels,
        })
    }

    /// Builds a graph from string-labelled edges. Vertex ids are assigned in
    /// order of first appearance.
    pub fn from_labeled<S: AsRef<str>>(edges: &[(S, S, f64)], boundary: &str) -> Result<Self> {
        let mut ids: HashMap<String, VertexId> = HashMap::new();
        let mut labels = Vec::new();
        let mut intern = |s: &str| -> VertexId {
            *ids.entry(s.to_string()).or_insert_with(|| {
                labels.push(s.to_string());
                labels.len() - 1
            })
        };
        let list: Vec<Edge> = edges
            .iter()
            .map(|(u, v, c)| Edge::new(intern(u.as_ref()), intern(v.as_ref()), *c))
            .collect();
        let b = match ids.get(boundary) {
            Some(&b) => b,
            None => {
                return Err(Error::InvalidArgument(format!(
                    "boundary label `{boundary}` does not occur in the edge list"
                )))
            }
        };
        Self::with_labels(list, b, labels)
    }

    pub fn vertex_count(&self) -> usize {
        self.labels.len()
    }

    pub fn edge_count(&self) -> usize {
        self.edges.len()
    }

    pub fn edges(&self) -> &[Edge] {
        &self.edges
    }

    pub fn edge(&self, id: EdgeId) -> Result<&Edge> {
        self.edges.get(id).ok_or(Error::UnknownEdge(id))
    }

    pub fn boundary(&self) -> VertexId {
        self.boundary
    }

    pub fn neighbors(&self, v: VertexId) -> &[(VertexId, EdgeId)] {
        &self.adjacency[v]
    }

    pub fn degree(&self, v: VertexId) -> usize {
        self.adjacency[v].len()
    }

    pub fn labels(&self) -> &[String] {
        &self.labels
    }

    pub fn label(&self, v: VertexId) -> &str {
        &self.labels[v]
    }

    pub fn vertex_by_label(&self, label: &str) -> Option<VertexId> {
        self.labels.iter().position(|l| l == label)
    }

    /// Vertices other than the boundary, in id order.
    pub fn interior(&self) -> impl Iterator<Item = VertexId> + '_ {
        (0..self.vertex_count()).filter(move |&v| v != self.boundary)
    }

    pub fn check_vertex(&self, v: VertexId) -> Result<()> {
        if v < self.vertex_count() {
            Ok(())
        } else {
            Err(Error::InvalidVertex {
                vertex: v,
                reason: "no such vertex",
            })
        }
    }

    pub fn check_interior(&self, v: VertexId) -> Result<()> {
        self.check_vertex(v)?;
        if v == self.boundary {
            Err(Error::InvalidVertex {
                vertex: v,
                reason: "vertex is the boundary",
            })
        } else {
            Ok(())
        }
    }

    /// Same graph with a different boundary vertex.
    pub fn with_boundary(&self, boundary: VertexId) -> Result<Self> {
        if boundary >= self.vertex_count() {
            return Err(Error::InvalidBoundary(boundary));
        }
        let mut g = self.clone();
        g.boundary = boundary;
        Ok(g)
    }

    /// Sum of `ln c(e)` over all edges.
    pub fn log_conductance_product(&self) -> f64 {
        self.edges.iter().map(|e| e.conductance.ln()).sum()
    }

    pub fn min_conductance(&self) -> f64 {
        self.edges
            .iter()
            .map(|e| e.conductance)
            .fold(f64::INFINITY, f64::min)
    }

    /// Identifies `u` and `v`. Edges between them become loops and are
    /// dropped; other parallel edges are kept. The merged vertex takes `u`'s
    /// slot (shifted if `v < u`) and becomes the boundary if either `u` or
    /// `v` was.
    pub fn contract(&self, u: VertexId, v: VertexId) -> Result<Self> {
        self.check_vertex(u)?;
        self.check_vertex(v)?;
        if u == v {
            return Err(Error::InvalidVertex {
                vertex: v,
                reason: "cannot contract a vertex with itself",
            });
        }
        let relabel = |w: VertexId| -> VertexId {
            let w = if w == v { u } else { w };
            if w > v {
                w - 1
            } else {
                w
            }
        };
        let edges: Vec<Edge> = self
            .edges
            .iter()
            .filter(|e| !(e.touches(u) && e.touches(v)))
            .map(|e| Edge::new(relabel(e.u), relabel(e.v), e.conductance))
            .collect();
        let mut labels = Vec::with_capacity(self.vertex_count() - 1);
        for w in 0..self.vertex_count() {
            if w == v {
                continue;
            }
            if w == u {
                labels.push(format!("{}~{}", self.labels[u], self.labels[v]));
            } else {
                labels.push(self.labels[w].clone());
            }
        }
        Self::with_labels(edges, relabel(self.boundary), labels)
    }

    /// Adds a unit-conductance edge joining the boundary to `u` and returns
    /// the new graph together with the id of the added edge.
    pub fn pin(&self, u: VertexId) -> Result<(Self, EdgeId)> {
        self.check_interior(u)?;
        let mut edges = self.edges.clone();
        edges.push(Edge::new(self.boundary, u, 1.0));
        let id = edges.len() - 1;
        Ok((Self::with_labels(edges, self.boundary, self.labels.clone())?, id))
    }

    /// Exact classification of an edge subset. Duplicate ids are ignored.
    pub fn classify(&self, edge_ids: &[EdgeId]) -> Result<Subgraph> {
        let mut ids = edge_ids.to_vec();
        ids.sort_unstable();
        ids.dedup();
        if let Some(&bad) = ids.iter().find(|&&e| e >= self.edge_count()) {
            return Err(Error::UnknownEdge(bad));
        }
        let n = self.vertex_count();
        let mut sets = DisjointSets::new(n);
        for &id in &ids {
            let e = &self.edges[id];
            if !sets.union(e.u, e.v) {
                return Ok(Subgraph::Other);
            }
        }
        match n - ids.len() {
            1 => Ok(Subgraph::SpanningTree(SpanningTree { edges: ids })),
            2 => {
                let root = sets.find(self.boundary);
                let in_sigma: Vec<bool> = (0..n).map(|w| sets.find(w) != root).collect();
                Ok(Subgraph::TwoForest(TwoForest::from_membership(
                    self, ids, &in_sigma,
                )))
            }
            _ => Ok(Subgraph::Other),
        }
    }
}

/// Result of [`WeightedGraph::classify`].
#[derive(Clone, Debug, PartialEq)]
pub enum Subgraph {
    SpanningTree(SpanningTree),
    TwoForest(TwoForest),
    Other,
}

/// A spanning tree as a sorted list of edge ids.
#[derive(Clone, Debug, PartialEq, Eq, Hash, Serialize)]
pub struct SpanningTree {
    pub edges: Vec<EdgeId>,
}

impl SpanningTree {
    pub fn weight(&self, graph: &WeightedGraph) -> f64 {
        self.edges.iter().map(|&e| graph.edges[e].conductance).product()
    }
}

/// A two-component spanning forest together with its floating component
/// Σ (the component avoiding `b`) and the edges ∂Σ leaving Σ.
#[derive(Clone, Debug, PartialEq, Eq, Hash, Serialize)]
pub struct TwoForest {
    pub edges: Vec<EdgeId>,
    pub floating: Vec<VertexId>,
    pub boundary_edges: Vec<EdgeId>,
}

impl TwoForest {
    /// Builds the forest record from sorted edge ids and a Σ-membership mask.
    pub(crate) fn from_membership(
        graph: &WeightedGraph,
        edges: Vec<EdgeId>,
        in_sigma: &[bool],
    ) -> Self {
        let floating = (0..graph.vertex_count()).filter(|&w| in_sigma[w]).collect();
        let boundary_edges = graph
            .edges
            .iter()
            .enumerate()
            .filter(|(_, e)| in_sigma[e.u] != in_sigma[e.v])
            .map(|(id, _)| id)
            .collect();
        TwoForest {
            edges,
            floating,
            boundary_edges,
        }
    }

    pub fn size(&self) -> usize {
        self.floating.len()
    }

    pub fn contains(&self, v: VertexId) -> bool {
        self.floating.binary_search(&v).is_ok()
    }

    pub fn weight(&self, graph: &WeightedGraph) -> f64 {
        self.edges.iter().map(|&e| graph.edges[e].conductance).product()
    }

    /// Conductance-weighted size |∂Σ|.
    pub fn boundary_conductance(&self, graph: &WeightedGraph) -> f64 {
        self.boundary_edges
            .iter()
            .map(|&e| graph.edges[e].conductance)
            .sum()
    }
}

/// Union-find with path halving and union by size.
#[derive(Clone, Debug)]
pub struct DisjointSets {
    parent: Vec<usize>,
    size: Vec<usize>,
    count: usize,
}

impl DisjointSets {
    pub fn new(n: usize) -> Self {
        DisjointSets {
            parent: (0..n).collect(),
            size: vec![1; n],
            count: n,
        }
    }

    pub fn find(&mut self, mut x: usize) -> usize {
        while self.parent[x] != x {
            self.parent[x] = self.parent[self.parent[x]];
            x = self.parent[x];
        }
        x
    }

    /// Merges the sets of `a` and `b`; returns `false` if they were already
    /// joined.
    pub fn union(&mut self, a: usize, b: usize) -> bool {
        let (mut a, mut b) = (self.find(a), self.find(b));
        if a == b {
            return false;
        }
        if self.size[a] < self.size[b] {
            std::mem::swap(&mut a, &mut b);
        }
        self.parent[b] = a;
        self.size[a] += self.size[b];
        self.count -= 1;
        true
    }

    pub fn count(&self) -> usize {
        self.count
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn k3() -> WeightedGraph {
        WeightedGraph::new(
            3,
            [Edge::new(0, 1, 1.0), Edge::new(1, 2, 1.0), Edge::new(0, 2, 1.0)],
            2,
        )
        .unwrap()
    }

    fn c4() -> WeightedGraph {
        // b=0, v1=1, v2=2, v3=3
        WeightedGraph::new(
            4,
            [
                Edge::new(0, 1, 1.0),
                Edge::new(1, 2, 1.0),
                Edge::new(2, 3, 1.0),
                Edge::new(3, 0, 1.0),
            ],
            0,
        )
        .unwrap()
    }

    #[test]
    fn builds_small_graphs() {
        let g = k3();
        assert_eq!((g.vertex_count(), g.edge_count()), (3, 3));
        let path = WeightedGraph::new(3, [Edge::new(0, 1, 1.0), Edge::new(1, 2, 1.0)], 2).unwrap();
        assert_eq!(path.edge_count(), 2);
    }

    #[test]
    fn rejects_bad_input() {
        assert!(matches!(
            WeightedGraph::new(2, [Edge::new(0, 0, 1.0), Edge::new(0, 1, 1.0)], 1),
            Err(Error::SelfLoop { edge: 0, vertex: 0 })
        ));
        assert!(matches!(
            WeightedGraph::new(2, [Edge::new(0, 1, 0.0)], 1),
            Err(Error::NonpositiveConductance { .. })
        ));
        assert!(matches!(
            WeightedGraph::new(2, [Edge::new(0, 1, f64::NAN)], 1),
            Err(Error::NonpositiveConductance { .. })
        ));
        assert!(matches!(
            WeightedGraph::new(4, [Edge::new(0, 1, 1.0), Edge::new(2, 3, 1.0)], 0),
            Err(Error::DisconnectedGraph { components: 2 })
        ));
        assert!(matches!(
            WeightedGraph::new(2, [Edge::new(0, 1, 1.0)], 5),
            Err(Error::InvalidBoundary(5))
        ));
        assert!(matches!(
            WeightedGraph::new(2, Vec::<Edge>::new(), 0),
            Err(Error::EmptyGraph)
        ));
    }

    #[test]
    fn contraction_makes_parallel_edges() {
        let g = k3().contract(0, 2).unwrap();
        assert_eq!(g.vertex_count(), 2);
        assert_eq!(g.edge_count(), 2);
        assert!(g.edges().iter().all(|e| e.touches(0) && e.touches(1)));
        // boundary 2 was merged into vertex 0
        assert_eq!(g.boundary(), 0);
        assert_eq!(g.label(0), "0~2");
        assert!(matches!(g.contract(0, 2), Err(Error::InvalidVertex { .. })));
        assert!(matches!(g.contract(1, 1), Err(Error::InvalidVertex { .. })));
    }

    #[test]
    fn pin_adds_one_edge() {
        let path = WeightedGraph::new(3, [Edge::new(0, 1, 1.0), Edge::new(1, 2, 1.0)], 2).unwrap();
        let (pinned, id) = path.pin(0).unwrap();
        assert_eq!(pinned.edge_count(), 3);
        assert_eq!(id, 2);
        assert!(pinned.edge(id).unwrap().touches(2) && pinned.edge(id).unwrap().touches(0));
        assert!(matches!(path.pin(2), Err(Error::InvalidVertex { .. })));
    }

    #[test]
    fn classifies_c4_subsets() {
        let g = c4();
        // {b v1, v2 v3}
        match g.classify(&[0, 2]).unwrap() {
            Subgraph::TwoForest(f) => {
                assert_eq!(f.floating, vec![2, 3]);
                assert_eq!(f.boundary_edges, vec![1, 3]);
            }
            other => panic!("expected 2SF, got {other:?}"),
        }
        assert!(matches!(g.classify(&[0, 1, 2]).unwrap(), Subgraph::SpanningTree(_)));
        assert_eq!(g.classify(&[0, 1, 2, 3]).unwrap(), Subgraph::Other);
        assert_eq!(g.classify(&[0]).unwrap(), Subgraph::Other);
        assert!(matches!(g.classify(&[9]), Err(Error::UnknownEdge(9))));
    }

    #[test]
    fn labelled_construction() {
        let g = WeightedGraph::from_labeled(&[("a", "b", 1.0), ("b", "sink", 2.0)], "sink").unwrap();
        assert_eq!(g.boundary(), 2);
        assert_eq!(g.vertex_by_label("b"), Some(1));
        assert!(WeightedGraph::from_labeled(&[("a", "b", 1.0)], "zz").is_err());
    }
}

//! Dirichlet Green's function oracle.
//!
//! The Dirichlet Laplacian Δ_D is the weighted Laplacian with the boundary
//! row and column removed. Its determinant is the weighted spanning-tree
//! count κ and its inverse is the Green's function G, extended by zero on
//! the boundary row and column.

use std::sync::OnceLock;

use faer::linalg::solvers::{DenseSolveCore, Llt, Solve};
use faer::{Mat, Side};
use rayon::prelude::*;

use crate::envelope::{EnvelopeCholesky, SymmetricPattern};
use crate::error::{Error, Result};
use crate::graph::{Dart, EdgeId, VertexId, WeightedGraph};

/// Tuning knobs for [`GreenOracle`].
#[derive(Clone, Copy, Debug)]
pub struct SolverOptions {
    /// Above this many interior vertices the envelope solver is used instead
    /// of the dense factorization.
    pub sparse_threshold: usize,
    /// Relative residual allowed on the post-factorization probe solve.
    pub residual_tolerance: f64,
}

impl Default for SolverOptions {
    fn default() -> Self {
        SolverOptions {
            sparse_threshold: 2000,
            residual_tolerance: 1e-9,
        }
    }
}

enum Factor {
    Dense(Llt<f64>),
    Envelope(EnvelopeCholesky),
}

impl Factor {
    fn log_det(&self) -> f64 {
        match self {
            Factor::Dense(llt) => {
                let l = llt.L();
                (0..l.nrows()).map(|i| 2.0 * l[(i, i)].ln()).sum()
            }
            Factor::Envelope(f) => f.log_det(),
        }
    }

    fn solve_in_place(&self, rhs: &mut [f64]) {
        match self {
            Factor::Dense(llt) => {
                let mut m = Mat::<f64>::from_fn(rhs.len(), 1, |i, _| rhs[i]);
                llt.solve_in_place(m.as_mut());
                for (i, x) in rhs.iter_mut().enumerate() {
                    *x = m[(i, 0)];
                }
            }
            Factor::Envelope(f) => f.solve_in_place(rhs),
        }
    }
}

/// Per-vertex and per-edge reductions of G, computed in one pass.
#[derive(Clone, Debug)]
pub struct GreenSummary {
    /// `G_{u,u}` for every vertex (0 at the boundary).
    pub diag: Vec<f64>,
    /// `Σ_v G_{u,v}` for every vertex.
    pub row_sums: Vec<f64>,
    /// `G_{u,v}` for every edge `uv`.
    pub edge_cross: Vec<f64>,
}

impl GreenSummary {
    pub fn trace(&self) -> f64 {
        self.diag.iter().sum()
    }

    pub fn total(&self) -> f64 {
        self.row_sums.iter().sum()
    }
}

/// Factorized Dirichlet Laplacian serving κ, Green entries and transfer
/// currents. Immutable once built; the column cache is filled lazily and is
/// safe to share between threads.
pub struct GreenOracle {
    graph: WeightedGraph,
    reduced: Vec<Option<usize>>,
    factor: Factor,
    log_kappa: f64,
    columns: Vec<OnceLock<Box<[f64]>>>,
    zero: Box<[f64]>,
    summary: OnceLock<GreenSummary>,
}

impl std::fmt::Debug for GreenOracle {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        f.debug_struct("GreenOracle")
            .field("vertices", &self.graph.vertex_count())
            .field("boundary", &self.graph.boundary())
            .field("log_kappa", &self.log_kappa)
            .field("sparse", &matches!(self.factor, Factor::Envelope(_)))
            .finish()
    }
}

impl GreenOracle {
    pub fn new(graph: &WeightedGraph) -> Result<Self> {
        Self::with_options(graph, SolverOptions::default())
    }

    pub fn with_options(graph: &WeightedGraph, options: SolverOptions) -> Result<Self> {
        let n = graph.vertex_count();
        let mut reduced = vec![None; n];
        let mut dim = 0;
        for v in graph.interior() {
            reduced[v] = Some(dim);
            dim += 1;
        }

        let mut pattern = SymmetricPattern {
            diag: vec![0.0; dim],
            off: vec![Vec::new(); dim],
        };
        for e in graph.edges() {
            let c = e.conductance;
            match (reduced[e.u], reduced[e.v]) {
                (Some(i), Some(j)) => {
                    pattern.diag[i] += c;
                    pattern.diag[j] += c;
                    pattern.off[i].push((j, -c));
                    pattern.off[j].push((i, -c));
                }
                (Some(i), None) | (None, Some(i)) => pattern.diag[i] += c,
                (None, None) => unreachable!("self-loops are rejected"),
            }
        }

        let factor = if dim > options.sparse_threshold {
            Factor::Envelope(EnvelopeCholesky::factor(&pattern)?)
        } else {
            let mut a = Mat::<f64>::zeros(dim, dim);
            for i in 0..dim {
                a[(i, i)] = pattern.diag[i];
                for &(j, x) in &pattern.off[i] {
                    a[(i, j)] += x;
                }
            }
            Factor::Dense(a.llt(Side::Lower).map_err(|_| Error::SingularMatrix)?)
        };
        let log_kappa = factor.log_det();
        if !log_kappa.is_finite() {
            return Err(Error::SingularMatrix);
        }

        // Probe solve: Δ_D y = x must reproduce x.
        let probe: Vec<f64> = (0..dim).map(|i| 1.0 + (i % 7) as f64 / 7.0).collect();
        let mut y = probe.clone();
        factor.solve_in_place(&mut y);
        let mut residual: f64 = 0.0;
        for i in 0..dim {
            let mut ax = pattern.diag[i] * y[i];
            for &(j, x) in &pattern.off[i] {
                ax += x * y[j];
            }
            residual = residual.max((ax - probe[i]).abs());
        }
        let scale = probe.iter().fold(0.0f64, |m, x| m.max(x.abs()));
        let residual = residual / scale;
        if residual > options.residual_tolerance {
            return Err(Error::SolverResidual {
                residual,
                tolerance: options.residual_tolerance,
            });
        }
        Ok(GreenOracle {
            graph: graph.clone(),
            reduced,
            factor,
            log_kappa,
            columns: (0..n).map(|_| OnceLock::new()).collect(),
            zero: vec![0.0; n].into_boxed_slice(),
            summary: OnceLock::new(),
        })
    }

    pub fn graph(&self) -> &WeightedGraph {
        &self.graph
    }

    /// `ln κ = ln det Δ_D`.
    pub fn log_kappa(&self) -> f64 {
        self.log_kappa
    }

    /// κ itself; overflows to infinity for large graphs.
    pub fn kappa(&self) -> f64 {
        self.log_kappa.exp()
    }

    pub fn is_sparse(&self) -> bool {
        matches!(self.factor, Factor::Envelope(_))
    }

    fn solve_column(&self, v: VertexId) -> Box<[f64]> {
        let n = self.graph.vertex_count();
        let dim = n - 1;
        let mut rhs = vec![0.0; dim];
        rhs[self.reduced[v].expect("interior vertex")] = 1.0;
        self.factor.solve_in_place(&mut rhs);
        let mut col = vec![0.0; n];
        for w in 0..n {
            if let Some(i) = self.reduced[w] {
                col[w] = rhs[i];
            }
        }
        col.into_boxed_slice()
    }

    /// Column `G_{·,v}` indexed by vertex. All zeros when `v = b`.
    pub fn column(&self, v: VertexId) -> &[f64] {
        if v == self.graph.boundary() {
            return &self.zero;
        }
        self.columns[v].get_or_init(|| self.solve_column(v))
    }

    /// `G_{u,v}`; zero when either argument is the boundary.
    pub fn green(&self, u: VertexId, v: VertexId) -> f64 {
        self.column(v)[u]
    }

    /// Transfer current `T(e, f) = c(f)(G(u1,u2) - G(u1,v2) - G(v1,u2) + G(v1,v2))`
    /// for directed edges `e = u1 -> v1`, `f = u2 -> v2`.
    pub fn transfer_current(&self, e: Dart, f: Dart) -> Result<f64> {
        self.graph.edge(e.edge)?;
        let cf = self.graph.edge(f.edge)?.conductance;
        let (u1, v1) = (e.tail(&self.graph), e.head(&self.graph));
        let (u2, v2) = (f.tail(&self.graph), f.head(&self.graph));
        let cu = self.column(u1);
        let cv = self.column(v1);
        Ok(cf * ((cu[u2] - cu[v2]) - (cv[u2] - cv[v2])))
    }

    /// Probability that edge `e` lies in a weighted random spanning tree,
    /// `T(e, e)`.
    pub fn tree_edge_probability(&self, e: EdgeId) -> Result<f64> {
        self.transfer_current(Dart::forward(e), Dart::forward(e))
    }

    /// Diagonal, row sums and edge cross-terms of G. Computed once.
    pub fn summary(&self) -> &GreenSummary {
        self.summary.get_or_init(|| self.compute_summary())
    }

    fn compute_summary(&self) -> GreenSummary {
        let g = &self.graph;
        let n = g.vertex_count();
        let mut diag = vec![0.0; n];
        let mut row_sums = vec![0.0; n];
        let mut edge_cross = vec![0.0; g.edge_count()];
        match &self.factor {
            Factor::Dense(llt) => {
                let inv = llt.inverse();
                let entry = |u: VertexId, v: VertexId| match (self.reduced[u], self.reduced[v]) {
                    (Some(i), Some(j)) => inv[(i, j)],
                    _ => 0.0,
                };
                for u in g.interior() {
                    let i = self.reduced[u].unwrap();
                    diag[u] = inv[(i, i)];
                    row_sums[u] = (0..n - 1).map(|j| inv[(i, j)]).sum();
                }
                for (id, e) in g.edges().iter().enumerate() {
                    edge_cross[id] = entry(e.u, e.v);
                }
            }
            Factor::Envelope(_) => {
                let interior: Vec<VertexId> = g.interior().collect();
                let per_vertex: Vec<(VertexId, f64, f64, Vec<(EdgeId, f64)>)> = interior
                    .par_iter()
                    .map(|&u| {
                        let col = self.solve_column(u);
                        let sum: f64 = col.iter().sum();
                        let cross = g
                            .neighbors(u)
                            .iter()
                            .filter(|&&(_, id)| g.edges()[id].u == u)
                            .map(|&(w, id)| (id, col[w]))
                            .collect();
                        (u, col[u], sum, cross)
                    })
                    .collect();
                for (u, d, s, cross) in per_vertex {
                    diag[u] = d;
                    row_sums[u] = s;
                    for (id, x) in cross {
                        edge_cross[id] = x;
                    }
                }
            }
        }
        GreenSummary {
            diag,
            row_sums,
            edge_cross,
        }
    }

    /// Full |V|×|V| Green matrix in row-major order (explicit opt-in; memory
    /// grows quadratically).
    pub fn materialize(&self) -> Vec<f64> {
        let n = self.graph.vertex_count();
        let mut out = vec![0.0; n * n];
        let cols: Vec<(VertexId, &[f64])> = self
            .graph
            .interior()
            .collect::<Vec<_>>()
            .into_par_iter()
            .map(|v| (v, self.column(v)))
            .collect();
        for (v, col) in cols {
            for u in 0..n {
                out[u * n + v] = col[u];
            }
        }
        out
    }
}

/// Potential kernel `A_{u,v} = G^r_{u,u} - G^r_{u,v}` on both orientations of
/// every edge, for Green's function rooted at `r`.
#[derive(Clone, Debug)]
pub struct PotentialKernel {
    pub root: VertexId,
    /// `A_{u,v}` for edge `e = (u, v)`.
    pub forward: Vec<f64>,
    /// `A_{v,u}` for edge `e = (u, v)`.
    pub backward: Vec<f64>,
}

impl PotentialKernel {
    /// Builds the kernel from an oracle; the root is the oracle's boundary.
    pub fn from_oracle(oracle: &GreenOracle) -> Self {
        let s = oracle.summary();
        let g = oracle.graph();
        let (forward, backward) = g
            .edges()
            .iter()
            .zip(&s.edge_cross)
            .map(|(e, &cross)| (s.diag[e.u] - cross, s.diag[e.v] - cross))
            .unzip();
        PotentialKernel {
            root: g.boundary(),
            forward,
            backward,
        }
    }

    pub fn get(&self, dart: Dart) -> f64 {
        if dart.reversed {
            self.backward[dart.edge]
        } else {
            self.forward[dart.edge]
        }
    }
}

/// Potential kernel of `graph` rooted at `root`.
pub fn potential_kernel(graph: &WeightedGraph, root: VertexId) -> Result<PotentialKernel> {
    let rooted = graph.with_boundary(root)?;
    Ok(PotentialKernel::from_oracle(&GreenOracle::new(&rooted)?))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::graph::Edge;

    fn k3() -> WeightedGraph {
        WeightedGraph::new(
            3,
            [Edge::new(0, 1, 1.0), Edge::new(1, 2, 1.0), Edge::new(0, 2, 1.0)],
            2,
        )
        .unwrap()
    }

    fn c4() -> WeightedGraph {
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

    fn close(a: f64, b: f64) -> bool {
        (a - b).abs() < 1e-12
    }

    #[test]
    fn k3_green_and_kappa() {
        let o = GreenOracle::new(&k3()).unwrap();
        assert!(close(o.kappa(), 3.0));
        assert!(close(o.green(0, 0), 2.0 / 3.0));
        assert!(close(o.green(0, 1), 1.0 / 3.0));
        assert_eq!(o.green(2, 0), 0.0);
        assert_eq!(o.green(1, 2), 0.0);
        for e in 0..3 {
            assert!(close(o.tree_edge_probability(e).unwrap(), 2.0 / 3.0));
        }
    }

    #[test]
    fn c4_green_entries() {
        let o = GreenOracle::new(&c4()).unwrap();
        assert!(close(o.kappa(), 4.0));
        assert!(close(o.green(1, 1), 0.75));
        assert!(close(o.green(2, 2), 1.0));
        assert!(close(o.green(1, 3), 0.25));
        assert!(close(o.tree_edge_probability(1).unwrap(), 0.75));
    }

    #[test]
    fn weighted_path() {
        let (c1, c2) = (0.5, 3.0);
        let g = WeightedGraph::new(3, [Edge::new(0, 1, c1), Edge::new(1, 2, c2)], 2).unwrap();
        let o = GreenOracle::new(&g).unwrap();
        assert!((o.kappa() - c1 * c2).abs() < 1e-12);
        // bridges are in every tree
        assert!(close(o.tree_edge_probability(0).unwrap(), 1.0));
        assert!(close(o.tree_edge_probability(1).unwrap(), 1.0));
        let a = potential_kernel(&g, 2).unwrap();
        assert!(close(a.forward[0], 1.0 / c1));
        assert!(close(a.backward[0], 0.0));
        assert!(close(a.forward[1], 1.0 / c2));
        assert!(close(a.backward[1], 0.0));
    }

    #[test]
    fn c4_potential_kernel() {
        let a = potential_kernel(&c4(), 0).unwrap();
        assert!(close(a.forward[1], 0.25));
        assert!(close(a.backward[1], 0.5));
        // root rows are zero: A_{b,v1} = 0
        assert!(close(a.forward[0], 0.0));
        assert!(close(a.backward[3], 0.0));
    }

    #[test]
    fn envelope_and_dense_agree() {
        let g = c4();
        let dense = GreenOracle::new(&g).unwrap();
        let sparse = GreenOracle::with_options(
            &g,
            SolverOptions {
                sparse_threshold: 0,
                ..Default::default()
            },
        )
        .unwrap();
        assert!(sparse.is_sparse() && !dense.is_sparse());
        assert!(close(dense.log_kappa(), sparse.log_kappa()));
        let (sd, ss) = (dense.summary(), sparse.summary());
        for v in 0..4 {
            assert!(close(sd.diag[v], ss.diag[v]));
            assert!(close(sd.row_sums[v], ss.row_sums[v]));
        }
        for e in 0..4 {
            assert!(close(sd.edge_cross[e], ss.edge_cross[e]));
        }
        assert!(close(sd.total(), 5.0));
    }

    #[test]
    fn materialized_matrix_is_symmetric() {
        let g = c4();
        let o = GreenOracle::new(&g).unwrap();
        let m = o.materialize();
        for u in 0..4 {
            for v in 0..4 {
                assert!(close(m[u * 4 + v], m[v * 4 + u]));
            }
        }
        assert!(close(m[5], 0.75));
    }
}

//! Closed-form statistics of the weighted random two-component spanning
//! forest: the ratio κ₂/κ, inclusion probabilities for the floating
//! component Σ, boundary-edge probabilities, size moments and the pinned
//! conditional mean.
//!
//! Everything is expressed through the Dirichlet Green's function G at the
//! boundary vertex b:
//!
//! * `P(u ∈ Σ) = (κ/κ₂) G_{u,u}` and `P(u, v ∈ Σ) = (κ/κ₂) G_{u,v}`;
//! * `P(v ∈ Σ | u ∈ Σ) = G_{u,v} / G_{u,u}`;
//! * `P(e ∈ ∂Σ) = κ T(e,e) / (c(e) κ₂)`;
//! * `E|∂Σ| = (|V|-1) κ/κ₂`, `E|Σ| = (κ/κ₂) Σ_u G_{u,u}`,
//!   `E|Σ|² = (κ/κ₂) Σ_{u,v} G_{u,v}`.
//!
//! κ₂/κ itself comes from the potential kernel `A_{u,v} = G^r_{u,u} - G^r_{u,v}`:
//! `κ₂/κ = Σ_{uv ∈ E} c(uv) [A_{u,v} A_{v,u} + (A_{u,v} - A_{v,u})²]`, for any root r.

use serde::{Deserialize, Serialize};

use crate::error::Result;
use crate::graph::{EdgeId, VertexId, WeightedGraph};
use crate::green::{GreenOracle, PotentialKernel, SolverOptions};

/// Per-edge factor in the potential-kernel expression for κ₂/κ.
#[derive(Clone, Copy, Debug, Default, PartialEq, Eq, Serialize, Deserialize)]
pub enum RatioRule {
    /// Each edge term is multiplied by its conductance. Exact on weighted
    /// graphs; identical to `Unweighted` when all conductances are 1.
    #[default]
    Weighted,
    /// The literal unit-conductance form, without conductance factors.
    Unweighted,
}

/// κ₂/κ from a potential kernel.
pub fn ratio_from_kernel(graph: &WeightedGraph, kernel: &PotentialKernel, rule: RatioRule) -> f64 {
    graph
        .edges()
        .iter()
        .enumerate()
        .map(|(id, e)| {
            let (a, b) = (kernel.forward[id], kernel.backward[id]);
            let w = match rule {
                RatioRule::Weighted => e.conductance,
                RatioRule::Unweighted => 1.0,
            };
            w * (a * b + (a - b) * (a - b))
        })
        .sum()
}

/// κ₂/κ with the potential kernel rooted at `root`.
pub fn ratio_k2_over_k(graph: &WeightedGraph, root: VertexId) -> Result<f64> {
    let kernel = crate::green::potential_kernel(graph, root)?;
    Ok(ratio_from_kernel(graph, &kernel, RatioRule::Weighted))
}

/// Summary of the closed-form statistics of one graph.
#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct ForestStatistics {
    pub vertex_count: usize,
    pub edge_count: usize,
    pub log_kappa: f64,
    pub log_kappa2: f64,
    /// κ₂/κ
    pub ratio_k2_k: f64,
    /// E|∂Σ|, conductance weighted.
    pub ell_star: f64,
    /// E|Σ|
    pub mean_size: f64,
    /// E|Σ|²
    pub second_moment: f64,
    /// R = Σ_v G_{v,v} / |V|
    pub mean_resistance: f64,
    /// Σ_{u,v} G_{u,v} / |V|
    pub hitting_sum: f64,
}

#[derive(Clone, Copy, Debug, PartialEq, Serialize)]
pub struct SizeMoments {
    pub mean: f64,
    pub second_moment: f64,
    pub mean_resistance: f64,
    pub hitting_sum: f64,
}

/// One row of the per-vertex table.
#[derive(Clone, Debug, Serialize)]
pub struct VertexRow {
    pub vertex: VertexId,
    pub label: String,
    pub green_diag: f64,
    pub prob_in_sigma: f64,
    pub pinned_mean_size: Option<f64>,
}

/// One row of the per-edge table.
#[derive(Clone, Debug, Serialize)]
pub struct EdgeRow {
    pub edge: EdgeId,
    pub u: String,
    pub v: String,
    pub conductance: f64,
    pub tree_probability: f64,
    pub prob_separates: f64,
}

/// Green oracle plus κ₂/κ; answers every closed-form query.
#[derive(Debug)]
pub struct ForestModel {
    oracle: GreenOracle,
    ratio: f64,
    rule: RatioRule,
}

impl ForestModel {
    pub fn new(graph: &WeightedGraph) -> Result<Self> {
        Self::with_rule(graph, RatioRule::Weighted, SolverOptions::default())
    }

    pub fn with_rule(graph: &WeightedGraph, rule: RatioRule, options: SolverOptions) -> Result<Self> {
        let oracle = GreenOracle::with_options(graph, options)?;
        Ok(Self::from_oracle(oracle, rule))
    }

    pub fn from_oracle(oracle: GreenOracle, rule: RatioRule) -> Self {
        let kernel = PotentialKernel::from_oracle(&oracle);
        let ratio = ratio_from_kernel(oracle.graph(), &kernel, rule);
        debug_assert!(ratio > 0.0);
        ForestModel { oracle, ratio, rule }
    }

    pub fn oracle(&self) -> &GreenOracle {
        &self.oracle
    }

    pub fn graph(&self) -> &WeightedGraph {
        self.oracle.graph()
    }

    pub fn rule(&self) -> RatioRule {
        self.rule
    }

    /// κ₂/κ
    pub fn ratio_k2_k(&self) -> f64 {
        self.ratio
    }

    pub fn log_kappa(&self) -> f64 {
        self.oracle.log_kappa()
    }

    pub fn log_kappa2(&self) -> f64 {
        self.oracle.log_kappa() + self.ratio.ln()
    }

    /// `P(u ∈ Σ)`.
    pub fn prob_in_sigma(&self, u: VertexId) -> Result<f64> {
        self.graph().check_interior(u)?;
        Ok(self.oracle.green(u, u) / self.ratio)
    }

    /// `P(u ∈ Σ and v ∈ Σ)`.
    pub fn prob_pair_in_sigma(&self, u: VertexId, v: VertexId) -> Result<f64> {
        self.graph().check_interior(u)?;
        self.graph().check_interior(v)?;
        Ok(self.oracle.green(u, v) / self.ratio)
    }

    /// `P(v ∈ Σ | u ∈ Σ)`, harmonic in `v` with value 1 at `u` and 0 at `b`.
    pub fn prob_conditional(&self, v: VertexId, u: VertexId) -> Result<f64> {
        self.graph().check_interior(u)?;
        self.graph().check_vertex(v)?;
        let guu = self.oracle.green(u, u);
        assert!(guu > 0.0, "G_uu vanishes on a connected graph");
        Ok(self.oracle.green(u, v) / guu)
    }

    /// `P(e ∈ ∂Σ)`: the edge joins Σ to its complement.
    pub fn prob_edge_separates(&self, e: EdgeId) -> Result<f64> {
        let c = self.graph().edge(e)?.conductance;
        let t = self.oracle.tree_edge_probability(e)?;
        Ok(t / (c * self.ratio))
    }

    /// `E|∂Σ|`, conductance weighted.
    pub fn expected_boundary(&self) -> f64 {
        (self.graph().vertex_count() - 1) as f64 / self.ratio
    }

    pub fn size_moments(&self) -> SizeMoments {
        let s = self.oracle.summary();
        let n = self.graph().vertex_count() as f64;
        let (trace, total) = (s.trace(), s.total());
        SizeMoments {
            mean: trace / self.ratio,
            second_moment: total / self.ratio,
            mean_resistance: trace / n,
            hitting_sum: total / n,
        }
    }

    /// `E(|Σ| : z0 ∈ Σ) = Σ_v G_{v,z0} / G_{z0,z0}`.
    pub fn pinned_mean_size(&self, z0: VertexId) -> Result<f64> {
        self.graph().check_interior(z0)?;
        let col = self.oracle.column(z0);
        Ok(col.iter().sum::<f64>() / col[z0])
    }

    pub fn statistics(&self) -> ForestStatistics {
        let m = self.size_moments();
        let g = self.graph();
        ForestStatistics {
            vertex_count: g.vertex_count(),
            edge_count: g.edge_count(),
            log_kappa: self.log_kappa(),
            log_kappa2: self.log_kappa2(),
            ratio_k2_k: self.ratio,
            ell_star: self.expected_boundary(),
            mean_size: m.mean,
            second_moment: m.second_moment,
            mean_resistance: m.mean_resistance,
            hitting_sum: m.hitting_sum,
        }
    }

    pub fn vertex_table(&self) -> Vec<VertexRow> {
        let g = self.graph();
        let s = self.oracle.summary();
        (0..g.vertex_count())
            .map(|v| {
                let interior = v != g.boundary();
                VertexRow {
                    vertex: v,
                    label: g.label(v).to_string(),
                    green_diag: s.diag[v],
                    prob_in_sigma: s.diag[v] / self.ratio,
                    pinned_mean_size: interior.then(|| s.row_sums[v] / s.diag[v]),
                }
            })
            .collect()
    }

    pub fn edge_table(&self) -> Vec<EdgeRow> {
        let g = self.graph();
        let s = self.oracle.summary();
        g.edges()
            .iter()
            .enumerate()
            .map(|(id, e)| {
                let t = e.conductance * (s.diag[e.u] + s.diag[e.v] - 2.0 * s.edge_cross[id]);
                EdgeRow {
                    edge: id,
                    u: g.label(e.u).to_string(),
                    v: g.label(e.v).to_string(),
                    conductance: e.conductance,
                    tree_probability: t,
                    prob_separates: t / (e.conductance * self.ratio),
                }
            })
            .collect()
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::graph::Edge;

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

    fn k3() -> WeightedGraph {
        WeightedGraph::new(
            3,
            [Edge::new(0, 1, 1.0), Edge::new(1, 2, 1.0), Edge::new(0, 2, 1.0)],
            2,
        )
        .unwrap()
    }

    fn unit_path() -> WeightedGraph {
        // u=0, v=1, b=2
        WeightedGraph::new(3, [Edge::new(0, 1, 1.0), Edge::new(1, 2, 1.0)], 2).unwrap()
    }

    fn close(a: f64, b: f64) -> bool {
        (a - b).abs() < 1e-12
    }

    #[test]
    fn c4_closed_forms() {
        let m = ForestModel::new(&c4()).unwrap();
        assert!(close(m.ratio_k2_k(), 1.5));
        assert!(close(m.prob_in_sigma(2).unwrap(), 2.0 / 3.0));
        assert!(close(m.prob_pair_in_sigma(1, 3).unwrap(), 1.0 / 6.0));
        assert!(close(m.prob_conditional(1, 2).unwrap(), 0.5));
        assert!(close(m.prob_conditional(2, 2).unwrap(), 1.0));
        assert!(close(m.prob_conditional(0, 2).unwrap(), 0.0));
        assert!(close(m.prob_edge_separates(1).unwrap(), 0.5));
        assert!(close(m.expected_boundary(), 2.0));
        let s = m.size_moments();
        assert!(close(s.mean, 5.0 / 3.0));
        assert!(close(s.second_moment, 10.0 / 3.0));
        assert!(close(s.mean_resistance, 5.0 / 8.0));
        // factored form ℓ*·|V|/(|V|−1)·R
        assert!(close(2.0 * (4.0 / 3.0) * (5.0 / 8.0), s.mean));
        assert!(close(m.pinned_mean_size(2).unwrap(), 2.0));
    }

    #[test]
    fn k3_closed_forms() {
        let m = ForestModel::new(&k3()).unwrap();
        assert!(close(m.ratio_k2_k(), 1.0));
        assert!(close(m.prob_in_sigma(0).unwrap(), 2.0 / 3.0));
        assert!(close(m.prob_pair_in_sigma(0, 1).unwrap(), 1.0 / 3.0));
        assert!(close(m.prob_pair_in_sigma(0, 0).unwrap(), m.prob_in_sigma(0).unwrap()));
        for e in 0..3 {
            assert!(close(m.prob_edge_separates(e).unwrap(), 2.0 / 3.0));
        }
        assert!(close(m.expected_boundary(), 2.0));
        let s = m.size_moments();
        assert!(close(s.mean, 4.0 / 3.0));
        assert!(close(s.second_moment, 2.0));
    }

    #[test]
    fn path_cases() {
        let m = ForestModel::new(&unit_path()).unwrap();
        assert!(close(m.prob_in_sigma(0).unwrap(), 1.0));
        assert!(close(m.expected_boundary(), 1.0));
        assert!(close(m.prob_edge_separates(0).unwrap(), 0.5));
        assert!(close(m.prob_edge_separates(1).unwrap(), 0.5));
        assert!(close(m.pinned_mean_size(0).unwrap(), 1.5));
        let (c1, c2) = (2.0, 0.5);
        let g = WeightedGraph::new(3, [Edge::new(0, 1, c1), Edge::new(1, 2, c2)], 2).unwrap();
        assert!(close(ratio_k2_over_k(&g, 2).unwrap(), (c1 + c2) / (c1 * c2)));
    }

    #[test]
    fn boundary_vertex_is_rejected() {
        let m = ForestModel::new(&c4()).unwrap();
        assert!(m.prob_in_sigma(0).is_err());
        assert!(m.prob_pair_in_sigma(1, 0).is_err());
        assert!(m.pinned_mean_size(0).is_err());
        assert!(m.prob_edge_separates(17).is_err());
    }

    #[test]
    fn unweighted_rule_matches_on_unit_graphs() {
        let g = c4();
        let a = ForestModel::with_rule(&g, RatioRule::Unweighted, Default::default()).unwrap();
        assert!(close(a.ratio_k2_k(), 1.5));
    }

    #[test]
    fn cycle_inclusion_peaks_opposite_boundary() {
        // C_7 with b = 0: P(u ∈ Σ) is largest at the two antipodal vertices.
        let n = 7;
        let g = WeightedGraph::new(n, (0..n).map(|i| Edge::new(i, (i + 1) % n, 1.0)), 0).unwrap();
        let m = ForestModel::new(&g).unwrap();
        let p: Vec<f64> = (1..n).map(|u| m.prob_in_sigma(u).unwrap()).collect();
        let best = p.iter().cloned().fold(f64::MIN, f64::max);
        assert!(close(p[2], best) && close(p[3], best));
        assert!(p[0] < p[1] && p[1] < p[2]);
    }
}

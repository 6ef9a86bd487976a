//! Exact rational linear algebra for small graphs.
//!
//! Every `f64` conductance is a dyadic rational, so converting with
//! [`BigRational::from_float`] loses nothing and the Dirichlet Laplacian can be
//! inverted without rounding. Used to make formula-vs-enumeration
//! comparisons exact.

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Signed, Zero};

use crate::error::{Error, Result};
use crate::graph::{EdgeId, VertexId, WeightedGraph};

/// Largest vertex count accepted by the exact path.
pub const EXACT_VERTEX_LIMIT: usize = 40;

pub fn rational(x: f64) -> BigRational {
    BigRational::from_float(x).expect("finite conductance")
}

/// Determinant of an integer matrix by fraction-free (Bareiss) elimination.
pub fn det_bareiss(mut m: Vec<Vec<BigInt>>) -> BigInt {
    let n = m.len();
    if n == 0 {
        return BigInt::one();
    }
    let mut sign = BigInt::one();
    let mut prev = BigInt::one();
    for k in 0..n - 1 {
        if m[k][k].is_zero() {
            match (k + 1..n).find(|&i| !m[i][k].is_zero()) {
                Some(i) => {
                    m.swap(k, i);
                    sign = -sign;
                }
                None => return BigInt::zero(),
            }
        }
        for i in k + 1..n {
            for j in k + 1..n {
                let t = &m[i][j] * &m[k][k] - &m[i][k] * &m[k][j];
                m[i][j] = t / &prev;
            }
        }
        prev = m[k][k].clone();
    }
    sign * m[n - 1][n - 1].clone()
}

/// Dirichlet Laplacian entries as exact rationals, rows ordered by interior
/// vertex id.
fn dirichlet_laplacian(graph: &WeightedGraph) -> (Vec<Vec<BigRational>>, Vec<Option<usize>>) {
    let n = graph.vertex_count();
    let mut index = vec![None; n];
    let mut dim = 0;
    for v in graph.interior() {
        index[v] = Some(dim);
        dim += 1;
    }
    let mut a = vec![vec![BigRational::zero(); dim]; dim];
    for e in graph.edges() {
        let c = rational(e.conductance);
        if let Some(i) = index[e.u] {
            a[i][i] += &c;
        }
        if let Some(j) = index[e.v] {
            a[j][j] += &c;
        }
        if let (Some(i), Some(j)) = (index[e.u], index[e.v]) {
            a[i][j] -= &c;
            a[j][i] -= &c;
        }
    }
    (a, index)
}

/// κ by Bareiss elimination after clearing denominators.
pub fn kappa_exact(graph: &WeightedGraph) -> Result<BigRational> {
    check_size(graph)?;
    let (a, _) = dirichlet_laplacian(graph);
    let dim = a.len();
    let denom = a
        .iter()
        .flatten()
        .fold(BigInt::one(), |acc, x| num_integer::Integer::lcm(&acc, x.denom()));
    let scaled: Vec<Vec<BigInt>> = a
        .iter()
        .map(|row| {
            row.iter()
                .map(|x| (x * BigRational::from_integer(denom.clone())).to_integer())
                .collect()
        })
        .collect();
    let det = det_bareiss(scaled);
    Ok(BigRational::new(det, num_traits::pow(denom, dim)))
}

fn check_size(graph: &WeightedGraph) -> Result<()> {
    if graph.vertex_count() > EXACT_VERTEX_LIMIT {
        Err(Error::TooLarge {
            edges: graph.edge_count(),
            limit: EXACT_VERTEX_LIMIT,
        })
    } else {
        Ok(())
    }
}

/// Exact Green's function and κ.
#[derive(Clone, Debug)]
pub struct ExactGreen {
    pub kappa: BigRational,
    /// |V|×|V|, zero on the boundary row and column.
    pub green: Vec<Vec<BigRational>>,
}

impl ExactGreen {
    /// Gauss–Jordan inversion of Δ_D. Pivots are positive (leading minors of
    /// an SPD matrix), and their product is κ.
    pub fn new(graph: &WeightedGraph) -> Result<Self> {
        check_size(graph)?;
        let (mut a, index) = dirichlet_laplacian(graph);
        let dim = a.len();
        let mut inv: Vec<Vec<BigRational>> = (0..dim)
            .map(|i| {
                (0..dim)
                    .map(|j| if i == j { BigRational::one() } else { BigRational::zero() })
                    .collect()
            })
            .collect();
        let mut kappa = BigRational::one();
        for k in 0..dim {
            let pivot = a[k][k].clone();
            if !pivot.is_positive() {
                return Err(Error::SingularMatrix);
            }
            kappa *= &pivot;
            for j in 0..dim {
                a[k][j] /= &pivot;
                inv[k][j] /= &pivot;
            }
            for i in 0..dim {
                if i == k || a[i][k].is_zero() {
                    continue;
                }
                let f = a[i][k].clone();
                for j in 0..dim {
                    let t = &f * &a[k][j];
                    a[i][j] -= t;
                    let t = &f * &inv[k][j];
                    inv[i][j] -= t;
                }
            }
        }
        let n = graph.vertex_count();
        let mut green = vec![vec![BigRational::zero(); n]; n];
        for u in 0..n {
            for v in 0..n {
                if let (Some(i), Some(j)) = (index[u], index[v]) {
                    green[u][v] = inv[i][j].clone();
                }
            }
        }
        Ok(ExactGreen { kappa, green })
    }
}

/// Closed-form 2SF statistics in exact arithmetic (weighted ratio rule).
#[derive(Clone, Debug)]
pub struct ExactForestModel {
    graph: WeightedGraph,
    pub green: ExactGreen,
    /// κ₂/κ
    pub ratio: BigRational,
}

impl ExactForestModel {
    pub fn new(graph: &WeightedGraph) -> Result<Self> {
        let green = ExactGreen::new(graph)?;
        let g = &green.green;
        let mut ratio = BigRational::zero();
        for e in graph.edges() {
            let a = &g[e.u][e.u] - &g[e.u][e.v];
            let b = &g[e.v][e.v] - &g[e.v][e.u];
            let diff = &a - &b;
            ratio += rational(e.conductance) * (&a * &b + &diff * &diff);
        }
        Ok(ExactForestModel {
            graph: graph.clone(),
            green,
            ratio,
        })
    }

    pub fn kappa2(&self) -> BigRational {
        &self.green.kappa * &self.ratio
    }

    fn inv_ratio(&self) -> BigRational {
        self.ratio.recip()
    }

    pub fn prob_in_sigma(&self, u: VertexId) -> BigRational {
        self.inv_ratio() * &self.green.green[u][u]
    }

    pub fn prob_pair(&self, u: VertexId, v: VertexId) -> BigRational {
        self.inv_ratio() * &self.green.green[u][v]
    }

    pub fn prob_conditional(&self, v: VertexId, u: VertexId) -> BigRational {
        &self.green.green[u][v] / &self.green.green[u][u]
    }

    pub fn prob_edge_separates(&self, e: EdgeId) -> BigRational {
        let edge = &self.graph.edges()[e];
        let g = &self.green.green;
        let c = rational(edge.conductance);
        let t = &c * (&g[edge.u][edge.u] - &g[edge.u][edge.v] * BigRational::from_integer(2.into())
            + &g[edge.v][edge.v]);
        t / (c * &self.ratio)
    }

    pub fn expected_boundary(&self) -> BigRational {
        BigRational::from_integer((self.graph.vertex_count() - 1).into()) / &self.ratio
    }

    pub fn mean_size(&self) -> BigRational {
        let tr = (0..self.graph.vertex_count()).fold(BigRational::zero(), |acc, u| {
            acc + &self.green.green[u][u]
        });
        tr * self.inv_ratio()
    }

    pub fn second_moment(&self) -> BigRational {
        let total = self
            .green
            .green
            .iter()
            .flatten()
            .fold(BigRational::zero(), |acc, x| acc + x);
        total * self.inv_ratio()
    }

    pub fn pinned_mean(&self, z0: VertexId) -> BigRational {
        let g = &self.green.green;
        let s = (0..self.graph.vertex_count()).fold(BigRational::zero(), |acc, v| acc + &g[v][z0]);
        s / &g[z0][z0]
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::graph::Edge;

    fn int(x: i64) -> BigRational {
        BigRational::from_integer(x.into())
    }

    #[test]
    fn bareiss_small() {
        let m = vec![
            vec![BigInt::from(2), BigInt::from(-1), BigInt::from(0)],
            vec![BigInt::from(-1), BigInt::from(2), BigInt::from(-1)],
            vec![BigInt::from(0), BigInt::from(-1), BigInt::from(2)],
        ];
        assert_eq!(det_bareiss(m), BigInt::from(4));
        let swap = vec![
            vec![BigInt::from(0), BigInt::from(1)],
            vec![BigInt::from(1), BigInt::from(0)],
        ];
        assert_eq!(det_bareiss(swap), BigInt::from(-1));
    }

    #[test]
    fn exact_c4() {
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
        assert_eq!(kappa_exact(&g).unwrap(), int(4));
        let m = ExactForestModel::new(&g).unwrap();
        assert_eq!(m.green.kappa, int(4));
        assert_eq!(m.ratio, int(3) / int(2));
        assert_eq!(m.kappa2(), int(6));
        assert_eq!(m.mean_size(), int(5) / int(3));
        assert_eq!(m.second_moment(), int(10) / int(3));
        assert_eq!(m.pinned_mean(2), int(2));
        assert_eq!(m.prob_edge_separates(1), int(1) / int(2));
    }

    #[test]
    fn exact_weighted_path() {
        let g = WeightedGraph::new(3, [Edge::new(0, 1, 0.5), Edge::new(1, 2, 2.0)], 2).unwrap();
        assert_eq!(kappa_exact(&g).unwrap(), int(1));
        let m = ExactForestModel::new(&g).unwrap();
        // ratio = 1/c1 + 1/c2
        assert_eq!(m.ratio, int(2) + int(1) / int(2));
    }
}

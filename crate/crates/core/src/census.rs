//! Brute-force ground truth: every spanning tree and every two-component
//! spanning forest of a small graph, with exact rational weights.

use num_rational::BigRational;
use num_traits::{One, Zero};
use rand::seq::IndexedRandom;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use crate::error::{Error, Result};
use crate::exact::rational;
use crate::graph::{Edge, EdgeId, SpanningTree, TwoForest, VertexId, WeightedGraph};

/// Hard cap on the number of edges accepted by [`enumerate`].
pub const ENUMERATION_EDGE_LIMIT: usize = 24;

#[derive(Clone, Debug)]
pub struct WeightedTree {
    pub tree: SpanningTree,
    pub weight: BigRational,
}

#[derive(Clone, Debug)]
pub struct WeightedForest {
    pub forest: TwoForest,
    pub weight: BigRational,
    /// Σ_{e ∈ ∂Σ} c(e)
    pub boundary_conductance: BigRational,
}

/// All spanning trees and 2SFs of a graph, in lexicographic edge-id order.
#[derive(Clone, Debug)]
pub struct ExactCensus {
    graph: WeightedGraph,
    pub trees: Vec<WeightedTree>,
    pub two_forests: Vec<WeightedForest>,
    pub kappa: BigRational,
    pub kappa2: BigRational,
}

/// Union-find without path compression so unions can be undone.
pub(crate) struct RollbackSets {
    parent: Vec<usize>,
    size: Vec<usize>,
    history: Vec<Option<(usize, usize)>>,
}

impl RollbackSets {
    pub(crate) fn new(n: usize) -> Self {
        RollbackSets {
            parent: (0..n).collect(),
            size: vec![1; n],
            history: Vec::new(),
        }
    }

    pub(crate) fn find(&self, mut x: usize) -> usize {
        while self.parent[x] != x {
            x = self.parent[x];
        }
        x
    }

    pub(crate) fn union(&mut self, a: usize, b: usize) -> bool {
        let (mut a, mut b) = (self.find(a), self.find(b));
        if a == b {
            return false;
        }
        if self.size[a] < self.size[b] {
            std::mem::swap(&mut a, &mut b);
        }
        self.parent[b] = a;
        self.size[a] += self.size[b];
        self.history.push(Some((a, b)));
        true
    }

    pub(crate) fn undo(&mut self) {
        if let Some(Some((a, b))) = self.history.pop() {
            self.parent[b] = b;
            self.size[a] -= self.size[b];
        }
    }
}

/// Visits every acyclic edge subset of size `k` in lexicographic order.
fn acyclic_subsets(
    edges: &[Edge],
    n: usize,
    k: usize,
    mut visit: impl FnMut(&[EdgeId], &RollbackSets),
) {
    fn recurse(
        edges: &[Edge],
        start: usize,
        k: usize,
        chosen: &mut Vec<EdgeId>,
        sets: &mut RollbackSets,
        visit: &mut dyn FnMut(&[EdgeId], &RollbackSets),
    ) {
        if chosen.len() == k {
            visit(chosen, sets);
            return;
        }
        let need = k - chosen.len();
        for id in start..=edges.len() - need {
            let e = &edges[id];
            if sets.union(e.u, e.v) {
                chosen.push(id);
                recurse(edges, id + 1, k, chosen, sets, visit);
                chosen.pop();
                sets.undo();
            }
        }
    }
    if k > edges.len() {
        return;
    }
    let mut sets = RollbackSets::new(n);
    recurse(edges, 0, k, &mut Vec::with_capacity(k), &mut sets, &mut visit);
}

/// Enumerates all spanning trees and 2SFs. Fails with `TooLarge` above
/// [`ENUMERATION_EDGE_LIMIT`] edges.
pub fn enumerate(graph: &WeightedGraph) -> Result<ExactCensus> {
    if graph.edge_count() > ENUMERATION_EDGE_LIMIT {
        return Err(Error::TooLarge {
            edges: graph.edge_count(),
            limit: ENUMERATION_EDGE_LIMIT,
        });
    }
    let n = graph.vertex_count();
    let edges = graph.edges();
    let cond: Vec<BigRational> = edges.iter().map(|e| rational(e.conductance)).collect();
    let weight = |ids: &[EdgeId]| {
        ids.iter()
            .fold(BigRational::one(), |acc, &id| acc * &cond[id])
    };

    let mut trees = Vec::new();
    acyclic_subsets(edges, n, n - 1, |ids, _| {
        trees.push(WeightedTree {
            tree: SpanningTree { edges: ids.to_vec() },
            weight: weight(ids),
        });
    });

    let mut two_forests = Vec::new();
    acyclic_subsets(edges, n, n - 2, |ids, sets| {
        let root = sets.find(graph.boundary());
        let in_sigma: Vec<bool> = (0..n).map(|v| sets.find(v) != root).collect();
        let forest = TwoForest::from_membership(graph, ids.to_vec(), &in_sigma);
        let boundary_conductance = forest
            .boundary_edges
            .iter()
            .fold(BigRational::zero(), |acc, &id| acc + &cond[id]);
        two_forests.push(WeightedForest {
            weight: weight(ids),
            forest,
            boundary_conductance,
        });
    });

    let kappa = trees.iter().fold(BigRational::zero(), |acc, t| acc + &t.weight);
    let kappa2 = two_forests
        .iter()
        .fold(BigRational::zero(), |acc, f| acc + &f.weight);
    Ok(ExactCensus {
        graph: graph.clone(),
        trees,
        two_forests,
        kappa,
        kappa2,
    })
}

/// Quantities computable from a census by direct summation.
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum Statistic {
    Kappa,
    Kappa2,
    Ratio,
    ProbInSigma(VertexId),
    ProbPair(VertexId, VertexId),
    /// `P(v ∈ Σ | u ∈ Σ)`
    ProbConditional { v: VertexId, u: VertexId },
    ProbEdgeSeparates(EdgeId),
    ExpectedBoundary,
    MeanSize,
    SecondMoment,
    PinnedMean(VertexId),
}

impl Statistic {
    /// Parses a statistic id with its positional arguments.
    pub fn parse(id: &str, args: &[usize]) -> Result<Self> {
        let arity = |k: usize| -> Result<()> {
            if args.len() == k {
                Ok(())
            } else {
                Err(Error::InvalidArgument(format!(
                    "statistic `{id}` takes {k} argument(s), got {}",
                    args.len()
                )))
            }
        };
        let s = match id {
            "kappa" => Statistic::Kappa,
            "kappa2" => Statistic::Kappa2,
            "ratio" => Statistic::Ratio,
            "prob_in_sigma" => {
                arity(1)?;
                Statistic::ProbInSigma(args[0])
            }
            "prob_pair" => {
                arity(2)?;
                Statistic::ProbPair(args[0], args[1])
            }
            "prob_conditional" => {
                arity(2)?;
                Statistic::ProbConditional {
                    v: args[0],
                    u: args[1],
                }
            }
            "prob_edge_separates" => {
                arity(1)?;
                Statistic::ProbEdgeSeparates(args[0])
            }
            "expected_boundary" => Statistic::ExpectedBoundary,
            "mean_size" => Statistic::MeanSize,
            "second_moment" => Statistic::SecondMoment,
            "pinned_mean" => {
                arity(1)?;
                Statistic::PinnedMean(args[0])
            }
            other => return Err(Error::UnknownStatistic(other.to_string())),
        };
        if matches!(
            s,
            Statistic::Kappa
                | Statistic::Kappa2
                | Statistic::Ratio
                | Statistic::ExpectedBoundary
                | Statistic::MeanSize
                | Statistic::SecondMoment
        ) {
            arity(0)?;
        }
        Ok(s)
    }
}

impl ExactCensus {
    pub fn graph(&self) -> &WeightedGraph {
        &self.graph
    }

    fn forest_average(&self, f: impl Fn(&WeightedForest) -> BigRational) -> BigRational {
        let sum = self
            .two_forests
            .iter()
            .fold(BigRational::zero(), |acc, wf| acc + &wf.weight * f(wf));
        sum / &self.kappa2
    }

    fn indicator(b: bool) -> BigRational {
        if b {
            BigRational::one()
        } else {
            BigRational::zero()
        }
    }

    /// Exact value of a statistic by summation over the census.
    pub fn exact_statistic(&self, stat: &Statistic) -> Result<BigRational> {
        let g = &self.graph;
        Ok(match *stat {
            Statistic::Kappa => self.kappa.clone(),
            Statistic::Kappa2 => self.kappa2.clone(),
            Statistic::Ratio => &self.kappa2 / &self.kappa,
            Statistic::ProbInSigma(u) => {
                g.check_interior(u)?;
                self.forest_average(|wf| Self::indicator(wf.forest.contains(u)))
            }
            Statistic::ProbPair(u, v) => {
                g.check_interior(u)?;
                g.check_interior(v)?;
                self.forest_average(|wf| {
                    Self::indicator(wf.forest.contains(u) && wf.forest.contains(v))
                })
            }
            Statistic::ProbConditional { v, u } => {
                g.check_interior(u)?;
                g.check_vertex(v)?;
                let joint = self.forest_average(|wf| {
                    Self::indicator(wf.forest.contains(u) && wf.forest.contains(v))
                });
                let marginal = self.forest_average(|wf| Self::indicator(wf.forest.contains(u)));
                joint / marginal
            }
            Statistic::ProbEdgeSeparates(e) => {
                g.edge(e)?;
                self.forest_average(|wf| {
                    Self::indicator(wf.forest.boundary_edges.binary_search(&e).is_ok())
                })
            }
            Statistic::ExpectedBoundary => {
                self.forest_average(|wf| wf.boundary_conductance.clone())
            }
            Statistic::MeanSize => {
                self.forest_average(|wf| BigRational::from_integer(wf.forest.size().into()))
            }
            Statistic::SecondMoment => self.forest_average(|wf| {
                let s = BigRational::from_integer(wf.forest.size().into());
                &s * &s
            }),
            Statistic::PinnedMean(z0) => {
                g.check_interior(z0)?;
                let joint = self.forest_average(|wf| {
                    if wf.forest.contains(z0) {
                        BigRational::from_integer(wf.forest.size().into())
                    } else {
                        BigRational::zero()
                    }
                });
                let marginal = self.forest_average(|wf| Self::indicator(wf.forest.contains(z0)));
                joint / marginal
            }
        })
    }

    /// `exact_statistic` by string id.
    pub fn statistic_by_id(&self, id: &str, args: &[usize]) -> Result<BigRational> {
        self.exact_statistic(&Statistic::parse(id, args)?)
    }
}

/// Converts an exact rational to the nearest `f64`.
pub fn to_f64(x: &BigRational) -> f64 {
    use num_traits::ToPrimitive;
    x.to_f64().unwrap_or(f64::NAN)
}

/// Deterministic corpus of small connected graphs for oracle comparisons:
/// 2 to `max_vertices` vertices, at most `max_edges` edges (parallel edges
/// allowed), conductances drawn from {1/2, 1, 2}, random boundary.
pub fn random_corpus(count: usize, max_vertices: usize, max_edges: usize, seed: u64) -> Vec<WeightedGraph> {
    const CONDUCTANCES: [f64; 3] = [0.5, 1.0, 2.0];
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let mut out = Vec::with_capacity(count);
    while out.len() < count {
        let n = rng.random_range(2..=max_vertices);
        let m = rng.random_range(n - 1..=max_edges.max(n - 1));
        let mut edges = Vec::with_capacity(m);
        // random spanning tree, then extra edges
        for v in 1..n {
            let u = rng.random_range(0..v);
            edges.push(Edge::new(u, v, *CONDUCTANCES.choose(&mut rng).unwrap()));
        }
        while edges.len() < m {
            let u = rng.random_range(0..n);
            let v = rng.random_range(0..n);
            if u != v {
                edges.push(Edge::new(u, v, *CONDUCTANCES.choose(&mut rng).unwrap()));
            }
        }
        // shuffle vertex labels so the tree skeleton is not always rooted at 0
        let mut perm: Vec<usize> = (0..n).collect();
        for i in (1..n).rev() {
            perm.swap(i, rng.random_range(0..=i));
        }
        let edges = edges
            .into_iter()
            .map(|e| Edge::new(perm[e.u], perm[e.v], e.conductance));
        let b = rng.random_range(0..n);
        out.push(WeightedGraph::new(n, edges, b).expect("corpus graphs are connected"));
    }
    out
}

#[cfg(test)]
mod tests {
    use super::*;

    fn int(x: i64) -> BigRational {
        BigRational::from_integer(x.into())
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

    #[test]
    fn small_counts() {
        let k3 = WeightedGraph::new(
            3,
            [Edge::new(0, 1, 1.0), Edge::new(1, 2, 1.0), Edge::new(0, 2, 1.0)],
            2,
        )
        .unwrap();
        let c = enumerate(&k3).unwrap();
        assert_eq!((c.trees.len(), c.two_forests.len()), (3, 3));
        assert_eq!(c.statistic_by_id("prob_in_sigma", &[0]).unwrap(), int(2) / int(3));

        let c = enumerate(&c4()).unwrap();
        assert_eq!((c.trees.len(), c.two_forests.len()), (4, 6));
        assert_eq!(c.statistic_by_id("mean_size", &[]).unwrap(), int(5) / int(3));
        assert_eq!(c.statistic_by_id("ratio", &[]).unwrap(), int(3) / int(2));
        assert_eq!(c.statistic_by_id("pinned_mean", &[2]).unwrap(), int(2));
        assert_eq!(
            c.statistic_by_id("prob_conditional", &[1, 2]).unwrap(),
            int(1) / int(2)
        );

        let path = WeightedGraph::new(3, [Edge::new(0, 1, 1.0), Edge::new(1, 2, 1.0)], 2).unwrap();
        let c = enumerate(&path).unwrap();
        assert_eq!((c.trees.len(), c.two_forests.len()), (1, 2));
    }

    #[test]
    fn every_forest_has_a_boundary_edge() {
        for g in random_corpus(30, 6, 9, 11) {
            let c = enumerate(&g).unwrap();
            assert!(c.two_forests.iter().all(|f| !f.forest.boundary_edges.is_empty()));
        }
    }

    #[test]
    fn census_is_deterministic() {
        let g = &random_corpus(1, 6, 9, 5)[0];
        let a = enumerate(g).unwrap();
        let b = enumerate(g).unwrap();
        let ids = |c: &ExactCensus| -> Vec<Vec<EdgeId>> {
            c.two_forests.iter().map(|f| f.forest.edges.clone()).collect()
        };
        assert_eq!(ids(&a), ids(&b));
        let mut sorted = ids(&a);
        sorted.sort();
        assert_eq!(sorted, ids(&a));
    }

    #[test]
    fn errors() {
        let c = enumerate(&c4()).unwrap();
        assert!(matches!(
            c.statistic_by_id("three_point", &[]),
            Err(Error::UnknownStatistic(_))
        ));
        assert!(c.statistic_by_id("prob_in_sigma", &[0]).is_err());
        let n = 9;
        let big = WeightedGraph::new(
            n,
            (0..n).flat_map(|i| [Edge::new(i, (i + 1) % n, 1.0), Edge::new(i, (i + 2) % n, 1.0), Edge::new(i, (i + 3) % n, 1.0)]),
            0,
        )
        .unwrap();
        assert!(matches!(enumerate(&big), Err(Error::TooLarge { edges: 27, .. })));
    }
}

//! Exact random sampling of weighted spanning trees (Wilson's algorithm) and
//! two-component spanning forests, plus seeded parallel Monte Carlo
//! estimators.
//!
//! The forest sampler draws a weighted tree `T`, deletes one of its `n − 1`
//! edges uniformly, and accepts the resulting forest `F` with probability
//! `c_min / c(∂F)`. A given `F` is reached from every tree `F + e` with
//! `e ∈ ∂F`, so the proposal has `P(F) ∝ w(F)·c(∂F)`; the acceptance step
//! cancels the `c(∂F)` factor exactly. Since `∂F` is never empty,
//! `c(∂F) ≥ c_min` and the acceptance probability never exceeds one.

use std::collections::HashMap;

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use rayon::prelude::*;
use serde::Serialize;
use statrs::distribution::{ChiSquared, ContinuousCDF};

use crate::error::{Error, Result};
use crate::graph::{EdgeId, SpanningTree, TwoForest, VertexId, WeightedGraph};

/// Precomputed random-walk transition tables.
#[derive(Clone, Debug)]
pub struct WilsonSampler<'g> {
    graph: &'g WeightedGraph,
    /// Per vertex: running sums of neighbour conductances.
    cumulative: Vec<Vec<f64>>,
    uniform: bool,
}

/// A spanning tree stored as parent pointers toward `b`.
#[derive(Clone, Debug)]
pub struct RootedTree {
    /// `parent[v] = (w, e)`: the next vertex toward `b` and the edge used.
    pub parent: Vec<Option<(VertexId, EdgeId)>>,
}

impl RootedTree {
    pub fn to_spanning_tree(&self) -> SpanningTree {
        let mut edges: Vec<EdgeId> = self.parent.iter().flatten().map(|&(_, e)| e).collect();
        edges.sort_unstable();
        SpanningTree { edges }
    }
}

/// One accepted forest plus bookkeeping from the rejection loop.
#[derive(Clone, Debug)]
pub struct ForestDraw {
    pub in_sigma: Vec<bool>,
    pub size: usize,
    pub boundary_conductance: f64,
    /// Number of proposals consumed (≥ 1).
    pub attempts: u64,
    /// Importance weight `1/c(∂F)`; equal to one in rejection mode.
    pub weight: f64,
    tree: RootedTree,
    cut: VertexId,
}

impl ForestDraw {
    pub fn to_two_forest(&self, graph: &WeightedGraph) -> TwoForest {
        let mut edges: Vec<EdgeId> = self
            .tree
            .parent
            .iter()
            .enumerate()
            .filter(|&(v, _)| v != self.cut)
            .filter_map(|(_, p)| p.map(|(_, e)| e))
            .collect();
        edges.sort_unstable();
        TwoForest::from_membership(graph, edges, &self.in_sigma)
    }
}

impl<'g> WilsonSampler<'g> {
    pub fn new(graph: &'g WeightedGraph) -> Self {
        let first = graph.edges()[0].conductance;
        let uniform = graph.edges().iter().all(|e| e.conductance == first);
        let cumulative = (0..graph.vertex_count())
            .map(|v| {
                let mut acc = 0.0;
                graph
                    .neighbors(v)
                    .iter()
                    .map(|&(_, e)| {
                        acc += graph.edges()[e].conductance;
                        acc
                    })
                    .collect()
            })
            .collect();
        WilsonSampler {
            graph,
            cumulative,
            uniform,
        }
    }

    pub fn graph(&self) -> &WeightedGraph {
        self.graph
    }

    fn step<R: Rng + ?Sized>(&self, v: VertexId, rng: &mut R) -> (VertexId, EdgeId) {
        let nb = self.graph.neighbors(v);
        let i = if self.uniform {
            rng.random_range(0..nb.len())
        } else {
            let cum = &self.cumulative[v];
            let x = rng.random::<f64>() * cum[cum.len() - 1];
            cum.partition_point(|&c| c <= x).min(nb.len() - 1)
        };
        nb[i]
    }

    /// Wilson's algorithm rooted at `b`: loop-erased walks with steps
    /// proportional to conductance. The tree has probability `∝ ∏ c(e)`.
    pub fn sample_tree<R: Rng + ?Sized>(&self, rng: &mut R) -> RootedTree {
        let n = self.graph.vertex_count();
        let mut in_tree = vec![false; n];
        in_tree[self.graph.boundary()] = true;
        let mut next: Vec<Option<(VertexId, EdgeId)>> = vec![None; n];
        for start in 0..n {
            let mut v = start;
            while !in_tree[v] {
                next[v] = Some(self.step(v, rng));
                v = next[v].unwrap().0;
            }
            let mut v = start;
            while !in_tree[v] {
                in_tree[v] = true;
                v = next[v].unwrap().0;
            }
        }
        next[self.graph.boundary()] = None;
        RootedTree { parent: next }
    }

    /// Tree minus a uniform edge: returns (membership of Σ, cut vertex).
    fn propose<R: Rng + ?Sized>(&self, tree: &RootedTree, rng: &mut R) -> (Vec<bool>, VertexId) {
        let n = self.graph.vertex_count();
        let b = self.graph.boundary();
        // Every non-b vertex owns exactly one tree edge (to its parent).
        let mut cut = rng.random_range(0..n - 1);
        if cut >= b {
            cut += 1;
        }
        // 0 = unknown, 1 = below cut, 2 = not below cut
        let mut state = vec![0u8; n];
        state[cut] = 1;
        state[b] = 2;
        let mut path = Vec::new();
        for v in 0..n {
            let mut w = v;
            while state[w] == 0 {
                path.push(w);
                w = tree.parent[w].expect("non-root vertex has a parent").0;
            }
            let s = state[w];
            for &p in &path {
                state[p] = s;
            }
            path.clear();
        }
        (state.into_iter().map(|s| s == 1).collect(), cut)
    }

    fn cut_conductance(&self, in_sigma: &[bool]) -> f64 {
        self.graph
            .edges()
            .iter()
            .filter(|e| in_sigma[e.u] != in_sigma[e.v])
            .map(|e| e.conductance)
            .sum()
    }

    /// Exact draw from the weighted 2SF measure by rejection.
    pub fn sample_forest<R: Rng + ?Sized>(&self, rng: &mut R) -> ForestDraw {
        let c_min = self.graph.min_conductance();
        let mut attempts = 0;
        loop {
            attempts += 1;
            let tree = self.sample_tree(rng);
            let (in_sigma, cut) = self.propose(&tree, rng);
            let boundary_conductance = self.cut_conductance(&in_sigma);
            if rng.random::<f64>() * boundary_conductance < c_min {
                return ForestDraw {
                    size: in_sigma.iter().filter(|&&s| s).count(),
                    in_sigma,
                    boundary_conductance,
                    attempts,
                    weight: 1.0,
                    tree,
                    cut,
                };
            }
        }
    }

    /// One proposal with importance weight `1/c(∂F)` instead of rejection.
    pub fn sample_weighted_forest<R: Rng + ?Sized>(&self, rng: &mut R) -> ForestDraw {
        let tree = self.sample_tree(rng);
        let (in_sigma, cut) = self.propose(&tree, rng);
        let boundary_conductance = self.cut_conductance(&in_sigma);
        ForestDraw {
            size: in_sigma.iter().filter(|&&s| s).count(),
            in_sigma,
            boundary_conductance,
            attempts: 1,
            weight: 1.0 / boundary_conductance,
            tree,
            cut,
        }
    }
}

/// Convenience wrapper around [`WilsonSampler::sample_tree`].
pub fn sample_spanning_tree<R: Rng + ?Sized>(graph: &WeightedGraph, rng: &mut R) -> SpanningTree {
    WilsonSampler::new(graph).sample_tree(rng).to_spanning_tree()
}

/// Convenience wrapper around [`WilsonSampler::sample_forest`].
pub fn sample_two_forest<R: Rng + ?Sized>(graph: &WeightedGraph, rng: &mut R) -> Result<TwoForest> {
    if graph.vertex_count() < 2 {
        return Err(Error::InvalidArgument(
            "a two-component forest needs at least two vertices".into(),
        ));
    }
    Ok(WilsonSampler::new(graph).sample_forest(rng).to_two_forest(graph))
}

/// Per-sample observables understood by [`estimate`].
#[derive(Clone, Debug, PartialEq, Serialize)]
#[serde(tag = "kind", rename_all = "snake_case")]
pub enum SampleStatistic {
    MeanSize,
    SecondMoment,
    /// `E|Σ|^k`
    SizePower { k: u32 },
    /// Conductance-weighted `|∂Σ|`.
    BoundarySize,
    ProbInSigma { u: VertexId },
    ProbPair { u: VertexId, v: VertexId },
    /// `P(u, v, w ∈ Σ)`; with `w` absent this is the pair probability.
    ThreePoint {
        u: VertexId,
        v: VertexId,
        w: Option<VertexId>,
    },
    EdgeSeparates { e: EdgeId },
}

impl SampleStatistic {
    /// Parses `name` or `name:arg1,arg2,...`, e.g. `prob_pair:1,2`.
    pub fn parse(spec: &str) -> Result<Self> {
        let (name, args) = match spec.split_once(':') {
            Some((n, a)) => (n, a),
            None => (spec, ""),
        };
        let args: Vec<usize> = if args.is_empty() {
            Vec::new()
        } else {
            args.split(',')
                .map(|a| {
                    a.trim().parse().map_err(|_| {
                        Error::InvalidArgument(format!("bad argument `{a}` in statistic `{spec}`"))
                    })
                })
                .collect::<Result<_>>()?
        };
        let want = |k: std::ops::RangeInclusive<usize>| {
            if k.contains(&args.len()) {
                Ok(())
            } else {
                Err(Error::InvalidArgument(format!(
                    "statistic `{name}` takes {}..={} argument(s), got {}",
                    k.start(),
                    k.end(),
                    args.len()
                )))
            }
        };
        Ok(match name {
            "mean_size" => {
                want(0..=0)?;
                SampleStatistic::MeanSize
            }
            "second_moment" => {
                want(0..=0)?;
                SampleStatistic::SecondMoment
            }
            "size_power" => {
                want(1..=1)?;
                SampleStatistic::SizePower { k: args[0] as u32 }
            }
            "boundary_size" => {
                want(0..=0)?;
                SampleStatistic::BoundarySize
            }
            "prob_in_sigma" => {
                want(1..=1)?;
                SampleStatistic::ProbInSigma { u: args[0] }
            }
            "prob_pair" => {
                want(2..=2)?;
                SampleStatistic::ProbPair {
                    u: args[0],
                    v: args[1],
                }
            }
            "three_point" => {
                want(2..=3)?;
                SampleStatistic::ThreePoint {
                    u: args[0],
                    v: args[1],
                    w: args.get(2).copied(),
                }
            }
            "edge_separates" => {
                want(1..=1)?;
                SampleStatistic::EdgeSeparates { e: args[0] }
            }
            other => return Err(Error::UnknownStatistic(other.to_string())),
        })
    }

    fn validate(&self, graph: &WeightedGraph) -> Result<()> {
        match *self {
            SampleStatistic::ProbInSigma { u } => graph.check_vertex(u),
            SampleStatistic::ProbPair { u, v } => {
                graph.check_vertex(u)?;
                graph.check_vertex(v)
            }
            SampleStatistic::ThreePoint { u, v, w } => {
                graph.check_vertex(u)?;
                graph.check_vertex(v)?;
                w.map_or(Ok(()), |w| graph.check_vertex(w))
            }
            SampleStatistic::EdgeSeparates { e } => graph.edge(e).map(|_| ()),
            _ => Ok(()),
        }
    }

    pub fn evaluate(&self, graph: &WeightedGraph, draw: &ForestDraw) -> f64 {
        let s = &draw.in_sigma;
        let ind = |b: bool| if b { 1.0 } else { 0.0 };
        match *self {
            SampleStatistic::MeanSize => draw.size as f64,
            SampleStatistic::SecondMoment => (draw.size as f64).powi(2),
            SampleStatistic::SizePower { k } => (draw.size as f64).powi(k as i32),
            SampleStatistic::BoundarySize => draw.boundary_conductance,
            SampleStatistic::ProbInSigma { u } => ind(s[u]),
            SampleStatistic::ProbPair { u, v } => ind(s[u] && s[v]),
            SampleStatistic::ThreePoint { u, v, w } => ind(s[u] && s[v] && w.is_none_or(|w| s[w])),
            SampleStatistic::EdgeSeparates { e } => {
                let e = &graph.edges()[e];
                ind(s[e.u] != s[e.v])
            }
        }
    }
}

/// Rejection (exact) or self-normalized importance weighting.
#[derive(Clone, Copy, Debug, Default, PartialEq, Eq, Serialize)]
#[serde(rename_all = "snake_case")]
pub enum SamplingMode {
    #[default]
    Rejection,
    Importance,
}

#[derive(Clone, Copy, Debug, Serialize)]
pub struct SamplerConfig {
    pub samples: usize,
    pub seed: u64,
    pub workers: usize,
    pub mode: SamplingMode,
}

impl SamplerConfig {
    pub fn new(samples: usize, seed: u64) -> Self {
        SamplerConfig {
            samples,
            seed,
            workers: 1,
            mode: SamplingMode::Rejection,
        }
    }

    pub fn workers(mut self, workers: usize) -> Self {
        self.workers = workers.max(1);
        self
    }

    pub fn mode(mut self, mode: SamplingMode) -> Self {
        self.mode = mode;
        self
    }
}

/// The stream for worker `w`: same key, distinct ChaCha stream id.
pub fn worker_rng(seed: u64, worker: usize) -> ChaCha8Rng {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    rng.set_stream(worker as u64);
    rng
}

/// Draws `config.samples` forests, splitting them into contiguous per-worker
/// chunks so the output depends only on `(seed, workers)`. Results are
/// returned in worker order.
pub fn map_forests<T, F>(graph: &WeightedGraph, config: &SamplerConfig, f: F) -> Vec<T>
where
    T: Send,
    F: Fn(&ForestDraw) -> T + Sync,
{
    let sampler = WilsonSampler::new(graph);
    let workers = config.workers.max(1);
    let base = config.samples / workers;
    let extra = config.samples % workers;
    let chunks: Vec<Vec<T>> = (0..workers)
        .into_par_iter()
        .map(|w| {
            let count = base + usize::from(w < extra);
            let mut rng = worker_rng(config.seed, w);
            (0..count)
                .map(|_| {
                    let draw = match config.mode {
                        SamplingMode::Rejection => sampler.sample_forest(&mut rng),
                        SamplingMode::Importance => sampler.sample_weighted_forest(&mut rng),
                    };
                    f(&draw)
                })
                .collect()
        })
        .collect();
    chunks.into_iter().flatten().collect()
}

/// One row of a batch.
#[derive(Clone, Copy, Debug, PartialEq, Serialize)]
pub struct SampleRecord {
    pub size: usize,
    pub boundary_conductance: f64,
    pub attempts: u64,
    pub weight: f64,
    pub value: f64,
}

/// A reproducible Monte Carlo run and its estimate.
#[derive(Clone, Debug, Serialize)]
pub struct SampleBatch {
    pub seed: u64,
    pub count: usize,
    pub workers: usize,
    pub mode: SamplingMode,
    pub statistic: SampleStatistic,
    pub mean: f64,
    pub stderr: f64,
    /// Accepted samples per proposal.
    pub acceptance_rate: f64,
    pub records: Vec<SampleRecord>,
}

/// Runs a batch and estimates `statistic`.
pub fn run_batch(
    graph: &WeightedGraph,
    statistic: &SampleStatistic,
    config: &SamplerConfig,
) -> Result<SampleBatch> {
    if config.samples == 0 {
        return Err(Error::InvalidArgument("samples must be at least 1".into()));
    }
    if graph.vertex_count() < 2 {
        return Err(Error::InvalidArgument(
            "a two-component forest needs at least two vertices".into(),
        ));
    }
    statistic.validate(graph)?;
    let records = map_forests(graph, config, |d| SampleRecord {
        size: d.size,
        boundary_conductance: d.boundary_conductance,
        attempts: d.attempts,
        weight: d.weight,
        value: statistic.evaluate(graph, d),
    });
    let (mean, stderr) = match config.mode {
        SamplingMode::Rejection => mean_and_stderr(records.iter().map(|r| r.value)),
        SamplingMode::Importance => weighted_mean_and_stderr(records.iter().map(|r| (r.weight, r.value))),
    };
    let attempts: u64 = records.iter().map(|r| r.attempts).sum();
    Ok(SampleBatch {
        seed: config.seed,
        count: records.len(),
        workers: config.workers.max(1),
        mode: config.mode,
        statistic: statistic.clone(),
        mean,
        stderr,
        acceptance_rate: records.len() as f64 / attempts as f64,
        records,
    })
}

/// Monte Carlo `(mean, standard error)` of a statistic.
pub fn estimate(
    graph: &WeightedGraph,
    statistic: &str,
    samples: usize,
    seed: u64,
) -> Result<(f64, f64)> {
    let stat = SampleStatistic::parse(statistic)?;
    let batch = run_batch(graph, &stat, &SamplerConfig::new(samples, seed))?;
    Ok((batch.mean, batch.stderr))
}

/// Sample mean and standard error of the mean (two-pass).
pub fn mean_and_stderr(values: impl Iterator<Item = f64> + Clone) -> (f64, f64) {
    let n = values.clone().count() as f64;
    let mean = values.clone().sum::<f64>() / n;
    if n < 2.0 {
        return (mean, f64::NAN);
    }
    let var = values.map(|x| (x - mean).powi(2)).sum::<f64>() / (n - 1.0);
    (mean, (var / n).sqrt())
}

/// Self-normalized weighted mean with the delta-method standard error.
pub fn weighted_mean_and_stderr(pairs: impl Iterator<Item = (f64, f64)> + Clone) -> (f64, f64) {
    let total: f64 = pairs.clone().map(|(w, _)| w).sum();
    let mean = pairs.clone().map(|(w, x)| w * x).sum::<f64>() / total;
    let var: f64 = pairs.map(|(w, x)| (w * (x - mean)).powi(2)).sum();
    (mean, var.sqrt() / total)
}

/// Pearson χ² goodness-of-fit result.
#[derive(Clone, Copy, Debug, Serialize)]
pub struct ChiSquareTest {
    pub statistic: f64,
    pub degrees_of_freedom: usize,
    pub p_value: f64,
}

impl ChiSquareTest {
    pub fn passes(&self, significance: f64) -> bool {
        self.p_value >= significance
    }
}

/// χ² test of observed category counts against expected probabilities.
/// Categories with zero expected probability must have zero counts.
pub fn chi_square(observed: &[u64], expected: &[f64]) -> Result<ChiSquareTest> {
    if observed.len() != expected.len() || observed.is_empty() {
        return Err(Error::InvalidArgument(
            "observed and expected must be nonempty and of equal length".into(),
        ));
    }
    let n: u64 = observed.iter().sum();
    let mut stat = 0.0;
    let mut cells = 0;
    for (&o, &p) in observed.iter().zip(expected) {
        if p <= 0.0 {
            if o > 0 {
                return Ok(ChiSquareTest {
                    statistic: f64::INFINITY,
                    degrees_of_freedom: 0,
                    p_value: 0.0,
                });
            }
            continue;
        }
        let e = p * n as f64;
        stat += (o as f64 - e).powi(2) / e;
        cells += 1;
    }
    let dof = cells.max(2) - 1;
    let dist = ChiSquared::new(dof as f64).map_err(|e| Error::InvalidArgument(e.to_string()))?;
    Ok(ChiSquareTest {
        statistic: stat,
        degrees_of_freedom: dof,
        p_value: dist.sf(stat),
    })
}

/// Tallies sampled forests against a list of all forests (keyed by their
/// sorted edge sets). Unknown forests are an error.
pub fn forest_histogram(
    graph: &WeightedGraph,
    forests: &[Vec<EdgeId>],
    config: &SamplerConfig,
) -> Result<Vec<u64>> {
    let index: HashMap<&[EdgeId], usize> = forests
        .iter()
        .enumerate()
        .map(|(i, f)| (f.as_slice(), i))
        .collect();
    let drawn = map_forests(graph, config, |d| d.to_two_forest(graph).edges);
    let mut counts = vec![0u64; forests.len()];
    for edges in drawn {
        let i = index.get(edges.as_slice()).ok_or_else(|| {
            Error::BijectionViolation(format!("sampled edge set {edges:?} is not a 2SF"))
        })?;
        counts[*i] += 1;
    }
    Ok(counts)
}

/// Tallies Wilson trees against a list of all spanning trees.
pub fn tree_histogram(
    graph: &WeightedGraph,
    trees: &[Vec<EdgeId>],
    samples: usize,
    seed: u64,
) -> Result<Vec<u64>> {
    let index: HashMap<&[EdgeId], usize> = trees
        .iter()
        .enumerate()
        .map(|(i, t)| (t.as_slice(), i))
        .collect();
    let sampler = WilsonSampler::new(graph);
    let mut rng = worker_rng(seed, 0);
    let mut counts = vec![0u64; trees.len()];
    for _ in 0..samples {
        let t = sampler.sample_tree(&mut rng).to_spanning_tree();
        let i = index.get(t.edges.as_slice()).ok_or_else(|| {
            Error::BijectionViolation(format!("sampled edge set {:?} is not a tree", t.edges))
        })?;
        counts[*i] += 1;
    }
    Ok(counts)
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

    #[test]
    fn path_tree_is_forced() {
        let g = WeightedGraph::new(3, [Edge::new(0, 1, 0.5), Edge::new(1, 2, 2.0)], 2).unwrap();
        let mut rng = worker_rng(1, 0);
        for _ in 0..20 {
            assert_eq!(sample_spanning_tree(&g, &mut rng).edges, vec![0, 1]);
        }
    }

    #[test]
    fn forests_are_valid() {
        let g = c4();
        let mut rng = worker_rng(3, 0);
        for _ in 0..200 {
            let f = sample_two_forest(&g, &mut rng).unwrap();
            assert_eq!(f.edges.len(), 2);
            assert!(!f.floating.contains(&0));
            assert_eq!(g.classify(&f.edges).unwrap(), crate::graph::Subgraph::TwoForest(f));
        }
    }

    #[test]
    fn c4_mean_size() {
        let (m, se) = estimate(&c4(), "mean_size", 20_000, 11).unwrap();
        assert!((m - 5.0 / 3.0).abs() < 4.0 * se, "{m} ± {se}");
        let (m, se) = estimate(&c4(), "boundary_size", 2_000, 11).unwrap();
        assert_eq!((m, se), (2.0, 0.0));
    }

    #[test]
    fn importance_mode_agrees() {
        let cfg = SamplerConfig::new(20_000, 5).mode(SamplingMode::Importance);
        let b = run_batch(&c4(), &SampleStatistic::MeanSize, &cfg).unwrap();
        assert!((b.mean - 5.0 / 3.0).abs() < 4.0 * b.stderr);
        assert_eq!(b.acceptance_rate, 1.0);
    }

    #[test]
    fn deterministic_per_seed_and_workers() {
        let cfg = SamplerConfig::new(1000, 42).workers(3);
        let a = run_batch(&c4(), &SampleStatistic::MeanSize, &cfg).unwrap();
        let b = run_batch(&c4(), &SampleStatistic::MeanSize, &cfg).unwrap();
        assert_eq!(a.records, b.records);
        assert_eq!(a.mean.to_bits(), b.mean.to_bits());
    }

    #[test]
    fn parse_statistics() {
        assert_eq!(
            SampleStatistic::parse("three_point:1,2").unwrap(),
            SampleStatistic::ThreePoint { u: 1, v: 2, w: None }
        );
        assert_eq!(
            SampleStatistic::parse("size_power:3").unwrap(),
            SampleStatistic::SizePower { k: 3 }
        );
        assert!(matches!(
            SampleStatistic::parse("bogus"),
            Err(Error::UnknownStatistic(_))
        ));
        assert!(SampleStatistic::parse("prob_pair:1").is_err());
        assert!(SampleStatistic::parse("mean_size:1").is_err());
    }

    #[test]
    fn chi_square_uniform() {
        let t = chi_square(&[100, 100, 100], &[1.0 / 3.0; 3]).unwrap();
        assert_eq!(t.statistic, 0.0);
        assert!((t.p_value - 1.0).abs() < 1e-12);
        let t = chi_square(&[300, 0, 0], &[1.0 / 3.0; 3]).unwrap();
        assert!(t.p_value < 1e-10);
    }
}

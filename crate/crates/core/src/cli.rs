//! Command-line front end: `stats`, `verify`, `sample`, `lattice`, `dual`.
//!
//! Every command prints its resolved configuration next to its results, is
//! deterministic given its inputs (and, for sampling, seed and worker
//! count), and maps failures to exit codes 2 (input), 3 (numerical) and
//! 4 (verification).

use std::path::PathBuf;

use clap::{Args, Parser, Subcommand, ValueEnum};
use serde::Serialize;

use crate::census::{enumerate, to_f64, Statistic};
use crate::error::{Error, Result};
use crate::graph::WeightedGraph;
use crate::green::SolverOptions;
use crate::io::{format_float, load_graph, load_map, to_csv, to_json};
use crate::lattice::{self, LatticeFamily, LatticeSpec};
use crate::planar::{PlanarMap, UnicycleModel};
use crate::sampler::{self, SampleStatistic, SamplerConfig, SamplingMode};
use crate::stats::{ForestModel, RatioRule};

#[derive(Debug, Parser)]
#[command(name = "twoforest", version, about = "Random two-component spanning forests: exact statistics and sampling")]
pub struct Cli {
    #[command(subcommand)]
    pub command: Command,
}

#[derive(Debug, Subcommand)]
pub enum Command {
    /// Closed-form forest statistics with per-vertex and per-edge tables.
    Stats(StatsArgs),
    /// Compare closed forms against brute-force enumeration.
    Verify(VerifyArgs),
    /// Monte Carlo estimates from exact forest samples.
    Sample(SampleArgs),
    /// Lattice constants and finite-box diagnostics.
    Lattice(LatticeArgs),
    /// Spanning-unicycle statistics of a planar map via its dual.
    Dual(DualArgs),
}

#[derive(Clone, Copy, Debug, Default, PartialEq, Eq, Serialize, ValueEnum)]
#[serde(rename_all = "lowercase")]
pub enum Format {
    #[default]
    Json,
    Csv,
}

#[derive(Debug, Args, Clone, Serialize)]
pub struct GraphInput {
    /// Edge list (`u v [c]` per line) or JSON graph file.
    #[arg(long)]
    pub input: PathBuf,
    /// Boundary vertex: a label for edge lists (default `b`), an id for JSON.
    #[arg(long)]
    pub boundary: Option<String>,
}

impl GraphInput {
    fn load(&self) -> Result<WeightedGraph> {
        load_graph(&self.input, self.boundary.as_deref())
    }
}

#[derive(Debug, Args, Clone, Serialize)]
pub struct StatsArgs {
    #[command(flatten)]
    pub graph: GraphInput,
    #[arg(long, value_enum, default_value_t)]
    pub format: Format,
    /// Table emitted in CSV mode.
    #[arg(long, value_enum, default_value_t)]
    pub table: Table,
    /// Use the unweighted potential-kernel rule for κ₂/κ.
    #[arg(long)]
    pub strict_paper: bool,
}

#[derive(Clone, Copy, Debug, Default, PartialEq, Eq, Serialize, ValueEnum)]
#[serde(rename_all = "lowercase")]
pub enum Table {
    #[default]
    Vertices,
    Edges,
    Faces,
}

#[derive(Debug, Args, Clone, Serialize)]
pub struct VerifyArgs {
    #[command(flatten)]
    pub graph: GraphInput,
    #[arg(long, value_enum, default_value_t)]
    pub format: Format,
    /// Relative tolerance for closed form vs. enumeration.
    #[arg(long, default_value_t = 1e-9)]
    pub tolerance: f64,
    /// If set, also run χ² tests of the samplers with this many draws.
    #[arg(long)]
    pub samples: Option<f64>,
    #[arg(long, default_value_t = 1)]
    pub seed: u64,
    #[arg(long)]
    pub workers: Option<usize>,
    /// χ² significance level.
    #[arg(long, default_value_t = 1e-3)]
    pub significance: f64,
}

#[derive(Clone, Copy, Debug, Default, PartialEq, Eq, Serialize, ValueEnum)]
#[serde(rename_all = "lowercase")]
pub enum Emit {
    #[default]
    Summary,
    Records,
}

#[derive(Debug, Args, Clone, Serialize)]
pub struct SampleArgs {
    #[command(flatten)]
    pub graph: GraphInput,
    #[arg(long, default_value_t = 10_000.0)]
    pub samples: f64,
    #[arg(long, default_value_t = 1)]
    pub seed: u64,
    #[arg(long)]
    pub workers: Option<usize>,
    /// e.g. `mean_size`, `prob_pair:u,v`, `three_point:u,v,w`, `edge_separates:3`.
    #[arg(long, default_value = "mean_size")]
    pub stat: String,
    #[arg(long, value_enum, default_value_t)]
    pub emit: Emit,
    /// Importance weighting instead of rejection.
    #[arg(long)]
    pub importance: bool,
    #[arg(long, value_enum, default_value_t)]
    pub format: Format,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, ValueEnum)]
#[serde(rename_all = "kebab-case")]
pub enum Quantity {
    EllStar,
    Ratio,
    Rn,
    Rstar,
    Cd,
    GreenScaling,
}

#[derive(Debug, Args, Clone, Serialize)]
pub struct LatticeArgs {
    /// square, triangular, hexagonal, cubic<d>
    #[arg(long, default_value = "square")]
    pub family: String,
    #[arg(long, default_value_t = 8)]
    pub n: usize,
    #[arg(long, value_enum)]
    pub quantity: Quantity,
    /// Dimension for `rn` and `rstar` (defaults to the family's).
    #[arg(long)]
    pub dim: Option<usize>,
    /// Cuboid sides for `cd`, comma separated.
    #[arg(long, default_value = "1,1")]
    pub sides: String,
    #[arg(long, default_value_t = 201)]
    pub truncation: usize,
    /// Points for `green-scaling`, as `x,y`.
    #[arg(long, default_value = "0.25,0.5")]
    pub z: String,
    #[arg(long, default_value = "0.75,0.5")]
    pub zp: String,
    /// Accepted for uniformity; output is always JSON.
    #[arg(long)]
    pub json: bool,
}

#[derive(Debug, Args, Clone, Serialize)]
pub struct DualArgs {
    /// JSON planar map; if absent a free lattice patch is generated.
    #[arg(long)]
    pub input: Option<PathBuf>,
    #[arg(long, default_value = "square")]
    pub family: String,
    #[arg(long, default_value_t = 4)]
    pub n: usize,
    #[arg(long, value_enum, default_value_t)]
    pub format: Format,
    /// Table emitted in CSV mode (`faces` or `edges`).
    #[arg(long, value_enum, default_value_t = Table::Faces)]
    pub table: Table,
}

/// Resolved configuration echoed with every report.
#[derive(Clone, Debug, Serialize)]
pub struct RunConfig {
    pub command: &'static str,
    pub args: serde_json::Value,
    pub workers: Option<usize>,
    pub version: &'static str,
}

/// Printed output plus the error (if any) deciding the exit code.
#[derive(Debug)]
pub struct Outcome {
    pub output: String,
    pub error: Option<Error>,
}

impl Outcome {
    fn ok(output: String) -> Self {
        Outcome { output, error: None }
    }

    pub fn exit_code(&self) -> i32 {
        self.error.as_ref().map_or(0, Error::exit_code)
    }
}

fn config<T: Serialize>(command: &'static str, args: &T, workers: Option<usize>) -> Result<RunConfig> {
    Ok(RunConfig {
        command,
        args: serde_json::to_value(args)?,
        workers,
        version: env!("CARGO_PKG_VERSION"),
    })
}

fn resolve_workers(w: Option<usize>) -> usize {
    w.unwrap_or_else(|| std::thread::available_parallelism().map_or(1, |n| n.get()))
        .max(1)
}

fn count(x: f64, what: &str) -> Result<usize> {
    if x.is_finite() && x >= 1.0 && x.fract() == 0.0 {
        Ok(x as usize)
    } else {
        Err(Error::InvalidArgument(format!("{what} must be a positive integer, got {x}")))
    }
}

/// Runs one parsed command.
pub fn run(cli: &Cli) -> Outcome {
    let result = match &cli.command {
        Command::Stats(a) => cmd_stats(a),
        Command::Verify(a) => return cmd_verify(a).unwrap_or_else(fail),
        Command::Sample(a) => cmd_sample(a),
        Command::Lattice(a) => cmd_lattice(a),
        Command::Dual(a) => cmd_dual(a),
    };
    result.map(Outcome::ok).unwrap_or_else(fail)
}

fn fail(e: Error) -> Outcome {
    Outcome {
        output: String::new(),
        error: Some(e),
    }
}

#[derive(Serialize)]
struct Record {
    quantity: &'static str,
    value: f64,
    formula_id: &'static str,
}

#[derive(Serialize)]
struct StatsReport<'a> {
    config: RunConfig,
    statistics: crate::stats::ForestStatistics,
    records: Vec<Record>,
    vertices: &'a [crate::stats::VertexRow],
    edges: &'a [crate::stats::EdgeRow],
}

pub fn cmd_stats(args: &StatsArgs) -> Result<String> {
    let graph = args.graph.load()?;
    let rule = if args.strict_paper {
        RatioRule::Unweighted
    } else {
        RatioRule::Weighted
    };
    let model = ForestModel::with_rule(&graph, rule, SolverOptions::default())?;
    let s = model.statistics();
    let vertices = model.vertex_table();
    let edges = model.edge_table();
    if args.format == Format::Csv {
        return match args.table {
            Table::Edges => to_csv(
                &["edge", "u", "v", "conductance", "tree_probability", "prob_separates"],
                edges.iter().map(|r| {
                    vec![
                        r.edge.to_string(),
                        r.u.clone(),
                        r.v.clone(),
                        format_float(r.conductance),
                        format_float(r.tree_probability),
                        format_float(r.prob_separates),
                    ]
                }),
            ),
            _ => to_csv(
                &["vertex", "label", "green_diag", "prob_in_sigma", "pinned_mean_size"],
                vertices.iter().map(|r| {
                    vec![
                        r.vertex.to_string(),
                        r.label.clone(),
                        format_float(r.green_diag),
                        format_float(r.prob_in_sigma),
                        r.pinned_mean_size.map(format_float).unwrap_or_default(),
                    ]
                }),
            ),
        };
    }
    let records = vec![
        Record { quantity: "log_kappa", value: s.log_kappa, formula_id: "log_det_dirichlet_laplacian" },
        Record { quantity: "ratio_k2_k", value: s.ratio_k2_k, formula_id: "potential_kernel_sum" },
        Record { quantity: "log_kappa2", value: s.log_kappa2, formula_id: "log_kappa_plus_log_ratio" },
        Record { quantity: "expected_boundary", value: s.ell_star, formula_id: "vertices_minus_one_over_ratio" },
        Record { quantity: "mean_size", value: s.mean_size, formula_id: "green_trace_over_ratio" },
        Record { quantity: "second_moment", value: s.second_moment, formula_id: "green_total_over_ratio" },
        Record { quantity: "mean_resistance", value: s.mean_resistance, formula_id: "green_trace_over_vertices" },
        Record { quantity: "hitting_sum", value: s.hitting_sum, formula_id: "green_total_over_vertices" },
    ];
    to_json(&StatsReport {
        config: config("stats", args, None)?,
        statistics: s,
        records,
        vertices: &vertices,
        edges: &edges,
    })
}

/// One line of the verification table.
#[derive(Clone, Debug, Serialize)]
pub struct VerifyRow {
    pub quantity: String,
    pub formula: f64,
    pub oracle: f64,
    pub abs_error: f64,
    pub pass: bool,
}

/// Every closed-form statistic next to its enumerated value.
pub fn verification_rows(graph: &WeightedGraph, tolerance: f64) -> Result<Vec<VerifyRow>> {
    let census = enumerate(graph)?;
    let model = ForestModel::new(graph)?;
    let mut rows = Vec::new();
    let mut push = |name: String, formula: f64, stat: Statistic| -> Result<()> {
        let oracle = to_f64(&census.exact_statistic(&stat)?);
        let abs_error = (formula - oracle).abs();
        rows.push(VerifyRow {
            quantity: name,
            formula,
            oracle,
            abs_error,
            pass: abs_error <= tolerance * oracle.abs().max(f64::MIN_POSITIVE) || abs_error == 0.0,
        });
        Ok(())
    };
    push("kappa".into(), model.oracle().kappa(), Statistic::Kappa)?;
    push("kappa2".into(), model.log_kappa2().exp(), Statistic::Kappa2)?;
    push("ratio".into(), model.ratio_k2_k(), Statistic::Ratio)?;
    push("expected_boundary".into(), model.expected_boundary(), Statistic::ExpectedBoundary)?;
    let m = model.size_moments();
    push("mean_size".into(), m.mean, Statistic::MeanSize)?;
    push("second_moment".into(), m.second_moment, Statistic::SecondMoment)?;
    let label = |v| graph.label(v).to_string();
    let interior: Vec<_> = graph.interior().collect();
    for &u in &interior {
        push(format!("prob_in_sigma({})", label(u)), model.prob_in_sigma(u)?, Statistic::ProbInSigma(u))?;
        push(format!("pinned_mean({})", label(u)), model.pinned_mean_size(u)?, Statistic::PinnedMean(u))?;
        for &v in &interior {
            if u < v {
                push(
                    format!("prob_pair({},{})", label(u), label(v)),
                    model.prob_pair_in_sigma(u, v)?,
                    Statistic::ProbPair(u, v),
                )?;
            }
            if u != v {
                push(
                    format!("prob_conditional({}|{})", label(v), label(u)),
                    model.prob_conditional(v, u)?,
                    Statistic::ProbConditional { v, u },
                )?;
            }
        }
    }
    for e in 0..graph.edge_count() {
        push(format!("prob_edge_separates({e})"), model.prob_edge_separates(e)?, Statistic::ProbEdgeSeparates(e))?;
    }
    Ok(rows)
}

#[derive(Serialize)]
struct ChiRow {
    test: &'static str,
    samples: usize,
    categories: usize,
    statistic: f64,
    p_value: f64,
    pass: bool,
}

#[derive(Serialize)]
struct VerifyReport {
    config: RunConfig,
    tolerance: f64,
    rows: Vec<VerifyRow>,
    chi_square: Vec<ChiRow>,
    failures: usize,
}

pub fn cmd_verify(args: &VerifyArgs) -> Result<Outcome> {
    if args.tolerance.is_nan() || args.tolerance < 0.0 {
        return Err(Error::InvalidArgument(format!("tolerance must be nonnegative, got {}", args.tolerance)));
    }
    let graph = args.graph.load()?;
    let rows = verification_rows(&graph, args.tolerance)?;
    let mut chi = Vec::new();
    if let Some(samples) = args.samples {
        let samples = count(samples, "samples")?;
        let workers = resolve_workers(args.workers);
        let census = enumerate(&graph)?;
        let kappa = to_f64(&census.kappa);
        let kappa2 = to_f64(&census.kappa2);
        let forests: Vec<_> = census.two_forests.iter().map(|f| f.forest.edges.clone()).collect();
        let probs: Vec<f64> = census.two_forests.iter().map(|f| to_f64(&f.weight) / kappa2).collect();
        let cfg = SamplerConfig::new(samples, args.seed).workers(workers);
        let t = sampler::chi_square(&sampler::forest_histogram(&graph, &forests, &cfg)?, &probs)?;
        chi.push(ChiRow {
            test: "two_forest_distribution",
            samples,
            categories: forests.len(),
            statistic: t.statistic,
            p_value: t.p_value,
            pass: t.passes(args.significance),
        });
        let trees: Vec<_> = census.trees.iter().map(|t| t.tree.edges.clone()).collect();
        let probs: Vec<f64> = census.trees.iter().map(|t| to_f64(&t.weight) / kappa).collect();
        let t = sampler::chi_square(&sampler::tree_histogram(&graph, &trees, samples, args.seed)?, &probs)?;
        chi.push(ChiRow {
            test: "spanning_tree_distribution",
            samples,
            categories: trees.len(),
            statistic: t.statistic,
            p_value: t.p_value,
            pass: t.passes(args.significance),
        });
    }
    let checks = rows.len() + chi.len();
    let failures = rows.iter().filter(|r| !r.pass).count() + chi.iter().filter(|c| !c.pass).count();
    let output = if args.format == Format::Csv {
        to_csv(
            &["quantity", "formula", "oracle", "abs_error", "pass"],
            rows.iter().map(|r| {
                vec![
                    r.quantity.clone(),
                    format_float(r.formula),
                    format_float(r.oracle),
                    format_float(r.abs_error),
                    r.pass.to_string(),
                ]
            }),
        )?
    } else {
        to_json(&VerifyReport {
            config: config("verify", args, args.workers)?,
            tolerance: args.tolerance,
            rows,
            chi_square: chi,
            failures,
        })?
    };
    Ok(Outcome {
        output,
        error: (failures > 0).then_some(Error::VerificationFailed { failures, checks }),
    })
}

/// Rewrites vertex labels in a statistic spec to vertex ids.
fn resolve_statistic(graph: &WeightedGraph, spec: &str) -> Result<SampleStatistic> {
    let Some((name, args)) = spec.split_once(':') else {
        return SampleStatistic::parse(spec);
    };
    if name == "edge_separates" || name == "size_power" {
        return SampleStatistic::parse(spec);
    }
    let ids: Vec<String> = args
        .split(',')
        .map(|a| {
            let a = a.trim();
            match graph.vertex_by_label(a) {
                Some(v) => Ok(v.to_string()),
                None => Err(Error::InvalidArgument(format!("unknown vertex label `{a}`"))),
            }
        })
        .collect::<Result<_>>()?;
    SampleStatistic::parse(&format!("{name}:{}", ids.join(",")))
}

#[derive(Serialize)]
struct SampleReport<'a> {
    config: RunConfig,
    statistic: &'a SampleStatistic,
    mode: SamplingMode,
    count: usize,
    mean: f64,
    stderr: f64,
    acceptance_rate: f64,
    #[serde(skip_serializing_if = "Option::is_none")]
    records: Option<&'a [sampler::SampleRecord]>,
}

pub fn cmd_sample(args: &SampleArgs) -> Result<String> {
    let graph = args.graph.load()?;
    let stat = resolve_statistic(&graph, &args.stat)?;
    let workers = resolve_workers(args.workers);
    let mode = if args.importance {
        SamplingMode::Importance
    } else {
        SamplingMode::Rejection
    };
    let cfg = SamplerConfig::new(count(args.samples, "samples")?, args.seed)
        .workers(workers)
        .mode(mode);
    let batch = sampler::run_batch(&graph, &stat, &cfg)?;
    if args.format == Format::Csv {
        return to_csv(
            &["sample", "size", "boundary_conductance", "attempts", "weight", "value"],
            batch.records.iter().enumerate().map(|(i, r)| {
                vec![
                    i.to_string(),
                    r.size.to_string(),
                    format_float(r.boundary_conductance),
                    r.attempts.to_string(),
                    format_float(r.weight),
                    format_float(r.value),
                ]
            }),
        );
    }
    to_json(&SampleReport {
        config: config("sample", args, Some(workers))?,
        statistic: &stat,
        mode,
        count: batch.count,
        mean: batch.mean,
        stderr: batch.stderr,
        acceptance_rate: batch.acceptance_rate,
        records: (args.emit == Emit::Records).then_some(&batch.records[..]),
    })
}

fn parse_point(s: &str) -> Result<(f64, f64)> {
    let v = parse_floats(s)?;
    match v[..] {
        [x, y] => Ok((x, y)),
        _ => Err(Error::InvalidArgument(format!("expected `x,y`, got `{s}`"))),
    }
}

fn parse_floats(s: &str) -> Result<Vec<f64>> {
    s.split(',')
        .map(|x| {
            x.trim()
                .parse::<f64>()
                .map_err(|_| Error::InvalidArgument(format!("bad number `{x}`")))
        })
        .collect()
}

#[derive(Serialize)]
struct LatticeReport {
    config: RunConfig,
    quantity: Quantity,
    value: f64,
    #[serde(skip_serializing_if = "Option::is_none")]
    error: Option<f64>,
    #[serde(skip_serializing_if = "serde_json::Value::is_null")]
    details: serde_json::Value,
}

pub fn cmd_lattice(args: &LatticeArgs) -> Result<String> {
    let family: LatticeFamily = args.family.parse()?;
    let dim = args.dim.unwrap_or(match family {
        LatticeFamily::Cubic(d) => d,
        _ => 2,
    });
    let (value, error, details) = match args.quantity {
        Quantity::EllStar => {
            let spec = LatticeSpec::new(family, args.n);
            let l = lattice::build_lattice(&spec)?;
            let limit = lattice::ell_star_periodic(family)?;
            let v = lattice::ell_star_finite(&l.graph)?;
            let details = serde_json::json!({
                "side": spec.side(),
                "vertices": l.graph.vertex_count(),
                "periodic_limit": limit.to_string(),
            });
            (v, None, details)
        }
        Quantity::Ratio => (lattice::grid_ratio_check(args.n)?, None, serde_json::json!({"limit": 0.125})),
        Quantity::Rn => (lattice::r_n_eigensum(dim, args.n)?, None, serde_json::json!({"d": dim})),
        Quantity::Rstar => {
            let r = lattice::r_star(dim)?;
            (r.value, Some(r.error), serde_json::json!({"d": dim}))
        }
        Quantity::Cd => {
            let sides = parse_floats(&args.sides)?;
            let c = lattice::c_of_d(&sides, args.truncation)?;
            (c.value, Some(c.error), serde_json::json!({"sides": sides}))
        }
        Quantity::GreenScaling => {
            let g = lattice::green_scaling_check(args.n, parse_point(&args.z)?, parse_point(&args.zp)?)?;
            (g.ratio, None, serde_json::to_value(g)?)
        }
    };
    to_json(&LatticeReport {
        config: config("lattice", args, None)?,
        quantity: args.quantity,
        value,
        error,
        details,
    })
}

#[derive(Serialize)]
struct FaceRow {
    face: usize,
    outer: bool,
    degree: usize,
    prob_enclosed: f64,
}

#[derive(Serialize)]
struct CycleEdgeRow {
    edge: usize,
    prob_cycle: f64,
    prob_cycle_primal: f64,
}

#[derive(Serialize)]
struct DualReport {
    config: RunConfig,
    vertices: usize,
    edges: usize,
    faces: usize,
    outer_face: usize,
    dropped_loops: Vec<usize>,
    log_lambda: f64,
    log_kappa: f64,
    mean_area: f64,
    second_moment_area: f64,
    face_table: Vec<FaceRow>,
    edge_table: Vec<CycleEdgeRow>,
}

pub fn cmd_dual(args: &DualArgs) -> Result<String> {
    let map: PlanarMap = match &args.input {
        Some(path) => load_map(path)?,
        None => lattice::free_patch(args.family.parse()?, args.n)?,
    };
    let model = UnicycleModel::new(&map)?;
    let s = model.statistics()?;
    let face_table: Vec<FaceRow> = (0..map.face_count())
        .map(|f| FaceRow {
            face: f,
            outer: f == map.outer_face(),
            degree: map.faces()[f].len(),
            prob_enclosed: s.face_enclosure_probs[f],
        })
        .collect();
    let edge_table: Vec<CycleEdgeRow> = (0..map.graph().edge_count())
        .map(|e| CycleEdgeRow {
            edge: e,
            prob_cycle: s.cycle_edge_probs[e],
            prob_cycle_primal: s.cycle_edge_probs_primal[e],
        })
        .collect();
    if args.format == Format::Csv {
        return match args.table {
            Table::Edges => to_csv(
                &["edge", "prob_cycle", "prob_cycle_primal"],
                edge_table.iter().map(|r| {
                    vec![r.edge.to_string(), format_float(r.prob_cycle), format_float(r.prob_cycle_primal)]
                }),
            ),
            _ => to_csv(
                &["face", "outer", "degree", "prob_enclosed"],
                face_table.iter().map(|r| {
                    vec![
                        r.face.to_string(),
                        r.outer.to_string(),
                        r.degree.to_string(),
                        format_float(r.prob_enclosed),
                    ]
                }),
            ),
        };
    }
    to_json(&DualReport {
        config: config("dual", args, None)?,
        vertices: map.graph().vertex_count(),
        edges: map.graph().edge_count(),
        faces: map.face_count(),
        outer_face: map.outer_face(),
        dropped_loops: model.dual().dropped_loops.clone(),
        log_lambda: s.log_lambda,
        log_kappa: s.log_kappa,
        mean_area: s.mean_area,
        second_moment_area: s.second_moment_area,
        face_table,
        edge_table,
    })
}

use thiserror::Error;

/// Errors raised anywhere in the crate.
///
/// Variants are grouped by the CLI exit code they map to: input problems (2),
/// numerical failures (3) and verification failures (4).
#[derive(Debug, Error)]
pub enum Error {
    #[error("graph is disconnected: {components} components")]
    DisconnectedGraph { components: usize },

    #[error("edge {edge} has non-positive or non-finite conductance {conductance}")]
    NonpositiveConductance { edge: usize, conductance: f64 },

    #[error("edge {edge} is a self-loop at vertex {vertex}")]
    SelfLoop { edge: usize, vertex: usize },

    #[error("boundary vertex {0} is not a vertex of the graph")]
    InvalidBoundary(usize),

    #[error("invalid vertex {vertex}: {reason}")]
    InvalidVertex { vertex: usize, reason: &'static str },

    #[error("unknown edge {0}")]
    UnknownEdge(usize),

    #[error("edge list is empty")]
    EmptyGraph,

    #[error("Dirichlet Laplacian is not positive definite")]
    SingularMatrix,

    #[error("solver residual {residual:e} exceeds tolerance {tolerance:e}")]
    SolverResidual { residual: f64, tolerance: f64 },

    #[error("graph too large for enumeration: {edges} edges (limit {limit})")]
    TooLarge { edges: usize, limit: usize },

    #[error("unknown statistic `{0}`")]
    UnknownStatistic(String),

    #[error("unsupported lattice family: {0}")]
    UnsupportedFamily(String),

    #[error("lattice Green integral diverges in dimension {0}")]
    DivergentIntegral(usize),

    #[error("point ({0}, {1}) is not strictly inside the domain")]
    PointOnBoundary(f64, f64),

    #[error("map is not a planar embedding: {0}")]
    NonPlanarMap(String),

    #[error("duality bijection violated: {0}")]
    BijectionViolation(String),

    #[error("verification failed: {failures} of {checks} checks out of tolerance")]
    VerificationFailed { failures: usize, checks: usize },

    #[error("parse error on line {line}: {message}")]
    Parse { line: usize, message: String },

    #[error("invalid argument: {0}")]
    InvalidArgument(String),

    #[error(transparent)]
    Json(#[from] serde_json::Error),

    #[error(transparent)]
    Io(#[from] std::io::Error),
}

impl Error {
    /// Process exit code for the command-line front end.
    pub fn exit_code(&self) -> i32 {
        match self {
            Error::SingularMatrix
            | Error::SolverResidual { .. }
            | Error::BijectionViolation(_)
            | Error::DivergentIntegral(_) => 3,
            Error::VerificationFailed { .. } => 4,
            _ => 2,
        }
    }
}

pub type Result<T, E = Error> = std::result::Result<T, E>;

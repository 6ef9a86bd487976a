//! Random two-component spanning forests of weighted graphs.
//!
//! A 2-forest here is a spanning forest with exactly two components, one of
//! which contains a distinguished boundary vertex `b`; the other component
//! is written Σ. Forests and trees are weighted by the product of their
//! edge conductances. This crate provides
//!
//! * closed-form statistics through the Dirichlet Green's function
//!   ([`stats::ForestModel`]),
//! * exact rational oracles by enumeration ([`census`]) and by exact linear
//!   algebra ([`exact`]),
//! * exact samplers built on Wilson's algorithm ([`sampler`]),
//! * planar duality with spanning unicycles ([`planar`]),
//! * lattice constants and scaling diagnostics ([`lattice`]),
//! * file formats and the `twoforest` command line ([`io`], [`cli`]).

mod envelope;

pub mod census;
pub mod cli;
pub mod error;
pub mod exact;
pub mod graph;
pub mod green;
pub mod io;
pub mod lattice;
pub mod planar;
pub mod sampler;
pub mod stats;

pub use error::{Error, Result};
pub use graph::{Dart, Edge, EdgeId, SpanningTree, Subgraph, TwoForest, VertexId, WeightedGraph};
pub use green::{potential_kernel, GreenOracle, PotentialKernel, SolverOptions};
pub use stats::ForestModel;

//! Approximate counting and Gibbs sampling for the four-vertex model on
//! labeled 4-regular multigraphs.
//!
//! A configuration orients every edge so that each vertex has two arrows in
//! and two out, with only the four local patterns of weight `beta` or 1
//! allowed. The pipeline: decompose the instance into circuits, classify
//! shared vertices as agree/disagree, solve a GF(2) system choosing
//! initial-dart flips that make every pair ferromagnetic, reduce to an
//! Ising / even-subgraph instance, and run a worm-process Markov chain for
//! both a randomized partition-function estimator and a configuration
//! sampler. A dedicated planar path traces faces from a rotation system,
//! 2-colors them, rewrites slots canonically so circuits follow black-face
//! boundaries, and reduces to an Ising model on the black-face graph. A
//! windability analyzer decides the McQuillan condition for
//! arity-at-most-4 constraint functions by exact rational feasibility.
//!
//! Module map:
//!
//! - [`graph`] - instances, parsing, and the exact brute-force oracle
//! - [`circuits`] - circuit decomposition and the circuit graph
//! - [`parity`] - the GF(2) flip systems and their solver
//! - [`even_subgraph`] - ferromagnetic reduction, exact even sums, and the
//!   spin coupling
//! - [`worm`] - the worm-process kernel, simulation, and exact checks
//! - [`estimator`] - the telescoping-product estimator and the sampler
//! - [`planar`] - face tracing, 2-coloring, canonical labels, black faces
//! - [`windability`] - exact windability verdicts with certificates
//! - [`generate`] - fixtures and random instance generators
//! - [`cli`] - the `fourvertex` binary's subcommands
//!
//! Start with the runnable examples:
//!
//! ```bash
//! cargo run --release --example exact_oracle
//! cargo run --release --example circuit_decomposition
//! cargo run --release --example parity_fix
//! cargo run --release --example even_subgraph_reduction
//! cargo run --release --example worm_chain
//! cargo run --release --example estimate_partition
//! cargo run --release --example sample_configurations
//! cargo run --release --example planar_pipeline
//! cargo run --release --example windability_check
//! ```
//!
//! The `fourvertex` binary exposes the same operations as subcommands; see
//! the README for the instance file format.

pub mod circuits;
pub mod cli;
pub mod estimator;
pub mod even_subgraph;
pub mod generate;
pub mod graph;
pub mod parity;
pub mod planar;
pub mod rational;
pub mod windability;
pub mod worm;

pub use estimator::{estimate_partition, sample_configuration, Estimate, EstimatorConfig};
pub use even_subgraph::{EvenSubgraph, FerroIsingInstance, SpinAssignment};
pub use graph::{
    parse_instance, Dart, DartConfig, EdgeSpec, FourVertexInstance, InstanceError, Params,
    TooLarge,
};
pub use worm::{WormKernel, WormState};

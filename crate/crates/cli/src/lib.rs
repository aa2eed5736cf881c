//! Command-line surface and experiment runner for `spatialgen`.

pub mod error;
pub mod experiment;
pub mod measures;
pub mod spec;

pub use error::{CliError, CliResult};
pub use experiment::{run_experiment, worker_count, ExperimentConfig, ResultsTable};
pub use spec::{Artifact, ArtifactKind, GeneratorSpec, PerturbationSpec, SchellingSpec};

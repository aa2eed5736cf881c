//! Reference geosimulation models driven by generated configurations.

mod schelling;

pub use schelling::{
    init_schelling, run_schelling, segregation_index, step_schelling, trajectory_csv, Cell, SchellingRun,
    SchellingState,
};

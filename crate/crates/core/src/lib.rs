//! Synthetic spatial configurations for spatial sensitivity analysis.
//!
//! The crate generates rasters ([`gridgen`]), spatial networks ([`netgen`])
//! and point patterns ([`pointgen`]); perturbs existing configurations
//! ([`perturb`]); measures them ([`indicators`]); and embeds a Schelling
//! segregation model ([`models`]) to check how outcomes react to the spatial
//! input. Every stochastic operation takes an explicit [`RngStream`], so a
//! result is a pure function of its inputs and seed.

pub mod error;
pub mod geometry;
pub mod graph;
pub mod grid;
pub mod gridgen;
pub mod indicators;
pub mod models;
pub mod netgen;
pub mod network;
pub mod perturb;
pub mod pointgen;
pub mod points;
pub mod record;
pub mod rng;

pub use error::{Error, Result};
pub use geometry::{Point, Window};
pub use graph::{connected_components, shortest_paths, EdgeWeights, ShortestPaths};
pub use grid::Grid;
pub use network::{Edge, Node, SpatialNetwork};
pub use points::PointSet;
pub use record::IndicatorRecord;
pub use rng::RngStream;

//! Deterministic fixtures shared by the benches.

use spatialgen::gridgen::{generate_reaction_diffusion, ReactionDiffusionParams};
use spatialgen::netgen::generate_random_planar;
use spatialgen::pointgen::sample_homogeneous_poisson;
use spatialgen::{Grid, PointSet, RngStream, SpatialNetwork, Window};

pub fn density_grid(size: usize, seed: u64) -> Grid {
    let p = ReactionDiffusionParams { size, total_population: (size * size * 10) as f64, ..Default::default() };
    generate_reaction_diffusion(&p, &mut RngStream::new(seed)).expect("valid parameters")
}

pub fn planar_network(nodes: usize, seed: u64) -> SpatialNetwork {
    generate_random_planar(nodes, 0.3, &Window::unit(), &mut RngStream::new(seed)).expect("valid parameters")
}

pub fn csr_points(lambda: f64, seed: u64) -> PointSet {
    sample_homogeneous_poisson(lambda, &Window::unit(), &mut RngStream::new(seed)).expect("valid intensity")
}

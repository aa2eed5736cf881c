//! Spatial network generators.
//!
//! The planar generators share a Delaunay substrate: the random planar
//! network thins it, the gravity and cost-benefit heuristics grow an MST
//! inside it. The slime-mould model prunes any connected substrate, and the
//! city-system generator places rank-size weighted cities.

mod cities;
mod delaunay;
mod growth;
mod planar;
mod slime;

pub use cities::{generate_city_system, zipf_population, CityNetworkKind, CitySystemParams};
pub use delaunay::{delaunay, delaunay_point_set, delaunay_triangles};
pub use growth::{
    cost_benefit_network_with_trace, cost_benefit_score, generate_cost_benefit_network, generate_gravity_network,
    gravity_network_with_trace, gravity_score, CostBenefitParams, GravityParams,
};
pub use planar::{
    euclidean_mst, generate_random_planar, generate_tree_network, mst_of_edges, random_planar_from_positions,
    tree_network_from_positions,
};
pub use slime::{generate_slime_mould, kirchhoff_flows, KirchhoffSolution, SlimeMould, SlimeMouldParams};

use serde::{Deserialize, Serialize};

use crate::geometry::{Point, Window};
use crate::network::Node;
use crate::{Error, Result, RngStream, SpatialNetwork};

use super::growth::{generate_gravity_network, GravityParams};
use super::planar::euclidean_mst;

const MAX_PLACEMENT_ATTEMPTS: usize = 10_000;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "camelCase")]
pub enum CityNetworkKind {
    Tree,
    Gravity,
    Complete,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(rename_all = "camelCase")]
pub struct CitySystemParams {
    pub n_cities: usize,
    pub largest_population: f64,
    pub zipf_exponent: f64,
    #[serde(default)]
    pub min_separation: f64,
    pub network_kind: CityNetworkKind,
}

impl CitySystemParams {
    pub fn validate(&self) -> Result<()> {
        if self.n_cities == 0 {
            return Err(Error::param("nCities", "must be at least 1"));
        }
        if !(self.largest_population > 0.0) {
            return Err(Error::param("largestPopulation", "must be positive"));
        }
        if !(self.zipf_exponent > 0.0) {
            return Err(Error::param("zipfExponent", "must be positive"));
        }
        if !(self.min_separation >= 0.0) {
            return Err(Error::param("minSeparation", "must be non-negative"));
        }
        Ok(())
    }
}

/// Population of the city of 1-based `rank`: `P1 · rank^(−exponent)`.
pub fn zipf_population(largest: f64, exponent: f64, rank: usize) -> f64 {
    largest * (rank as f64).powf(-exponent)
}

/// Cities with rank-size populations at uniform positions at least
/// `minSeparation` apart, linked by the chosen network kind.
///
/// Each city gets up to 10⁴ placement attempts. The gravity variant uses
/// `gamma = 1`, a range of a quarter of the window diagonal, and as many
/// extra links as cities.
pub fn generate_city_system(p: &CitySystemParams, window: &Window, rng: &mut RngStream) -> Result<SpatialNetwork> {
    p.validate()?;
    let mut positions: Vec<Point> = Vec::with_capacity(p.n_cities);
    for _ in 0..p.n_cities {
        let mut placed = false;
        for _ in 0..MAX_PLACEMENT_ATTEMPTS {
            let c = window.sample(rng);
            if positions.iter().all(|q| q.distance(c) >= p.min_separation) {
                positions.push(c);
                placed = true;
                break;
            }
        }
        if !placed {
            return Err(Error::CannotPlaceCities {
                placed: positions.len(),
                requested: p.n_cities,
                separation: p.min_separation,
            });
        }
    }
    let nodes: Vec<Node> = positions
        .iter()
        .enumerate()
        .map(|(i, c)| Node::weighted(i as i64, c.x, c.y, zipf_population(p.largest_population, p.zipf_exponent, i + 1)))
        .collect();
    let weights: Vec<f64> = nodes.iter().map(|n| n.weight).collect();
    match p.network_kind {
        CityNetworkKind::Tree => SpatialNetwork::from_positions(&positions, Some(&weights), &euclidean_mst(&positions)),
        CityNetworkKind::Complete => {
            let pairs: Vec<(usize, usize)> =
                (0..positions.len()).flat_map(|i| (i + 1..positions.len()).map(move |j| (i, j))).collect();
            SpatialNetwork::from_positions(&positions, Some(&weights), &pairs)
        }
        CityNetworkKind::Gravity => {
            if nodes.len() < 2 {
                return SpatialNetwork::new(nodes, Vec::new(), false);
            }
            let gp = GravityParams { gamma: 1.0, interaction_range: window.diagonal() / 4.0, extra_edges: p.n_cities };
            generate_gravity_network(&nodes, &gp)
        }
    }
}

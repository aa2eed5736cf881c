//! Perturbation operators for rasters and networks.

use serde::{Deserialize, Serialize};

use crate::indicators::{betweenness_indexed, edge_betweenness};
use crate::network::Edge;
use crate::pointgen::sample_homogeneous_poisson;
use crate::{Error, Grid, Result, RngStream, SpatialNetwork};

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "camelCase")]
pub enum DeletionStrategy {
    /// Uniform draws without replacement.
    RandomUniform,
    /// Highest betweenness first (computed once on the input), ties by id.
    TargetedBetweennessDescending,
}

/// Adds i.i.d. `N(0, sigma²)` noise to each cell, clipped at zero.
pub fn perturb_grid_noise(grid: &Grid, sigma: f64, rng: &mut RngStream) -> Result<Grid> {
    if !(sigma >= 0.0 && sigma.is_finite()) {
        return Err(Error::param("sigma", "must be non-negative"));
    }
    if sigma == 0.0 {
        return Ok(grid.clone());
    }
    let values = grid.values().iter().map(|v| (v + rng.normal(0.0, sigma)).max(0.0)).collect();
    grid.with_values(values)
}

/// Adds `delta` to the cell containing each point of a homogeneous Poisson
/// process of intensity `lambda` over the grid extent. Also returns the
/// number of points.
pub fn perturb_grid_poisson_counted(grid: &Grid, lambda: f64, delta: f64, rng: &mut RngStream) -> Result<(Grid, usize)> {
    if !(delta > 0.0 && delta.is_finite()) {
        return Err(Error::param("delta", "must be positive"));
    }
    let pts = sample_homogeneous_poisson(lambda, &grid.extent(), rng)?;
    let mut values = grid.values().to_vec();
    for p in pts.points() {
        let cell = grid.cell_at(*p).expect("points sampled inside extent");
        values[cell] += delta;
    }
    Ok((grid.with_values(values)?, pts.len()))
}

pub fn perturb_grid_poisson(grid: &Grid, lambda: f64, delta: f64, rng: &mut RngStream) -> Result<Grid> {
    perturb_grid_poisson_counted(grid, lambda, delta, rng).map(|(g, _)| g)
}

/// Removes `k` nodes and their incident edges.
pub fn delete_nodes(net: &SpatialNetwork, k: usize, strategy: DeletionStrategy, rng: &mut RngStream) -> Result<SpatialNetwork> {
    let n = net.node_count();
    if k > n {
        return Err(Error::TooManyRemovals { requested: k, available: n });
    }
    let victims: Vec<usize> = match strategy {
        DeletionStrategy::RandomUniform => rng.sample_indices(n, k),
        DeletionStrategy::TargetedBetweennessDescending => {
            let bc = betweenness_indexed(net);
            top_k(&bc, k, |i| net.nodes()[i].id)
        }
    };
    let mut removed = vec![false; n];
    victims.iter().for_each(|&i| removed[i] = true);
    let nodes = net.nodes().iter().zip(&removed).filter(|(_, r)| !**r).map(|(n, _)| *n).collect();
    let edges = (0..net.edge_count())
        .filter(|&e| {
            let (a, b) = net.endpoints(e);
            !removed[a] && !removed[b]
        })
        .map(|e| net.edges()[e])
        .collect();
    SpatialNetwork::new(nodes, edges, net.is_directed())
}

/// Removes `k` edges; targeted deletion ranks by edge betweenness, ties by
/// edge position.
pub fn delete_links(net: &SpatialNetwork, k: usize, strategy: DeletionStrategy, rng: &mut RngStream) -> Result<SpatialNetwork> {
    let m = net.edge_count();
    if k > m {
        return Err(Error::TooManyRemovals { requested: k, available: m });
    }
    let victims: Vec<usize> = match strategy {
        DeletionStrategy::RandomUniform => rng.sample_indices(m, k),
        DeletionStrategy::TargetedBetweennessDescending => top_k(&edge_betweenness(net), k, |e| e as i64),
    };
    let mut removed = vec![false; m];
    victims.iter().for_each(|&e| removed[e] = true);
    let edges = net.edges().iter().zip(&removed).filter(|(_, r)| !**r).map(|(e, _)| *e).collect();
    net.with_edges(edges)
}

fn top_k(scores: &[f64], k: usize, tie_key: impl Fn(usize) -> i64) -> Vec<usize> {
    let mut order: Vec<usize> = (0..scores.len()).collect();
    order.sort_by(|&a, &b| scores[b].total_cmp(&scores[a]).then(tie_key(a).cmp(&tie_key(b))));
    order.truncate(k);
    order
}

/// Adds i.i.d. `N(0, sigma²)` noise to every coordinate and resets edge
/// lengths to the new straight-line distances. Free-flow times scale with
/// the length; capacities and topology are unchanged.
pub fn jitter_nodes(net: &SpatialNetwork, sigma: f64, rng: &mut RngStream) -> Result<SpatialNetwork> {
    if !(sigma >= 0.0 && sigma.is_finite()) {
        return Err(Error::param("sigma", "must be non-negative"));
    }
    if sigma == 0.0 {
        return Ok(net.clone());
    }
    let nodes: Vec<_> = net
        .nodes()
        .iter()
        .map(|n| {
            let mut n = *n;
            n.x += rng.normal(0.0, sigma);
            n.y += rng.normal(0.0, sigma);
            n
        })
        .collect();
    let pos = |id: i64| nodes[net.node_index(id).unwrap()].position();
    let mut edges = Vec::with_capacity(net.edge_count());
    for e in net.edges() {
        let length = pos(e.from).distance(pos(e.to));
        if !(length > 0.0) {
            return Err(Error::param("sigma", "jitter collapsed an edge to zero length"));
        }
        let time_per_length = e.free_flow_time / e.length;
        edges.push(Edge { length, free_flow_time: time_per_length * length, ..*e });
    }
    SpatialNetwork::new(nodes, edges, net.is_directed())
}

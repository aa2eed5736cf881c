//! Network growth heuristics over weighted nodes.
//!
//! Both start from the Euclidean MST and draw extra links from the Delaunay
//! edges not in the tree, which keeps the result planar.
//!
//! * gravity: rank candidates by `g_ij = (w_i·w_j)^gamma · e^(−d_ij/rg) / d_ij`
//!   and add the top `extraEdges`;
//! * cost-benefit: greedily add the candidate with the largest
//!   `B_ij = (w_i·w_j)^gamma − lambda·d_ij` while it is positive.
//!
//! Ties go to the lexicographically smaller `(i, j)` node-index pair.

use std::cmp::Ordering;

use serde::{Deserialize, Serialize};

use crate::geometry::Point;
use crate::network::{Edge, Node};
use crate::{Error, Result, SpatialNetwork};

use super::planar::delaunay_and_mst;

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(rename_all = "camelCase")]
pub struct GravityParams {
    pub gamma: f64,
    pub interaction_range: f64,
    pub extra_edges: usize,
}

impl GravityParams {
    pub fn validate(&self) -> Result<()> {
        if !(self.gamma >= 0.0) {
            return Err(Error::param("gamma", "must be non-negative"));
        }
        if !(self.interaction_range > 0.0) {
            return Err(Error::param("interactionRange", "must be positive"));
        }
        Ok(())
    }
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(rename_all = "camelCase")]
pub struct CostBenefitParams {
    pub lambda: f64,
    pub gamma: f64,
}

impl CostBenefitParams {
    pub fn validate(&self) -> Result<()> {
        if !(self.lambda >= 0.0) {
            return Err(Error::param("lambda", "must be non-negative"));
        }
        if !(self.gamma >= 0.0) {
            return Err(Error::param("gamma", "must be non-negative"));
        }
        Ok(())
    }
}

pub fn gravity_score(wi: f64, wj: f64, d: f64, gamma: f64, range: f64) -> f64 {
    (wi * wj).powf(gamma) * (-d / range).exp() / d
}

pub fn cost_benefit_score(wi: f64, wj: f64, d: f64, gamma: f64, lambda: f64) -> f64 {
    (wi * wj).powf(gamma) - lambda * d
}

fn check_nodes(nodes: &[Node], require_positive: bool) -> Result<()> {
    if nodes.len() < 2 {
        return Err(Error::param("nodes", "need at least 2 nodes"));
    }
    if require_positive && nodes.iter().any(|n| !(n.weight > 0.0)) {
        return Err(Error::param("nodes", "weights must be positive"));
    }
    Ok(())
}

struct Base {
    points: Vec<Point>,
    mst: Vec<(usize, usize)>,
    candidates: Vec<(usize, usize)>,
}

fn base(nodes: &[Node]) -> Result<Base> {
    let points: Vec<Point> = nodes.iter().map(Node::position).collect();
    let (dt, mut mst) = delaunay_and_mst(&points)?;
    mst.iter_mut().for_each(|e| *e = (e.0.min(e.1), e.0.max(e.1)));
    mst.sort_unstable();
    let candidates = dt.into_iter().filter(|e| mst.binary_search(e).is_err()).collect();
    Ok(Base { points, mst, candidates })
}

fn build(nodes: &[Node], points: &[Point], pairs: &[(usize, usize)]) -> Result<SpatialNetwork> {
    let edges = pairs
        .iter()
        .map(|&(a, b)| Edge::new(nodes[a].id, nodes[b].id, points[a].distance(points[b])))
        .collect();
    SpatialNetwork::new(nodes.to_vec(), edges, false)
}

fn by_score_desc(a: (f64, (usize, usize)), b: (f64, (usize, usize))) -> Ordering {
    b.0.total_cmp(&a.0).then(a.1.cmp(&b.1))
}

/// Gravity-breakdown network; also returns the added links in rank order.
pub fn gravity_network_with_trace(nodes: &[Node], p: &GravityParams) -> Result<(SpatialNetwork, Vec<(usize, usize)>)> {
    p.validate()?;
    check_nodes(nodes, true)?;
    let Base { points, mst, candidates } = base(nodes)?;
    let mut scored: Vec<(f64, (usize, usize))> = candidates
        .iter()
        .map(|&(i, j)| {
            let d = points[i].distance(points[j]);
            (gravity_score(nodes[i].weight, nodes[j].weight, d, p.gamma, p.interaction_range), (i, j))
        })
        .collect();
    scored.sort_by(|a, b| by_score_desc(*a, *b));
    let added: Vec<(usize, usize)> = scored.iter().take(p.extra_edges).map(|s| s.1).collect();
    let mut pairs = mst;
    pairs.extend(&added);
    Ok((build(nodes, &points, &pairs)?, added))
}

pub fn generate_gravity_network(nodes: &[Node], p: &GravityParams) -> Result<SpatialNetwork> {
    gravity_network_with_trace(nodes, p).map(|(n, _)| n)
}

/// Cost-benefit network; also returns the greedy insertion trace.
pub fn cost_benefit_network_with_trace(
    nodes: &[Node],
    p: &CostBenefitParams,
) -> Result<(SpatialNetwork, Vec<(usize, usize)>)> {
    p.validate()?;
    check_nodes(nodes, false)?;
    let Base { points, mst, mut candidates } = base(nodes)?;
    let benefit = |&(i, j): &(usize, usize)| {
        cost_benefit_score(nodes[i].weight, nodes[j].weight, points[i].distance(points[j]), p.gamma, p.lambda)
    };
    let mut trace = Vec::new();
    loop {
        let best = candidates
            .iter()
            .enumerate()
            .map(|(k, e)| (benefit(e), k, *e))
            .min_by(|a, b| by_score_desc((a.0, a.2), (b.0, b.2)));
        match best {
            Some((b, k, e)) if b > 0.0 => {
                trace.push(e);
                candidates.swap_remove(k);
            }
            _ => break,
        }
    }
    let mut pairs = mst;
    pairs.extend(&trace);
    Ok((build(nodes, &points, &pairs)?, trace))
}

pub fn generate_cost_benefit_network(nodes: &[Node], p: &CostBenefitParams) -> Result<SpatialNetwork> {
    cost_benefit_network_with_trace(nodes, p).map(|(n, _)| n)
}

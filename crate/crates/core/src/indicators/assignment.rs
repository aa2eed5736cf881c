//! All-or-nothing and static user-equilibrium traffic assignment.

use serde::{Deserialize, Serialize};

use crate::graph::{dijkstra, EdgeWeights};
use crate::{Error, Result, SpatialNetwork};

/// BPR link cost `t = t0·(1 + a·(f/c)^b)`.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
#[serde(default)]
pub struct BprParams {
    pub a: f64,
    pub b: f64,
}

impl Default for BprParams {
    fn default() -> Self {
        BprParams { a: 0.15, b: 4.0 }
    }
}

impl BprParams {
    pub fn validate(&self) -> Result<()> {
        if !(self.a >= 0.0) {
            return Err(Error::param("a", "must be non-negative"));
        }
        if !(self.b >= 1.0) {
            return Err(Error::param("b", "must be at least 1"));
        }
        Ok(())
    }

    #[inline]
    pub fn time(&self, free_flow_time: f64, capacity: f64, flow: f64) -> f64 {
        free_flow_time * (1.0 + self.a * (flow / capacity).powf(self.b))
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct OdPair {
    pub origin: i64,
    pub destination: i64,
    pub demand: f64,
}

#[derive(Debug, Clone, Default, PartialEq)]
pub struct OdMatrix {
    entries: Vec<OdPair>,
}

impl OdMatrix {
    pub fn new(entries: Vec<OdPair>) -> Result<Self> {
        for e in &entries {
            if e.origin == e.destination {
                return Err(Error::param("od", format!("origin equals destination ({})", e.origin)));
            }
            if !(e.demand >= 0.0 && e.demand.is_finite()) {
                return Err(Error::param("od", format!("demand must be non-negative, got {}", e.demand)));
            }
        }
        Ok(OdMatrix { entries })
    }

    pub fn entries(&self) -> &[OdPair] {
        &self.entries
    }

    pub fn total_demand(&self) -> f64 {
        self.entries.iter().map(|e| e.demand).sum()
    }
}

/// Edge flows split by travel direction relative to each edge's
/// `from → to` orientation (always forward on directed networks).
#[derive(Debug, Clone, PartialEq)]
pub struct Loading {
    pub forward: Vec<f64>,
    pub backward: Vec<f64>,
}

impl Loading {
    /// Flow per edge, both directions summed.
    pub fn total(&self) -> Vec<f64> {
        self.forward.iter().zip(&self.backward).map(|(f, b)| f + b).collect()
    }
}

/// Loads every OD demand on its minimum-time path.
///
/// Ties follow the shortest-path rule: smaller predecessor id, then smaller
/// edge index. Zero-demand pairs are ignored.
pub fn assign_all_or_nothing(net: &SpatialNetwork, od: &OdMatrix, times: &[f64]) -> Result<Loading> {
    let times = EdgeWeights::Custom(times).resolve(net)?;
    aon(net, od, &times).map(|(loading, _)| loading)
}

/// AON loading plus the total shortest-path cost `Σ_od demand·SP_od`.
fn aon(net: &SpatialNetwork, od: &OdMatrix, times: &[f64]) -> Result<(Loading, f64)> {
    let adj = net.adjacency();
    let rank: Vec<i64> = net.nodes().iter().map(|n| n.id).collect();
    let mut loading = Loading { forward: vec![0.0; net.edge_count()], backward: vec![0.0; net.edge_count()] };
    let mut cost = 0.0;
    let mut origins: Vec<i64> = Vec::new();
    for e in od.entries() {
        net.require_index(e.origin)?;
        net.require_index(e.destination)?;
        if e.demand > 0.0 && !origins.contains(&e.origin) {
            origins.push(e.origin);
        }
    }
    for origin in origins {
        let s = net.require_index(origin)?;
        let (dist, pred) = dijkstra(&adj, times, s, &rank);
        for e in od.entries().iter().filter(|e| e.origin == origin && e.demand > 0.0) {
            let mut v = net.require_index(e.destination)?;
            if dist[v].is_infinite() {
                return Err(Error::InfeasibleDemand { origin: e.origin, destination: e.destination });
            }
            cost += e.demand * dist[v];
            while let Some(p) = pred[v] {
                let (from, _) = net.endpoints(p.edge);
                if net.is_directed() || from == p.node {
                    loading.forward[p.edge] += e.demand;
                } else {
                    loading.backward[p.edge] += e.demand;
                }
                v = p.node;
            }
        }
    }
    Ok((loading, cost))
}

#[derive(Debug, Clone, PartialEq)]
pub struct Equilibrium {
    /// Per-edge flow (both directions summed) at the best iterate.
    pub flows: Vec<f64>,
    /// BPR times at those flows.
    pub times: Vec<f64>,
    pub relative_gap: f64,
    /// Number of gap evaluations performed.
    pub iterations: usize,
    /// Best relative gap seen after each iteration (non-increasing).
    pub gap_history: Vec<f64>,
}

/// Static user equilibrium by the method of successive averages.
///
/// Starting from all-or-nothing at free-flow times, iteration `k` computes
/// BPR times `t(f_k)`, the AON loading `y_k`, and the relative gap
/// `(Σ f·t − Σ y·t) / Σ f·t`; then `f_{k+1} = f_k + (y_k − f_k)/(k + 1)`.
/// Stops when the gap reaches `gap_tol` or after `max_iter` iterations and
/// returns the iterate with the smallest gap. Undirected edges congest on
/// their two-way total flow.
pub fn user_equilibrium(
    net: &SpatialNetwork,
    od: &OdMatrix,
    bpr: BprParams,
    max_iter: usize,
    gap_tol: f64,
) -> Result<Equilibrium> {
    bpr.validate()?;
    if max_iter == 0 {
        return Err(Error::param("maxIter", "must be at least 1"));
    }
    let edges = net.edges();
    let link_times =
        |f: &[f64]| -> Vec<f64> { edges.iter().zip(f).map(|(e, &q)| bpr.time(e.free_flow_time, e.capacity, q)).collect() };
    let free: Vec<f64> = edges.iter().map(|e| e.free_flow_time).collect();
    let mut flows = aon(net, od, &free)?.0.total();

    let mut best: Option<Equilibrium> = None;
    let mut history = Vec::with_capacity(max_iter);
    for k in 1..=max_iter {
        let times = link_times(&flows);
        let (target, sp_cost) = aon(net, od, &times)?;
        let target = target.total();
        let total_cost: f64 = flows.iter().zip(&times).map(|(f, t)| f * t).sum();
        let gap = if total_cost > 0.0 { ((total_cost - sp_cost) / total_cost).max(0.0) } else { 0.0 };
        if best.as_ref().map_or(true, |b| gap < b.relative_gap) {
            best = Some(Equilibrium {
                flows: flows.clone(),
                times: times.clone(),
                relative_gap: gap,
                iterations: k,
                gap_history: Vec::new(),
            });
        }
        history.push(best.as_ref().unwrap().relative_gap);
        if gap <= gap_tol || k == max_iter {
            break;
        }
        let step = 1.0 / (k as f64 + 1.0);
        for (f, y) in flows.iter_mut().zip(&target) {
            *f += step * (y - *f);
        }
    }
    let mut eq = best.expect("at least one iteration");
    eq.iterations = history.len();
    eq.gap_history = history;
    Ok(eq)
}

//! Slime-mould (Physarum) conductivity dynamics on a substrate network.
//!
//! Each iteration picks an ordered terminal pair, pushes current `I0` from
//! source to sink through edge conductances `D_e / L_e`, and updates
//! `D_e ← D_e + dt·(|Q_e|^γ / (1 + |Q_e|^γ) − μ·D_e)`. Edges that keep a
//! conductivity above the threshold form the output network.

use serde::{Deserialize, Serialize};

use crate::graph::{component_indices, is_connected, kruskal, UnionFind};
use crate::{Error, Result, RngStream, SpatialNetwork};

const INITIAL_CONDUCTIVITY: f64 = 1.0;

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(rename_all = "camelCase")]
pub struct SlimeMouldParams {
    pub iterations: usize,
    pub flow_amplification: f64,
    pub decay: f64,
    pub time_step: f64,
    pub input_flow: f64,
    pub keep_threshold: f64,
    /// Node ids eligible as source or sink.
    pub terminals: Vec<i64>,
}

impl SlimeMouldParams {
    pub fn validate(&self) -> Result<()> {
        if self.iterations == 0 {
            return Err(Error::param("iterations", "must be at least 1"));
        }
        for (name, v) in [
            ("flowAmplification", self.flow_amplification),
            ("decay", self.decay),
            ("timeStep", self.time_step),
            ("inputFlow", self.input_flow),
            ("keepThreshold", self.keep_threshold),
        ] {
            if !(v > 0.0 && v.is_finite()) {
                return Err(Error::param(name, "must be positive"));
            }
        }
        if self.time_step * self.decay >= 1.0 {
            return Err(Error::param("timeStep", "timeStep * decay must be below 1"));
        }
        if self.terminals.len() < 2 {
            return Err(Error::param("terminals", "need at least 2 terminals"));
        }
        Ok(())
    }

    /// Conductivity at which the update is stationary under constant flow `q`.
    pub fn fixed_point(&self, q: f64) -> f64 {
        let a = q.abs().powf(self.flow_amplification);
        a / (1.0 + a) / self.decay
    }
}

/// Node potentials and edge flows of one Kirchhoff solve.
#[derive(Debug, Clone)]
pub struct KirchhoffSolution {
    pub potentials: Vec<f64>,
    /// Flow along each edge in its `from → to` direction.
    pub flows: Vec<f64>,
}

/// Solves `Σ_j g_ij (p_i − p_j) = b_i` with `b = +inflow` at `source`,
/// `−inflow` at `sink`, grounded at the sink (`p_sink = 0`).
///
/// `conductances` are per edge (already divided by length). Edge direction
/// is ignored. Dense Gaussian elimination with partial pivoting.
pub fn kirchhoff_flows(
    net: &SpatialNetwork,
    conductances: &[f64],
    source: usize,
    sink: usize,
    inflow: f64,
) -> Result<KirchhoffSolution> {
    let n = net.node_count();
    assert_eq!(conductances.len(), net.edge_count());
    assert!(source != sink && source < n && sink < n);
    // reduced system skips the sink row/column
    let reduce = |i: usize| if i < sink { i } else { i - 1 };
    let m = n - 1;
    let mut a = vec![0.0; m * m];
    let mut rhs = vec![0.0; m];
    for (k, &g) in conductances.iter().enumerate() {
        let (u, v) = net.endpoints(k);
        if u != sink {
            a[reduce(u) * m + reduce(u)] += g;
        }
        if v != sink {
            a[reduce(v) * m + reduce(v)] += g;
        }
        if u != sink && v != sink {
            a[reduce(u) * m + reduce(v)] -= g;
            a[reduce(v) * m + reduce(u)] -= g;
        }
    }
    rhs[reduce(source)] = inflow;
    let scale = conductances.iter().copied().fold(0.0, f64::max).max(f64::MIN_POSITIVE);
    // connectivity is structural; only an exactly vanishing pivot means a floating component
    let x = solve_dense(&mut a, &mut rhs, m, 1e-300 * scale).ok_or(Error::SubstrateNotConnected)?;
    let mut potentials = vec![0.0; n];
    for i in 0..n {
        if i != sink {
            potentials[i] = x[reduce(i)];
        }
    }
    let flows = conductances
        .iter()
        .enumerate()
        .map(|(k, &g)| {
            let (u, v) = net.endpoints(k);
            g * (potentials[u] - potentials[v])
        })
        .collect();
    Ok(KirchhoffSolution { potentials, flows })
}

/// In-place Gaussian elimination with partial pivoting on a row-major `m×m`
/// matrix. Returns `None` when a pivot falls below `tol`.
fn solve_dense(a: &mut [f64], b: &mut [f64], m: usize, tol: f64) -> Option<Vec<f64>> {
    for col in 0..m {
        let pivot = (col..m).max_by(|&i, &j| a[i * m + col].abs().total_cmp(&a[j * m + col].abs()))?;
        if a[pivot * m + col].abs() <= tol {
            return None;
        }
        if pivot != col {
            for k in 0..m {
                a.swap(pivot * m + k, col * m + k);
            }
            b.swap(pivot, col);
        }
        let diag = a[col * m + col];
        for row in col + 1..m {
            let f = a[row * m + col] / diag;
            if f == 0.0 {
                continue;
            }
            for k in col..m {
                a[row * m + k] -= f * a[col * m + k];
            }
            b[row] -= f * b[col];
        }
    }
    let mut x = vec![0.0; m];
    for row in (0..m).rev() {
        let mut s = b[row];
        for k in row + 1..m {
            s -= a[row * m + k] * x[k];
        }
        x[row] = s / a[row * m + row];
    }
    Some(x)
}

/// Stateful simulation, for callers that want the conductivity trajectory.
#[derive(Debug, Clone)]
pub struct SlimeMould<'a> {
    substrate: &'a SpatialNetwork,
    params: SlimeMouldParams,
    terminals: Vec<usize>,
    conductivity: Vec<f64>,
}

impl<'a> SlimeMould<'a> {
    pub fn new(substrate: &'a SpatialNetwork, params: SlimeMouldParams) -> Result<Self> {
        Self::with_conductivity(substrate, params, vec![INITIAL_CONDUCTIVITY; substrate.edge_count()])
    }

    pub fn with_conductivity(substrate: &'a SpatialNetwork, params: SlimeMouldParams, conductivity: Vec<f64>) -> Result<Self> {
        params.validate()?;
        if conductivity.len() != substrate.edge_count() || conductivity.iter().any(|d| !(*d > 0.0)) {
            return Err(Error::param("conductivity", "need one positive value per edge"));
        }
        let mut terminals = Vec::with_capacity(params.terminals.len());
        for &id in &params.terminals {
            let i = substrate.require_index(id)?;
            if !terminals.contains(&i) {
                terminals.push(i);
            }
        }
        if terminals.len() < 2 {
            return Err(Error::param("terminals", "need at least 2 distinct terminals"));
        }
        if !is_connected(substrate) {
            return Err(Error::SubstrateNotConnected);
        }
        Ok(SlimeMould { substrate, params, terminals, conductivity })
    }

    pub fn conductivity(&self) -> &[f64] {
        &self.conductivity
    }

    /// Runs one iteration with the given node indices; returns the flows used.
    pub fn step_with(&mut self, source: usize, sink: usize) -> Result<KirchhoffSolution> {
        let g: Vec<f64> = self
            .conductivity
            .iter()
            .zip(self.substrate.edges())
            .map(|(d, e)| d / e.length)
            .collect();
        let sol = kirchhoff_flows(self.substrate, &g, source, sink, self.params.input_flow)?;
        let p = &self.params;
        for (d, q) in self.conductivity.iter_mut().zip(&sol.flows) {
            let a = q.abs().powf(p.flow_amplification);
            *d += p.time_step * (a / (1.0 + a) - p.decay * *d);
        }
        Ok(sol)
    }

    /// Draws an ordered pair of distinct terminals uniformly and steps.
    pub fn step(&mut self, rng: &mut RngStream) -> Result<KirchhoffSolution> {
        let t = self.terminals.len();
        let s = rng.below(t);
        let k = (s + 1 + rng.below(t - 1)) % t;
        self.step_with(self.terminals[s], self.terminals[k])
    }

    pub fn run(&mut self, rng: &mut RngStream) -> Result<()> {
        for _ in 0..self.params.iterations {
            self.step(rng)?;
        }
        Ok(())
    }

    /// Edges with conductivity at or above the threshold, reconnected with
    /// substrate MST edges when that leaves the network disconnected.
    pub fn extract(&self) -> Result<SpatialNetwork> {
        let edges = self.substrate.edges();
        let mut keep: Vec<bool> = self.conductivity.iter().map(|&d| d >= self.params.keep_threshold).collect();
        let selected = self.substrate.with_edges(select(edges, &keep))?;
        if component_indices(&selected).len() > 1 {
            let mut uf = UnionFind::new(self.substrate.node_count());
            for (k, _) in edges.iter().enumerate().filter(|(k, _)| keep[*k]) {
                let (a, b) = self.substrate.endpoints(k);
                uf.union(a, b);
            }
            let candidates: Vec<(usize, usize, f64)> = (0..edges.len())
                .map(|k| {
                    let (a, b) = self.substrate.endpoints(k);
                    (a, b, edges[k].length)
                })
                .collect();
            for k in kruskal(self.substrate.node_count(), &candidates) {
                let (a, b) = self.substrate.endpoints(k);
                if uf.union(a, b) {
                    keep[k] = true;
                }
            }
        }
        self.substrate.with_edges(select(edges, &keep))
    }
}

fn select(edges: &[crate::Edge], keep: &[bool]) -> Vec<crate::Edge> {
    edges.iter().zip(keep).filter(|(_, k)| **k).map(|(e, _)| *e).collect()
}

pub fn generate_slime_mould(substrate: &SpatialNetwork, p: &SlimeMouldParams, rng: &mut RngStream) -> Result<SpatialNetwork> {
    let mut sim = SlimeMould::new(substrate, p.clone())?;
    sim.run(rng)?;
    sim.extract()
}

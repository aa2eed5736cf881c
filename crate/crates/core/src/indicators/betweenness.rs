//! Brandes betweenness on length-weighted shortest paths.

use std::cmp::{Ordering, Reverse};
use std::collections::{BTreeMap, BinaryHeap};

use crate::SpatialNetwork;

const RELATIVE_TIE: f64 = 1e-12;

#[derive(Debug, Clone, Copy, PartialEq)]
struct Key(f64);

impl Eq for Key {}

impl PartialOrd for Key {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        Some(self.cmp(other))
    }
}

impl Ord for Key {
    fn cmp(&self, other: &Self) -> Ordering {
        self.0.total_cmp(&other.0)
    }
}

#[inline]
fn same_length(a: f64, b: f64) -> bool {
    (a - b).abs() <= RELATIVE_TIE * a.abs().max(b.abs())
}

/// Node and edge betweenness, indexed like `net.nodes()` / `net.edges()`.
///
/// Path lengths within a relative `1e-12` count as equal, so multiplicities
/// survive floating-point summation order. Undirected networks count each
/// unordered pair once; directed networks count ordered pairs. Endpoints are
/// excluded and nothing is normalized.
pub fn brandes(net: &SpatialNetwork) -> (Vec<f64>, Vec<f64>) {
    let n = net.node_count();
    let adj = net.adjacency();
    let len: Vec<f64> = net.edges().iter().map(|e| e.length).collect();
    let mut node_bc = vec![0.0; n];
    let mut edge_bc = vec![0.0; net.edge_count()];

    let mut dist = vec![f64::INFINITY; n];
    let mut sigma = vec![0.0f64; n];
    let mut delta = vec![0.0f64; n];
    let mut preds: Vec<Vec<(usize, usize)>> = vec![Vec::new(); n];
    let mut settled = vec![false; n];
    let mut order = Vec::with_capacity(n);
    let mut heap = BinaryHeap::new();

    for s in 0..n {
        dist.fill(f64::INFINITY);
        sigma.fill(0.0);
        delta.fill(0.0);
        settled.fill(false);
        preds.iter_mut().for_each(Vec::clear);
        order.clear();

        dist[s] = 0.0;
        sigma[s] = 1.0;
        heap.push(Reverse((Key(0.0), s)));
        while let Some(Reverse((Key(d), u))) = heap.pop() {
            if settled[u] || d > dist[u] {
                continue;
            }
            settled[u] = true;
            order.push(u);
            for arc in &adj[u] {
                let v = arc.to;
                if settled[v] {
                    continue;
                }
                let nd = d + len[arc.edge];
                if dist[v].is_infinite() || (nd < dist[v] && !same_length(nd, dist[v])) {
                    dist[v] = nd;
                    sigma[v] = sigma[u];
                    preds[v].clear();
                    preds[v].push((u, arc.edge));
                    heap.push(Reverse((Key(nd), v)));
                } else if same_length(nd, dist[v]) {
                    sigma[v] += sigma[u];
                    preds[v].push((u, arc.edge));
                }
            }
        }
        for &w in order.iter().rev() {
            for &(v, e) in &preds[w] {
                let c = sigma[v] / sigma[w] * (1.0 + delta[w]);
                edge_bc[e] += c;
                delta[v] += c;
            }
            if w != s {
                node_bc[w] += delta[w];
            }
        }
    }
    if !net.is_directed() {
        node_bc.iter_mut().for_each(|b| *b /= 2.0);
        edge_bc.iter_mut().for_each(|b| *b /= 2.0);
    }
    (node_bc, edge_bc)
}

pub fn betweenness_indexed(net: &SpatialNetwork) -> Vec<f64> {
    brandes(net).0
}

pub fn edge_betweenness(net: &SpatialNetwork) -> Vec<f64> {
    brandes(net).1
}

/// Node betweenness keyed by node id.
pub fn betweenness(net: &SpatialNetwork) -> BTreeMap<i64, f64> {
    net.nodes().iter().map(|n| n.id).zip(betweenness_indexed(net)).collect()
}

//! Graph primitives shared by generators and indicators: Dijkstra, connected
//! components, union-find and minimum spanning trees.

use std::cmp::{Ordering, Reverse};
use std::collections::{BTreeMap, BinaryHeap};

use crate::network::{Arc, SpatialNetwork};
use crate::{Error, Result};

/// Which edge attribute to minimize.
#[derive(Debug, Clone, Copy)]
pub enum EdgeWeights<'a> {
    Length,
    FreeFlowTime,
    /// One weight per edge, in edge order.
    Custom(&'a [f64]),
}

impl EdgeWeights<'_> {
    /// Materializes and validates the per-edge weights.
    pub fn resolve(&self, net: &SpatialNetwork) -> Result<Vec<f64>> {
        let w: Vec<f64> = match self {
            EdgeWeights::Length => net.edges().iter().map(|e| e.length).collect(),
            EdgeWeights::FreeFlowTime => net.edges().iter().map(|e| e.free_flow_time).collect(),
            EdgeWeights::Custom(w) => {
                if w.len() != net.edge_count() {
                    return Err(Error::param(
                        "weights",
                        format!("expected {} edge weights, got {}", net.edge_count(), w.len()),
                    ));
                }
                w.to_vec()
            }
        };
        if let Some((edge, &value)) = w.iter().enumerate().find(|(_, v)| !(**v > 0.0) || v.is_nan()) {
            return Err(Error::InvalidWeight { edge, value });
        }
        Ok(w)
    }
}

#[derive(Debug, Clone, Copy, PartialEq)]
struct Dist(f64);

impl Eq for Dist {}

impl PartialOrd for Dist {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        Some(self.cmp(other))
    }
}

impl Ord for Dist {
    fn cmp(&self, other: &Self) -> Ordering {
        self.0.total_cmp(&other.0)
    }
}

/// Predecessor of a node on its shortest-path tree.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct Pred {
    pub node: usize,
    pub edge: usize,
}

/// Index-level Dijkstra over an adjacency list.
///
/// `rank` orders nodes for tie-breaking (usually node ids): among equal-length
/// paths the predecessor with the smaller rank wins, then the smaller edge
/// index. Weights must already be validated positive.
pub fn dijkstra(adj: &[Vec<Arc>], weights: &[f64], source: usize, rank: &[i64]) -> (Vec<f64>, Vec<Option<Pred>>) {
    let n = adj.len();
    let mut dist = vec![f64::INFINITY; n];
    let mut pred: Vec<Option<Pred>> = vec![None; n];
    let mut done = vec![false; n];
    let mut heap = BinaryHeap::new();
    dist[source] = 0.0;
    heap.push(Reverse((Dist(0.0), rank[source], source)));
    while let Some(Reverse((Dist(d), _, u))) = heap.pop() {
        if done[u] {
            continue;
        }
        done[u] = true;
        for arc in &adj[u] {
            let v = arc.to;
            if v == source {
                continue;
            }
            let nd = d + weights[arc.edge];
            let better = match nd.total_cmp(&dist[v]) {
                Ordering::Less => true,
                Ordering::Equal => match pred[v] {
                    Some(p) => (rank[u], arc.edge) < (rank[p.node], p.edge),
                    None => true,
                },
                Ordering::Greater => false,
            };
            if better {
                let improved = nd < dist[v];
                dist[v] = nd;
                pred[v] = Some(Pred { node: u, edge: arc.edge });
                if improved && !done[v] {
                    heap.push(Reverse((Dist(nd), rank[v], v)));
                }
            }
        }
    }
    (dist, pred)
}

/// Single-source shortest-path tree, addressed by node id.
#[derive(Debug, Clone)]
pub struct ShortestPaths {
    source: i64,
    ids: Vec<i64>,
    dist: Vec<f64>,
    pred: Vec<Option<Pred>>,
}

impl ShortestPaths {
    pub fn source(&self) -> i64 {
        self.source
    }

    fn pos(&self, id: i64) -> Option<usize> {
        self.ids.iter().position(|&i| i == id)
    }

    /// `+∞` when unreachable, `None` for an unknown id.
    pub fn distance(&self, id: i64) -> Option<f64> {
        self.pos(id).map(|i| self.dist[i])
    }

    pub fn predecessor(&self, id: i64) -> Option<i64> {
        self.pos(id).and_then(|i| self.pred[i]).map(|p| self.ids[p.node])
    }

    /// Node ids from the source to `target`, or `None` when unreachable.
    pub fn path_to(&self, target: i64) -> Option<Vec<i64>> {
        let mut i = self.pos(target)?;
        if self.dist[i].is_infinite() {
            return None;
        }
        let mut path = vec![self.ids[i]];
        while let Some(p) = self.pred[i] {
            i = p.node;
            path.push(self.ids[i]);
        }
        path.reverse();
        Some(path)
    }

    pub fn distances(&self) -> &[f64] {
        &self.dist
    }

    /// id → (distance, predecessor id).
    pub fn to_map(&self) -> BTreeMap<i64, (f64, Option<i64>)> {
        self.ids
            .iter()
            .enumerate()
            .map(|(i, &id)| (id, (self.dist[i], self.pred[i].map(|p| self.ids[p.node]))))
            .collect()
    }
}

pub fn shortest_paths(net: &SpatialNetwork, weights: EdgeWeights<'_>, source: i64) -> Result<ShortestPaths> {
    let s = net.require_index(source)?;
    let w = weights.resolve(net)?;
    let ids: Vec<i64> = net.nodes().iter().map(|n| n.id).collect();
    let (dist, pred) = dijkstra(&net.adjacency(), &w, s, &ids);
    Ok(ShortestPaths { source, ids, dist, pred })
}

/// Disjoint-set forest with path halving and union by size.
#[derive(Debug, Clone)]
pub struct UnionFind {
    parent: Vec<usize>,
    size: Vec<usize>,
}

impl UnionFind {
    pub fn new(n: usize) -> Self {
        UnionFind { parent: (0..n).collect(), size: vec![1; n] }
    }

    pub fn find(&mut self, mut x: usize) -> usize {
        while self.parent[x] != x {
            self.parent[x] = self.parent[self.parent[x]];
            x = self.parent[x];
        }
        x
    }

    /// Returns false when already joined.
    pub fn union(&mut self, a: usize, b: usize) -> bool {
        let (mut a, mut b) = (self.find(a), self.find(b));
        if a == b {
            return false;
        }
        if self.size[a] < self.size[b] {
            std::mem::swap(&mut a, &mut b);
        }
        self.parent[b] = a;
        self.size[a] += self.size[b];
        true
    }
}

/// Connected components ignoring direction, as node-index lists.
///
/// Components are ordered by their smallest node index; members ascend.
pub fn component_indices(net: &SpatialNetwork) -> Vec<Vec<usize>> {
    let adj = net.undirected_adjacency();
    let n = adj.len();
    let mut label = vec![usize::MAX; n];
    let mut comps = Vec::new();
    for start in 0..n {
        if label[start] != usize::MAX {
            continue;
        }
        let c = comps.len();
        let mut members = vec![start];
        label[start] = c;
        let mut stack = vec![start];
        while let Some(u) = stack.pop() {
            for arc in &adj[u] {
                if label[arc.to] == usize::MAX {
                    label[arc.to] = c;
                    members.push(arc.to);
                    stack.push(arc.to);
                }
            }
        }
        members.sort_unstable();
        comps.push(members);
    }
    comps
}

/// Connected components (direction ignored) as sorted node-id sets.
pub fn connected_components(net: &SpatialNetwork) -> Vec<Vec<i64>> {
    component_indices(net)
        .into_iter()
        .map(|c| {
            let mut ids: Vec<i64> = c.into_iter().map(|i| net.nodes()[i].id).collect();
            ids.sort_unstable();
            ids
        })
        .collect()
}

pub fn is_connected(net: &SpatialNetwork) -> bool {
    net.node_count() <= 1 || component_indices(net).len() == 1
}

/// Kruskal over weighted `(a, b, w)` candidates on `n` vertices.
///
/// Candidates are taken in `(w, a, b)` order after normalizing `a < b`, so
/// the forest is deterministic under ties. Returns chosen candidate indices.
pub fn kruskal(n: usize, candidates: &[(usize, usize, f64)]) -> Vec<usize> {
    let mut order: Vec<usize> = (0..candidates.len()).collect();
    let key = |k: usize| {
        let (a, b, w) = candidates[k];
        (w, a.min(b), a.max(b))
    };
    order.sort_by(|&i, &j| {
        let (wi, ai, bi) = key(i);
        let (wj, aj, bj) = key(j);
        wi.total_cmp(&wj).then(ai.cmp(&aj)).then(bi.cmp(&bj)).then(i.cmp(&j))
    });
    let mut uf = UnionFind::new(n);
    let mut chosen = Vec::with_capacity(n.saturating_sub(1));
    for k in order {
        let (a, b, _) = candidates[k];
        if uf.union(a, b) {
            chosen.push(k);
        }
    }
    chosen
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::network::{Edge, Node};

    fn path_abc() -> SpatialNetwork {
        SpatialNetwork::new(
            vec![Node::new(0, 0.0, 0.0), Node::new(1, 1.0, 0.0), Node::new(2, 3.0, 0.0)],
            vec![Edge::new(0, 1, 1.0), Edge::new(1, 2, 2.0)],
            false,
        )
        .unwrap()
    }

    #[test]
    fn chain_distances() {
        let sp = shortest_paths(&path_abc(), EdgeWeights::Length, 0).unwrap();
        assert_eq!(sp.distance(0), Some(0.0));
        assert_eq!(sp.distance(1), Some(1.0));
        assert_eq!(sp.distance(2), Some(3.0));
        assert_eq!(sp.predecessor(2), Some(1));
        assert_eq!(sp.predecessor(0), None);
        assert_eq!(sp.path_to(2), Some(vec![0, 1, 2]));
    }

    #[test]
    fn unreachable_is_infinite() {
        let net = SpatialNetwork::new(vec![Node::new(0, 0.0, 0.0), Node::new(1, 1.0, 0.0)], vec![], false).unwrap();
        let sp = shortest_paths(&net, EdgeWeights::Length, 0).unwrap();
        assert_eq!(sp.distance(1), Some(f64::INFINITY));
        assert_eq!(sp.predecessor(1), None);
        assert_eq!(sp.path_to(1), None);
    }

    #[test]
    fn errors() {
        let net = path_abc();
        assert!(matches!(shortest_paths(&net, EdgeWeights::Length, 7), Err(Error::NoSuchNode(7))));
        let bad = [1.0, 0.0];
        let err = shortest_paths(&net, EdgeWeights::Custom(&bad), 0).unwrap_err();
        assert!(err.to_string().starts_with("invalid weight"));
    }

    #[test]
    fn directed_edges_one_way() {
        let net = SpatialNetwork::new(
            vec![Node::new(0, 0.0, 0.0), Node::new(1, 1.0, 0.0)],
            vec![Edge::new(0, 1, 1.0)],
            true,
        )
        .unwrap();
        let sp = shortest_paths(&net, EdgeWeights::Length, 1).unwrap();
        assert!(sp.distance(0).unwrap().is_infinite());
    }

    #[test]
    fn tie_prefers_smaller_predecessor_id() {
        // square 0-1-3 and 0-2-3, equal lengths
        let net = SpatialNetwork::new(
            vec![
                Node::new(0, 0.0, 0.0),
                Node::new(2, 1.0, 0.0),
                Node::new(1, 0.0, 1.0),
                Node::new(3, 1.0, 1.0),
            ],
            vec![Edge::new(0, 2, 1.0), Edge::new(2, 3, 1.0), Edge::new(0, 1, 1.0), Edge::new(1, 3, 1.0)],
            false,
        )
        .unwrap();
        let sp = shortest_paths(&net, EdgeWeights::Length, 0).unwrap();
        assert_eq!(sp.predecessor(3), Some(1));
    }

    #[test]
    fn components() {
        let tri = vec![Edge::new(0, 1, 1.0), Edge::new(1, 2, 1.5), Edge::new(0, 2, 1.0)];
        let nodes = vec![Node::new(0, 0.0, 0.0), Node::new(1, 1.0, 0.0), Node::new(2, 0.0, 1.0)];
        let net = SpatialNetwork::new(nodes.clone(), tri.clone(), false).unwrap();
        assert_eq!(connected_components(&net), vec![vec![0, 1, 2]]);
        let mut nodes4 = nodes;
        nodes4.push(Node::new(3, 5.0, 5.0));
        let net = SpatialNetwork::new(nodes4, tri, false).unwrap();
        let sizes: Vec<usize> = connected_components(&net).iter().map(Vec::len).collect();
        assert_eq!(sizes, vec![3, 1]);
    }

    #[test]
    fn kruskal_square() {
        let c = [(0, 1, 1.0), (1, 2, 1.0), (2, 3, 1.0), (3, 0, 1.0), (0, 2, 1.4)];
        let chosen = kruskal(4, &c);
        // (0,1), then (0,3) which normalizes ahead of (1,2)
        assert_eq!(chosen, vec![0, 3, 1]);
    }
}

//! Geometric graphs and their JSON form.

use std::collections::HashMap;
use std::fs;
use std::path::Path;

use serde::{Deserialize, Serialize};

use crate::geometry::Point;
use crate::{Error, Result};

const LENGTH_TOLERANCE: f64 = 1e-9;

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct Node {
    pub id: i64,
    pub x: f64,
    pub y: f64,
    pub weight: f64,
}

impl Node {
    pub fn new(id: i64, x: f64, y: f64) -> Self {
        Node { id, x, y, weight: 1.0 }
    }

    pub fn weighted(id: i64, x: f64, y: f64, weight: f64) -> Self {
        Node { id, x, y, weight }
    }

    pub fn position(&self) -> Point {
        Point::new(self.x, self.y)
    }
}

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct Edge {
    pub from: i64,
    pub to: i64,
    pub length: f64,
    pub capacity: f64,
    pub free_flow_time: f64,
}

impl Edge {
    /// Edge with unit capacity and free-flow time equal to its length.
    pub fn new(from: i64, to: i64, length: f64) -> Self {
        Edge { from, to, length, capacity: 1.0, free_flow_time: length }
    }
}

/// Traversal record in an adjacency list: the neighbor's node index and the
/// edge index used to reach it.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct Arc {
    pub to: usize,
    pub edge: usize,
}

#[derive(Debug, Clone)]
pub struct SpatialNetwork {
    nodes: Vec<Node>,
    edges: Vec<Edge>,
    directed: bool,
    index: HashMap<i64, usize>,
}

impl PartialEq for SpatialNetwork {
    fn eq(&self, other: &Self) -> bool {
        self.directed == other.directed && self.nodes == other.nodes && self.edges == other.edges
    }
}

impl SpatialNetwork {
    /// Validates and builds a network.
    pub fn new(nodes: Vec<Node>, edges: Vec<Edge>, directed: bool) -> Result<Self> {
        let mut index = HashMap::with_capacity(nodes.len());
        for (i, n) in nodes.iter().enumerate() {
            if !(n.x.is_finite() && n.y.is_finite()) {
                return Err(Error::param("nodes", format!("node {} has non-finite coordinates", n.id)));
            }
            if !(n.weight >= 0.0) {
                return Err(Error::param("nodes", format!("node {} has negative weight {}", n.id, n.weight)));
            }
            if index.insert(n.id, i).is_some() {
                return Err(Error::DuplicateNode(n.id));
            }
        }
        for (k, e) in edges.iter().enumerate() {
            let (Some(&a), Some(&b)) = (index.get(&e.from), index.get(&e.to)) else {
                return Err(Error::DanglingEdge { from: e.from, to: e.to });
            };
            if a == b {
                return Err(Error::SelfLoop(e.from));
            }
            for v in [e.length, e.capacity, e.free_flow_time] {
                if !(v > 0.0 && v.is_finite()) {
                    return Err(Error::InvalidWeight { edge: k, value: v });
                }
            }
            let euclid = nodes[a].position().distance(nodes[b].position());
            if e.length < euclid - LENGTH_TOLERANCE * euclid.max(1.0) {
                return Err(Error::EdgeTooShort { from: e.from, to: e.to, length: e.length, euclid });
            }
        }
        Ok(SpatialNetwork { nodes, edges, directed, index })
    }

    /// Undirected network with ids `0..n`, unit weights unless given, and
    /// straight edges between the listed index pairs.
    pub fn from_positions(positions: &[Point], weights: Option<&[f64]>, pairs: &[(usize, usize)]) -> Result<Self> {
        let nodes = positions
            .iter()
            .enumerate()
            .map(|(i, p)| Node::weighted(i as i64, p.x, p.y, weights.map_or(1.0, |w| w[i])))
            .collect::<Vec<_>>();
        let edges = pairs
            .iter()
            .map(|&(a, b)| Edge::new(a as i64, b as i64, positions[a].distance(positions[b])))
            .collect();
        Self::new(nodes, edges, false)
    }

    pub fn nodes(&self) -> &[Node] {
        &self.nodes
    }

    pub fn edges(&self) -> &[Edge] {
        &self.edges
    }

    pub fn is_directed(&self) -> bool {
        self.directed
    }

    pub fn node_count(&self) -> usize {
        self.nodes.len()
    }

    pub fn edge_count(&self) -> usize {
        self.edges.len()
    }

    pub fn node_index(&self, id: i64) -> Option<usize> {
        self.index.get(&id).copied()
    }

    pub fn require_index(&self, id: i64) -> Result<usize> {
        self.node_index(id).ok_or(Error::NoSuchNode(id))
    }

    pub fn node(&self, id: i64) -> Option<&Node> {
        self.node_index(id).map(|i| &self.nodes[i])
    }

    /// Node indices of an edge's endpoints.
    pub fn endpoints(&self, edge: usize) -> (usize, usize) {
        let e = &self.edges[edge];
        (self.index[&e.from], self.index[&e.to])
    }

    pub fn positions(&self) -> Vec<Point> {
        self.nodes.iter().map(Node::position).collect()
    }

    pub fn total_length(&self) -> f64 {
        self.edges.iter().map(|e| e.length).sum()
    }

    /// Outgoing arcs per node index. Undirected edges appear in both lists.
    pub fn adjacency(&self) -> Vec<Vec<Arc>> {
        let mut adj = vec![Vec::new(); self.nodes.len()];
        for k in 0..self.edges.len() {
            let (a, b) = self.endpoints(k);
            adj[a].push(Arc { to: b, edge: k });
            if !self.directed {
                adj[b].push(Arc { to: a, edge: k });
            }
        }
        adj
    }

    /// Adjacency ignoring edge direction.
    pub fn undirected_adjacency(&self) -> Vec<Vec<Arc>> {
        let mut adj = vec![Vec::new(); self.nodes.len()];
        for k in 0..self.edges.len() {
            let (a, b) = self.endpoints(k);
            adj[a].push(Arc { to: b, edge: k });
            adj[b].push(Arc { to: a, edge: k });
        }
        adj
    }

    /// Edge list as sorted `(min id, max id)` pairs (direction ignored).
    pub fn edge_pairs(&self) -> Vec<(i64, i64)> {
        let mut pairs: Vec<(i64, i64)> = self.edges.iter().map(|e| (e.from.min(e.to), e.from.max(e.to))).collect();
        pairs.sort_unstable();
        pairs
    }

    pub fn with_edges(&self, edges: Vec<Edge>) -> Result<Self> {
        Self::new(self.nodes.clone(), edges, self.directed)
    }

    pub fn to_json_string(&self) -> Result<String> {
        let doc = NetworkDoc {
            directed: self.directed,
            nodes: self
                .nodes
                .iter()
                .map(|n| NodeDoc { id: n.id, x: n.x, y: n.y, weight: Some(n.weight) })
                .collect(),
            edges: self
                .edges
                .iter()
                .map(|e| EdgeDoc {
                    from: e.from,
                    to: e.to,
                    length: Some(e.length),
                    capacity: Some(e.capacity),
                    free_flow_time: Some(e.free_flow_time),
                })
                .collect(),
        };
        Ok(serde_json::to_string_pretty(&doc)?)
    }

    pub fn parse_json(text: &str) -> Result<Self> {
        let doc: NetworkDoc = serde_json::from_str(text)?;
        let nodes: Vec<Node> = doc
            .nodes
            .iter()
            .map(|n| Node::weighted(n.id, n.x, n.y, n.weight.unwrap_or(1.0)))
            .collect();
        let pos: HashMap<i64, Point> = nodes.iter().map(|n| (n.id, n.position())).collect();
        let mut edges = Vec::with_capacity(doc.edges.len());
        for e in &doc.edges {
            let length = match e.length {
                Some(l) => l,
                None => match (pos.get(&e.from), pos.get(&e.to)) {
                    (Some(a), Some(b)) => a.distance(*b),
                    _ => return Err(Error::DanglingEdge { from: e.from, to: e.to }),
                },
            };
            edges.push(Edge {
                from: e.from,
                to: e.to,
                length,
                capacity: e.capacity.unwrap_or(1.0),
                free_flow_time: e.free_flow_time.unwrap_or(length),
            });
        }
        Self::new(nodes, edges, doc.directed)
    }

    pub fn read_json(path: impl AsRef<Path>) -> Result<Self> {
        Self::parse_json(&fs::read_to_string(path)?)
    }

    pub fn write_json(&self, path: impl AsRef<Path>) -> Result<()> {
        let mut text = self.to_json_string()?;
        text.push('\n');
        fs::write(path, text)?;
        Ok(())
    }
}

#[derive(Serialize, Deserialize)]
struct NetworkDoc {
    #[serde(default)]
    directed: bool,
    nodes: Vec<NodeDoc>,
    #[serde(default)]
    edges: Vec<EdgeDoc>,
}

#[derive(Serialize, Deserialize)]
struct NodeDoc {
    id: i64,
    x: f64,
    y: f64,
    #[serde(default)]
    weight: Option<f64>,
}

#[derive(Serialize, Deserialize)]
#[serde(rename_all = "camelCase")]
struct EdgeDoc {
    from: i64,
    to: i64,
    #[serde(default)]
    length: Option<f64>,
    #[serde(default)]
    capacity: Option<f64>,
    #[serde(default)]
    free_flow_time: Option<f64>,
}

#![allow(dead_code)]

use spatialgen::netgen::random_planar_from_positions;
use spatialgen::{Edge, Node, Point, RngStream, SpatialNetwork};

pub fn random_points(n: usize, rng: &mut RngStream) -> Vec<Point> {
    (0..n).map(|_| Point::new(rng.uniform(), rng.uniform())).collect()
}

/// Connected planar network with lengths stretched by a random factor in
/// [1, 3) so shortest paths are not purely geometric.
pub fn random_network(n: usize, keep: f64, rng: &mut RngStream) -> SpatialNetwork {
    let pts = random_points(n, rng);
    let net = random_planar_from_positions(&pts, keep, rng).unwrap();
    let edges = net
        .edges()
        .iter()
        .map(|e| Edge { length: e.length * rng.uniform_range(1.0, 3.0), ..*e })
        .collect();
    net.with_edges(edges).unwrap()
}

/// Nodes packed in a small disc so that any integer length ≥ 1 is valid.
pub fn compact_nodes(n: usize) -> Vec<Node> {
    (0..n)
        .map(|i| {
            let a = i as f64 * std::f64::consts::TAU / n as f64;
            Node::new(i as i64, 0.3 * a.cos(), 0.3 * a.sin())
        })
        .collect()
}

pub fn integer_network(n: usize, pairs: &[(usize, usize, u32)], directed: bool) -> SpatialNetwork {
    let edges = pairs.iter().map(|&(a, b, w)| Edge::new(a as i64, b as i64, w as f64)).collect();
    SpatialNetwork::new(compact_nodes(n), edges, directed).unwrap()
}

/// Random simple graph on `n` compact nodes with integer lengths in 1..=3.
pub fn random_integer_graph(n: usize, p: f64, rng: &mut RngStream) -> SpatialNetwork {
    let mut pairs = Vec::new();
    for i in 0..n {
        for j in i + 1..n {
            if rng.bernoulli(p) {
                pairs.push((i, j, 1 + rng.below(3) as u32));
            }
        }
    }
    integer_network(n, &pairs, false)
}

/// All-pairs distances by Floyd–Warshall over node indices, treating
/// undirected edges symmetrically.
pub fn floyd_warshall(net: &SpatialNetwork, weights: &[f64]) -> Vec<Vec<f64>> {
    let n = net.node_count();
    let mut d = vec![vec![f64::INFINITY; n]; n];
    for (i, row) in d.iter_mut().enumerate() {
        row[i] = 0.0;
    }
    for (k, e) in net.edges().iter().enumerate() {
        let a = net.node_index(e.from).unwrap();
        let b = net.node_index(e.to).unwrap();
        d[a][b] = d[a][b].min(weights[k]);
        if !net.is_directed() {
            d[b][a] = d[b][a].min(weights[k]);
        }
    }
    for k in 0..n {
        for i in 0..n {
            for j in 0..n {
                let via = d[i][k] + d[k][j];
                if via < d[i][j] {
                    d[i][j] = via;
                }
            }
        }
    }
    d
}

/// Independent union-find by repeated edge scans until no label changes.
pub fn component_labels(n: usize, pairs: &[(usize, usize)]) -> Vec<usize> {
    let mut label: Vec<usize> = (0..n).collect();
    loop {
        let mut changed = false;
        for &(a, b) in pairs {
            let m = label[a].min(label[b]);
            if label[a] != m || label[b] != m {
                label[a] = m;
                label[b] = m;
                changed = true;
            }
        }
        if !changed {
            return label;
        }
    }
}

/// Total weight of a minimum spanning forest by Kruskal over `(a, b, w)`.
pub fn kruskal_weight(n: usize, mut edges: Vec<(usize, usize, f64)>) -> (f64, usize) {
    edges.sort_by(|x, y| x.2.total_cmp(&y.2));
    let mut parent: Vec<usize> = (0..n).collect();
    fn root(p: &mut [usize], mut x: usize) -> usize {
        while p[x] != x {
            x = p[x];
        }
        x
    }
    let (mut total, mut count) = (0.0, 0);
    for (a, b, w) in edges {
        let (ra, rb) = (root(&mut parent, a), root(&mut parent, b));
        if ra != rb {
            parent[ra] = rb;
            total += w;
            count += 1;
        }
    }
    (total, count)
}

pub fn mean(v: &[f64]) -> f64 {
    v.iter().sum::<f64>() / v.len() as f64
}

pub fn variance(v: &[f64]) -> f64 {
    let m = mean(v);
    v.iter().map(|x| (x - m) * (x - m)).sum::<f64>() / (v.len() as f64 - 1.0)
}

use crate::geometry::{Point, Window};
use crate::graph::kruskal;
use crate::{Error, Result, RngStream, SpatialNetwork};

use super::delaunay::delaunay;

/// Euclidean minimum spanning tree over the complete graph (Prim, O(n²)).
///
/// Ties go to the smaller point index. Edges are `(parent, child)` in the
/// order they join the tree.
pub fn euclidean_mst(points: &[Point]) -> Vec<(usize, usize)> {
    let n = points.len();
    if n < 2 {
        return Vec::new();
    }
    let mut in_tree = vec![false; n];
    let mut best = vec![f64::INFINITY; n];
    let mut parent = vec![0usize; n];
    let mut edges = Vec::with_capacity(n - 1);
    in_tree[0] = true;
    for j in 1..n {
        best[j] = points[0].distance(points[j]);
    }
    for _ in 1..n {
        let mut next = usize::MAX;
        for j in 0..n {
            if !in_tree[j] && (next == usize::MAX || best[j] < best[next]) {
                next = j;
            }
        }
        in_tree[next] = true;
        edges.push((parent[next], next));
        for j in 0..n {
            if !in_tree[j] {
                let d = points[next].distance(points[j]);
                if d < best[j] {
                    best[j] = d;
                    parent[j] = next;
                }
            }
        }
    }
    edges
}

/// Minimum spanning tree restricted to `candidates` (Kruskal by length).
pub fn mst_of_edges(points: &[Point], candidates: &[(usize, usize)]) -> Vec<(usize, usize)> {
    let weighted: Vec<(usize, usize, f64)> =
        candidates.iter().map(|&(a, b)| (a, b, points[a].distance(points[b]))).collect();
    kruskal(points.len(), &weighted).into_iter().map(|k| candidates[k]).collect()
}

/// Delaunay edges and a Euclidean MST contained in them. Falls back to the
/// complete-graph MST (which is then the whole candidate pool) when the
/// points are collinear or fewer than three.
pub(crate) fn delaunay_and_mst(points: &[Point]) -> Result<(Vec<(usize, usize)>, Vec<(usize, usize)>)> {
    match delaunay(points) {
        Ok(dt) => {
            let mst = mst_of_edges(points, &dt);
            Ok((dt, mst))
        }
        Err(Error::DegeneratePointSet(_)) => {
            let mut mst: Vec<(usize, usize)> = euclidean_mst(points).into_iter().map(|(a, b)| (a.min(b), a.max(b))).collect();
            mst.sort_unstable();
            Ok((mst.clone(), mst))
        }
        Err(e) => Err(e),
    }
}

pub(crate) fn sample_positions(n: usize, window: &Window, rng: &mut RngStream) -> Vec<Point> {
    (0..n).map(|_| window.sample(rng)).collect()
}

/// Euclidean MST over `n` uniform random nodes.
pub fn generate_tree_network(n: usize, window: &Window, rng: &mut RngStream) -> Result<SpatialNetwork> {
    if n == 0 {
        return Err(Error::param("n", "must be at least 1"));
    }
    tree_network_from_positions(&sample_positions(n, window, rng))
}

pub fn tree_network_from_positions(points: &[Point]) -> Result<SpatialNetwork> {
    SpatialNetwork::from_positions(points, None, &euclidean_mst(points))
}

/// MST plus each remaining Delaunay edge kept independently with probability `keep`.
pub fn generate_random_planar(n: usize, keep: f64, window: &Window, rng: &mut RngStream) -> Result<SpatialNetwork> {
    if n < 3 {
        return Err(Error::param("n", "random planar networks need at least 3 nodes"));
    }
    let points = sample_positions(n, window, rng);
    random_planar_from_positions(&points, keep, rng)
}

pub fn random_planar_from_positions(points: &[Point], keep: f64, rng: &mut RngStream) -> Result<SpatialNetwork> {
    if !(0.0..=1.0).contains(&keep) {
        return Err(Error::param("keepProbability", "must lie in [0, 1]"));
    }
    let dt = delaunay(points)?;
    let mut mst = mst_of_edges(points, &dt);
    mst.iter_mut().for_each(|e| *e = (e.0.min(e.1), e.0.max(e.1)));
    mst.sort_unstable();
    let mut edges = mst.clone();
    for e in dt {
        if mst.binary_search(&e).is_err() && rng.bernoulli(keep) {
            edges.push(e);
        }
    }
    edges.sort_unstable();
    SpatialNetwork::from_positions(points, None, &edges)
}

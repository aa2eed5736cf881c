//! Incremental Bowyer-Watson triangulation.
//!
//! The convex hull is closed with "ghost" triangles that share a vertex at
//! infinity instead of an enclosing super-triangle, so hull edges come out
//! right even for nearly collinear boundaries. A ghost triangle `(u, v, ∞)`
//! conflicts with `p` when `p` lies strictly left of `u → v`, or on that
//! line strictly between `u` and `v`.

use std::collections::HashSet;

use crate::geometry::{incircle, orient2d, Point};
use crate::{Error, PointSet, Result};

const GHOST: usize = usize::MAX;

/// Counter-clockwise triangles (as point indices) of the Delaunay triangulation.
pub fn delaunay_triangles(points: &[Point]) -> Result<Vec<[usize; 3]>> {
    if points.len() < 3 {
        return Err(Error::DegeneratePointSet("fewer than 3 points"));
    }
    check_duplicates(points)?;

    let a = 0;
    let b = 1;
    let Some(c) = (2..points.len()).find(|&k| orient2d(points[a], points[b], points[k]) != 0.0) else {
        return Err(Error::DegeneratePointSet("all points are collinear"));
    };
    let (a, b) = if orient2d(points[a], points[b], points[c]) > 0.0 { (a, b) } else { (b, a) };
    let mut tris: Vec<[usize; 3]> = vec![[a, b, c], [b, a, GHOST], [c, b, GHOST], [a, c, GHOST]];

    let mut conflict_edges: HashSet<(usize, usize)> = HashSet::new();
    for p in (2..points.len()).filter(|&k| k != c) {
        let pt = points[p];
        let (cavity, keep): (Vec<[usize; 3]>, Vec<[usize; 3]>) =
            tris.into_iter().partition(|t| in_conflict(points, *t, pt));
        debug_assert!(!cavity.is_empty());
        conflict_edges.clear();
        for t in &cavity {
            for k in 0..3 {
                conflict_edges.insert((t[k], t[(k + 1) % 3]));
            }
        }
        tris = keep;
        for t in &cavity {
            for k in 0..3 {
                let (x, y) = (t[k], t[(k + 1) % 3]);
                if !conflict_edges.contains(&(y, x)) {
                    tris.push(canonical([x, y, p]));
                }
            }
        }
    }
    tris.retain(|t| !t.contains(&GHOST));
    Ok(tris)
}

/// Undirected Delaunay edges as sorted `(i, j)` index pairs with `i < j`.
pub fn delaunay(points: &[Point]) -> Result<Vec<(usize, usize)>> {
    Ok(triangle_edges(&delaunay_triangles(points)?))
}

pub fn delaunay_point_set(points: &PointSet) -> Result<Vec<(usize, usize)>> {
    delaunay(points.points())
}

pub(crate) fn triangle_edges(tris: &[[usize; 3]]) -> Vec<(usize, usize)> {
    let mut edges: Vec<(usize, usize)> = tris
        .iter()
        .flat_map(|t| (0..3).map(move |k| (t[k].min(t[(k + 1) % 3]), t[k].max(t[(k + 1) % 3]))))
        .collect();
    edges.sort_unstable();
    edges.dedup();
    edges
}

fn check_duplicates(points: &[Point]) -> Result<()> {
    let mut order: Vec<usize> = (0..points.len()).collect();
    order.sort_by(|&i, &j| points[i].x.total_cmp(&points[j].x).then(points[i].y.total_cmp(&points[j].y)));
    for w in order.windows(2) {
        let (p, q) = (points[w[0]], points[w[1]]);
        if p.x == q.x && p.y == q.y {
            return Err(Error::DuplicatePoint(p.x, p.y));
        }
    }
    Ok(())
}

/// Rotates a triangle so a ghost vertex, if any, comes last.
fn canonical(t: [usize; 3]) -> [usize; 3] {
    match t.iter().position(|&v| v == GHOST) {
        Some(0) => [t[1], t[2], t[0]],
        Some(1) => [t[2], t[0], t[1]],
        _ => t,
    }
}

fn in_conflict(points: &[Point], t: [usize; 3], p: Point) -> bool {
    if t[2] != GHOST {
        return incircle(points[t[0]], points[t[1]], points[t[2]], p) > 0.0;
    }
    let (u, v) = (points[t[0]], points[t[1]]);
    let o = orient2d(u, v, p);
    if o != 0.0 {
        return o > 0.0;
    }
    // on the hull line: conflict only strictly inside the segment
    let along = (p.x - u.x) * (v.x - u.x) + (p.y - u.y) * (v.y - u.y);
    along > 0.0 && along < u.distance_sq(v)
}

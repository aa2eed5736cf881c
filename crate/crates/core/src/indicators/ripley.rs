use crate::{Error, PointSet, Result};

/// Ripley's K without edge correction:
/// `K(r) = A / (n(n−1)) · Σ_{i≠j} 1(d_ij ≤ r)`.
pub fn ripley_k(points: &PointSet, radii: &[f64]) -> Result<Vec<(f64, f64)>> {
    let pts = points.points();
    let n = pts.len();
    if n < 2 {
        return Err(Error::TooFewPoints(n));
    }
    if let Some(r) = radii.iter().find(|r| !(**r > 0.0)) {
        return Err(Error::param("radii", format!("must be positive, got {r}")));
    }
    let mut dists = Vec::with_capacity(n * (n - 1) / 2);
    for i in 0..n {
        for j in i + 1..n {
            dists.push(pts[i].distance(pts[j]));
        }
    }
    dists.sort_by(f64::total_cmp);
    let scale = points.window().area() / (n as f64 * (n - 1) as f64);
    Ok(radii
        .iter()
        .map(|&r| {
            let within = dists.partition_point(|d| *d <= r);
            (r, scale * 2.0 * within as f64)
        })
        .collect())
}

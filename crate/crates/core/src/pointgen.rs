//! Spatial Poisson point processes.

use crate::geometry::{Point, Window};
use crate::{Error, Grid, PointSet, Result, RngStream};

/// Intensity of a Poisson process: constant over a window, or per grid cell
/// over the grid's extent.
#[derive(Debug, Clone, PartialEq)]
pub enum Intensity {
    Constant { lambda: f64, window: Window },
    Grid(Grid),
}

impl Intensity {
    pub fn sample(&self, rng: &mut RngStream) -> Result<PointSet> {
        match self {
            Intensity::Constant { lambda, window } => sample_homogeneous_poisson(*lambda, window, rng),
            Intensity::Grid(g) => Ok(sample_inhomogeneous_poisson(g, rng)),
        }
    }
}

/// Homogeneous process: `N ~ Poisson(lambda·area)` i.i.d. uniform points.
pub fn sample_homogeneous_poisson(lambda: f64, window: &Window, rng: &mut RngStream) -> Result<PointSet> {
    if !(lambda >= 0.0 && lambda.is_finite()) {
        return Err(Error::param("lambda", "must be non-negative and finite"));
    }
    let count = rng.poisson(lambda * window.area());
    let points: Vec<Point> = (0..count).map(|_| window.sample(rng)).collect();
    PointSet::new(*window, points)
}

/// Inhomogeneous process over the grid extent, by thinning a homogeneous
/// process at the maximum cell intensity. An all-zero grid gives no points.
pub fn sample_inhomogeneous_poisson(intensity: &Grid, rng: &mut RngStream) -> PointSet {
    let window = intensity.extent();
    let lambda_max = intensity.max();
    if lambda_max <= 0.0 {
        return PointSet::empty(window);
    }
    let count = rng.poisson(lambda_max * window.area());
    let mut points = Vec::new();
    for _ in 0..count {
        let p = window.sample(rng);
        let keep = rng.uniform();
        let cell = intensity.cell_at(p).expect("sampled inside extent");
        if keep < intensity.values()[cell] / lambda_max {
            points.push(p);
        }
    }
    PointSet::new(window, points).expect("points sampled inside extent")
}

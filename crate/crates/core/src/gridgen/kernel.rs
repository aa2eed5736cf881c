use serde::{Deserialize, Serialize};

use crate::geometry::Point;
use crate::{Error, Grid, Result, RngStream};

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "camelCase")]
pub enum Kernel {
    /// `K(u) = e^(−u)`
    Exponential,
    /// `K(u) = e^(−u²/2)`
    Gaussian,
}

impl Kernel {
    #[inline]
    pub fn eval(self, u: f64) -> f64 {
        match self {
            Kernel::Exponential => (-u).exp(),
            Kernel::Gaussian => (-0.5 * u * u).exp(),
        }
    }
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(rename_all = "camelCase", default)]
pub struct KernelMixtureParams {
    pub size: usize,
    pub n_centers: usize,
    pub max_value: f64,
    pub radius: f64,
    pub kernel: Kernel,
}

impl Default for KernelMixtureParams {
    fn default() -> Self {
        KernelMixtureParams { size: 50, n_centers: 3, max_value: 100.0, radius: 5.0, kernel: Kernel::Exponential }
    }
}

impl KernelMixtureParams {
    pub fn validate(&self) -> Result<()> {
        super::check_size(self.size)?;
        if self.n_centers == 0 {
            return Err(Error::param("nCenters", "must be at least 1"));
        }
        if !(self.max_value > 0.0 && self.max_value.is_finite()) {
            return Err(Error::param("maxValue", "must be positive"));
        }
        if !(self.radius > 0.0 && self.radius.is_finite()) {
            return Err(Error::param("radius", "must be positive"));
        }
        Ok(())
    }
}

/// Sum of kernels centered on cells drawn uniformly (with replacement).
pub fn generate_kernel_mixture(p: &KernelMixtureParams, rng: &mut RngStream) -> Result<Grid> {
    p.validate()?;
    let probe = Grid::zeros(p.size, p.size);
    let centers: Vec<Point> = (0..p.n_centers).map(|_| probe.cell_center(rng.below(p.size * p.size))).collect();
    kernel_mixture_from_centers(p, &centers)
}

/// Kernel mixture with explicit center positions (planar coordinates).
pub fn kernel_mixture_from_centers(p: &KernelMixtureParams, centers: &[Point]) -> Result<Grid> {
    super::check_size(p.size)?;
    let mut grid = Grid::zeros(p.size, p.size);
    let values: Vec<f64> = (0..grid.len())
        .map(|i| {
            let c = grid.cell_center(i);
            centers.iter().map(|k| p.max_value * p.kernel.eval(c.distance(*k) / p.radius)).sum()
        })
        .collect();
    grid = grid.with_values(values)?;
    Ok(grid)
}

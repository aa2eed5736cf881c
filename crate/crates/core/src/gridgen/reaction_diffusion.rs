use serde::{Deserialize, Serialize};

use crate::{Error, Grid, Result, RngStream};

/// Parameters of the aggregation-diffusion density generator.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(rename_all = "camelCase", default)]
pub struct ReactionDiffusionParams {
    /// Side of the square grid.
    pub size: usize,
    /// Population at which growth stops.
    pub total_population: f64,
    /// Population added per macro-step.
    pub growth_rate: f64,
    /// Preferential-attachment exponent.
    pub alpha: f64,
    /// Fraction of each cell's mass diffused per sweep.
    pub beta: f64,
    /// Diffusion sweeps per macro-step.
    pub diffusion_steps: usize,
}

impl Default for ReactionDiffusionParams {
    fn default() -> Self {
        ReactionDiffusionParams {
            size: 50,
            total_population: 20_000.0,
            growth_rate: 500.0,
            alpha: 1.5,
            beta: 0.1,
            diffusion_steps: 2,
        }
    }
}

impl ReactionDiffusionParams {
    pub fn validate(&self) -> Result<()> {
        super::check_size(self.size)?;
        if !(self.total_population > 0.0 && self.total_population.is_finite()) {
            return Err(Error::param("totalPopulation", "must be positive and finite"));
        }
        if !(self.growth_rate > 0.0 && self.growth_rate.is_finite()) {
            return Err(Error::param("growthRate", "must be positive and finite"));
        }
        if !(self.alpha >= 0.0 && self.alpha.is_finite()) {
            return Err(Error::param("alpha", "must be non-negative"));
        }
        if !(0.0..=1.0).contains(&self.beta) {
            return Err(Error::param("beta", "must lie in [0, 1]"));
        }
        Ok(())
    }
}

/// One mass-conserving diffusion sweep: every cell keeps `1 − beta` of its
/// mass and splits `beta` equally among its existing 4-neighbors.
pub fn diffusion_sweep(values: &mut [f64], width: usize, height: usize, beta: f64) {
    debug_assert_eq!(values.len(), width * height);
    if beta == 0.0 || values.len() == 1 {
        return;
    }
    let mut next: Vec<f64> = values.iter().map(|v| v * (1.0 - beta)).collect();
    for row in 0..height {
        for col in 0..width {
            let i = row * width + col;
            let v = values[i];
            if v == 0.0 {
                continue;
            }
            let up = row > 0;
            let down = row + 1 < height;
            let left = col > 0;
            let right = col + 1 < width;
            let degree = up as usize + down as usize + left as usize + right as usize;
            let share = beta * v / degree as f64;
            if up {
                next[i - width] += share;
            }
            if down {
                next[i + width] += share;
            }
            if left {
                next[i - 1] += share;
            }
            if right {
                next[i + 1] += share;
            }
        }
    }
    values.copy_from_slice(&next);
}

/// Grows a density grid from zero until its mass reaches `total_population`.
///
/// Each macro-step adds `growth_rate` population (the last step only what is
/// left) in unit increments. An increment lands on cell `i` with probability
/// `P_i^alpha / Σ_j P_j^alpha`, frozen at the start of the step, or uniformly
/// while the grid is empty. Then `diffusion_steps` sweeps of
/// [`diffusion_sweep`] run.
pub fn generate_reaction_diffusion(p: &ReactionDiffusionParams, rng: &mut RngStream) -> Result<Grid> {
    p.validate()?;
    let n = p.size * p.size;
    let mut values = vec![0.0; n];
    let mut added = 0.0;
    let mut cumulative = vec![0.0; n];
    while added < p.total_population {
        let amount = p.growth_rate.min(p.total_population - added);
        attachment_weights(&values, p.alpha, &mut cumulative);
        let total_weight = *cumulative.last().unwrap();
        let mut remaining = amount;
        while remaining > 0.0 {
            let unit = remaining.min(1.0);
            let u = rng.uniform() * total_weight;
            let cell = cumulative.partition_point(|&c| c <= u).min(n - 1);
            values[cell] += unit;
            remaining -= unit;
        }
        added += amount;
        for _ in 0..p.diffusion_steps {
            diffusion_sweep(&mut values, p.size, p.size, p.beta);
        }
    }
    // round-off in the diffusion stencil can leave -0.0-ish dust
    for v in &mut values {
        if *v < 0.0 {
            *v = 0.0;
        }
    }
    Ok(Grid::from_parts_unchecked(p.size, p.size, 1.0, values))
}

/// Cumulative attachment weights `P_i^alpha`, scaled by the maximum cell so
/// large exponents stay finite. Uniform when the grid is empty.
fn attachment_weights(values: &[f64], alpha: f64, cumulative: &mut [f64]) {
    let max = values.iter().copied().fold(0.0, f64::max);
    let mut acc = 0.0;
    for (c, &v) in cumulative.iter_mut().zip(values) {
        let w = if max > 0.0 { (v / max).powf(alpha) } else { 1.0 };
        acc += w;
        *c = acc;
    }
}

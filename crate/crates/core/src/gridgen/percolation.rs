use std::collections::VecDeque;

use serde::{Deserialize, Serialize};

use crate::{Error, Grid, Result, RngStream};

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(rename_all = "camelCase")]
pub struct PercolationParams {
    pub size: usize,
    pub occupation_probability: f64,
    #[serde(default)]
    pub keep_largest_cluster_only: bool,
}

impl PercolationParams {
    pub fn validate(&self) -> Result<()> {
        super::check_size(self.size)?;
        if !(0.0..=1.0).contains(&self.occupation_probability) {
            return Err(Error::param("occupationProbability", "must lie in [0, 1]"));
        }
        Ok(())
    }
}

/// Site percolation: each cell is 1 independently with the occupation
/// probability. Optionally keeps only the largest 4-connected cluster, ties
/// going to the cluster reached first in row-major order.
pub fn generate_percolation(p: &PercolationParams, rng: &mut RngStream) -> Result<Grid> {
    p.validate()?;
    let n = p.size * p.size;
    let mut values: Vec<f64> = (0..n).map(|_| if rng.bernoulli(p.occupation_probability) { 1.0 } else { 0.0 }).collect();
    if p.keep_largest_cluster_only {
        let grid = Grid::from_parts_unchecked(p.size, p.size, 1.0, values.clone());
        let (labels, sizes) = label_clusters(&grid);
        if let Some(best) = largest(&sizes) {
            for (v, l) in values.iter_mut().zip(&labels) {
                *v = if *l == Some(best) { 1.0 } else { 0.0 };
            }
        }
    }
    Ok(Grid::from_parts_unchecked(p.size, p.size, 1.0, values))
}

fn largest(sizes: &[usize]) -> Option<usize> {
    let mut best: Option<usize> = None;
    for (l, &s) in sizes.iter().enumerate() {
        if best.map_or(true, |b| s > sizes[b]) {
            best = Some(l);
        }
    }
    best
}

/// 4-connected labeling of positive cells. Labels are numbered in row-major
/// order of each cluster's first cell; returns per-cell labels and sizes.
pub fn label_clusters(grid: &Grid) -> (Vec<Option<usize>>, Vec<usize>) {
    let mut labels = vec![None; grid.len()];
    let mut sizes = Vec::new();
    let mut queue = VecDeque::new();
    for start in 0..grid.len() {
        if grid.values()[start] <= 0.0 || labels[start].is_some() {
            continue;
        }
        let label = sizes.len();
        let mut size = 0;
        labels[start] = Some(label);
        queue.push_back(start);
        while let Some(i) = queue.pop_front() {
            size += 1;
            for j in grid.von_neumann(i) {
                if grid.values()[j] > 0.0 && labels[j].is_none() {
                    labels[j] = Some(label);
                    queue.push_back(j);
                }
            }
        }
        sizes.push(size);
    }
    (labels, sizes)
}

//! Synthetic raster generators.
//!
//! Mesoscale density grids come from [`generate_reaction_diffusion`] (growth by
//! preferential attachment plus local diffusion) or [`generate_kernel_mixture`];
//! microscale binary built-form grids from [`generate_percolation`] and
//! [`generate_blocks`].

mod blocks;
mod kernel;
mod percolation;
mod reaction_diffusion;

pub use blocks::{generate_blocks, generate_blocks_with_rects, BlocksParams, Rect};
pub use kernel::{generate_kernel_mixture, kernel_mixture_from_centers, Kernel, KernelMixtureParams};
pub use percolation::{generate_percolation, label_clusters, PercolationParams};
pub use reaction_diffusion::{diffusion_sweep, generate_reaction_diffusion, ReactionDiffusionParams};

use crate::{Error, Result};

pub(crate) fn check_size(size: usize) -> Result<()> {
    if size == 0 {
        return Err(Error::param("size", "must be at least 1"));
    }
    Ok(())
}

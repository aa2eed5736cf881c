//! Indicators for grids, point patterns and networks, plus congestion-aware
//! network loading.

mod assignment;
mod betweenness;
mod morphology;
mod network;
mod ripley;

pub use assignment::{
    assign_all_or_nothing, user_equilibrium, BprParams, Equilibrium, Loading, OdMatrix, OdPair,
};
pub use betweenness::{betweenness, betweenness_indexed, brandes, edge_betweenness};
pub use morphology::{grid_morphology, rank_size_slope, MorphologyRecord};
pub use network::{all_pairs_lengths, network_summary, NetworkSummary};
pub use ripley::ripley_k;

use crate::gridgen::label_clusters;
use crate::{Grid, IndicatorRecord};

/// Microscale built-form indicators for a binary grid: the morphology record
/// plus the number of 4-connected clusters of occupied cells and the share
/// held by the largest one.
pub fn building_indicators(grid: &Grid) -> IndicatorRecord {
    let mut rec = grid_morphology(grid).to_record();
    let (_, sizes) = label_clusters(grid);
    let occupied: usize = sizes.iter().sum();
    rec.insert("nClusters", sizes.len() as f64);
    rec.insert(
        "largestClusterShare",
        if occupied > 0 { *sizes.iter().max().unwrap() as f64 / occupied as f64 } else { 0.0 },
    );
    rec
}

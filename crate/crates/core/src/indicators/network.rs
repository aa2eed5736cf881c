use crate::graph::{component_indices, dijkstra};
use crate::{IndicatorRecord, SpatialNetwork};

/// Structural and path-based summary of a network.
///
/// Path fields use length-weighted shortest paths. `mean_path_length` and
/// `diameter` cover reachable ordered pairs only (0 when there are none);
/// `efficiency` averages `1/d_ij` over all ordered pairs, unreachable pairs
/// contributing 0.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct NetworkSummary {
    pub n_nodes: f64,
    pub n_edges: f64,
    pub total_length: f64,
    pub n_components: f64,
    pub cyclomatic: f64,
    pub alpha_index: f64,
    pub gamma_index: f64,
    pub diameter: f64,
    pub mean_path_length: f64,
    pub efficiency: f64,
}

impl NetworkSummary {
    pub const NAMES: [&'static str; 10] = [
        "nNodes",
        "nEdges",
        "totalLength",
        "nComponents",
        "cyclomatic",
        "alphaIndex",
        "gammaIndex",
        "diameter",
        "meanPathLength",
        "efficiency",
    ];

    pub fn to_record(&self) -> IndicatorRecord {
        let v = [
            self.n_nodes,
            self.n_edges,
            self.total_length,
            self.n_components,
            self.cyclomatic,
            self.alpha_index,
            self.gamma_index,
            self.diameter,
            self.mean_path_length,
            self.efficiency,
        ];
        Self::NAMES.iter().zip(v).map(|(n, v)| (n.to_string(), v)).collect()
    }
}

/// All-pairs length-weighted distances (`+∞` when unreachable), row per source.
pub fn all_pairs_lengths(net: &SpatialNetwork) -> Vec<Vec<f64>> {
    let adj = net.adjacency();
    let len: Vec<f64> = net.edges().iter().map(|e| e.length).collect();
    let rank: Vec<i64> = net.nodes().iter().map(|n| n.id).collect();
    (0..net.node_count()).map(|s| dijkstra(&adj, &len, s, &rank).0).collect()
}

pub fn network_summary(net: &SpatialNetwork) -> NetworkSummary {
    let n = net.node_count();
    let e = net.edge_count();
    let c = component_indices(net).len();
    let cyclomatic = e as f64 - n as f64 + c as f64;
    let (alpha_index, gamma_index) = if n < 3 {
        (f64::NAN, f64::NAN)
    } else {
        (cyclomatic / (2.0 * n as f64 - 5.0), e as f64 / (3.0 * (n as f64 - 2.0)))
    };

    let dist = all_pairs_lengths(net);
    let (mut diameter, mut sum, mut reachable, mut inv) = (0.0f64, 0.0, 0usize, 0.0);
    for (i, row) in dist.iter().enumerate() {
        for (j, &d) in row.iter().enumerate() {
            if i == j || d.is_infinite() {
                continue;
            }
            diameter = diameter.max(d);
            sum += d;
            reachable += 1;
            inv += 1.0 / d;
        }
    }
    let pairs = n * n.saturating_sub(1);
    NetworkSummary {
        n_nodes: n as f64,
        n_edges: e as f64,
        total_length: net.total_length(),
        n_components: c as f64,
        cyclomatic,
        alpha_index,
        gamma_index,
        diameter,
        mean_path_length: if reachable > 0 { sum / reachable as f64 } else { 0.0 },
        efficiency: if pairs > 0 { inv / pairs as f64 } else { 0.0 },
    }
}

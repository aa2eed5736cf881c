//! Named indicators available to `measure` and `experiment`.

use spatialgen::indicators::{
    betweenness_indexed, building_indicators, network_summary, ripley_k, user_equilibrium, BprParams,
    MorphologyRecord, NetworkSummary, OdMatrix, OdPair,
};
use spatialgen::{Grid, IndicatorRecord, PointSet, Result, SpatialNetwork};

use crate::spec::{Artifact, ArtifactKind, ModelOutcome};

pub const GRID_EXTRA: [&str; 2] = ["nClusters", "largestClusterShare"];
pub const NETWORK_EXTRA: [&str; 5] =
    ["meanBetweenness", "maxBetweenness", "ueRelativeGap", "ueTotalTravelTime", "ueMaxVolumeCapacity"];
pub const POINT_NAMES: [&str; 2] = ["count", "intensity"];
pub const MODEL_NAMES: [&str; 3] = ["segregationInitial", "segregationFinal", "schellingSteps"];
/// `ripleyK:<r>` evaluates Ripley's K at radius `r`.
pub const RIPLEY_PREFIX: &str = "ripleyK:";

/// Which input an indicator name needs.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Source {
    Artifact(ArtifactKind),
    Model,
}

pub fn classify(name: &str) -> Option<Source> {
    if MorphologyRecord::NAMES.contains(&name) || GRID_EXTRA.contains(&name) {
        return Some(Source::Artifact(ArtifactKind::Grid));
    }
    if NetworkSummary::NAMES.contains(&name) || NETWORK_EXTRA.contains(&name) {
        return Some(Source::Artifact(ArtifactKind::Network));
    }
    if POINT_NAMES.contains(&name) || ripley_radius(name).is_some() {
        return Some(Source::Artifact(ArtifactKind::Points));
    }
    if MODEL_NAMES.contains(&name) {
        return Some(Source::Model);
    }
    None
}

fn ripley_radius(name: &str) -> Option<f64> {
    name.strip_prefix(RIPLEY_PREFIX)?.parse::<f64>().ok().filter(|r| *r > 0.0 && r.is_finite())
}

/// Gravity demand `w_i·w_j / d_ij` over ordered node pairs, scaled so that
/// total demand equals `total`. Pairs at zero distance are skipped.
pub fn gravity_od(net: &SpatialNetwork, total: f64) -> Result<OdMatrix> {
    let nodes = net.nodes();
    let mut entries = Vec::new();
    for a in nodes {
        for b in nodes {
            let d = a.position().distance(b.position());
            if a.id != b.id && d > 0.0 && a.weight > 0.0 && b.weight > 0.0 {
                entries.push(OdPair { origin: a.id, destination: b.id, demand: a.weight * b.weight / d });
            }
        }
    }
    let sum: f64 = entries.iter().map(|e| e.demand).sum();
    if sum > 0.0 {
        for e in &mut entries {
            e.demand *= total / sum;
        }
    }
    OdMatrix::new(entries)
}

/// UE under gravity demand totalling one trip per node.
fn congestion(net: &SpatialNetwork) -> Result<(f64, f64, f64)> {
    let od = gravity_od(net, net.node_count() as f64)?;
    let eq = user_equilibrium(net, &od, BprParams::default(), 200, 1e-4)?;
    let total_time = eq.flows.iter().zip(&eq.times).map(|(f, t)| f * t).sum();
    let max_vc = net.edges().iter().zip(&eq.flows).map(|(e, f)| f / e.capacity).fold(0.0, f64::max);
    Ok((eq.relative_gap, total_time, max_vc))
}

pub fn grid_record(grid: &Grid) -> IndicatorRecord {
    building_indicators(grid)
}

pub fn network_record(net: &SpatialNetwork, with_congestion: bool) -> Result<IndicatorRecord> {
    let mut rec = network_summary(net).to_record();
    let bc = betweenness_indexed(net);
    let mean = if bc.is_empty() { 0.0 } else { bc.iter().sum::<f64>() / bc.len() as f64 };
    rec.insert("meanBetweenness", mean);
    rec.insert("maxBetweenness", bc.iter().copied().fold(0.0, f64::max));
    if with_congestion {
        let (gap, total, vc) = congestion(net)?;
        rec.insert("ueRelativeGap", gap);
        rec.insert("ueTotalTravelTime", total);
        rec.insert("ueMaxVolumeCapacity", vc);
    }
    Ok(rec)
}

pub fn point_record(points: &PointSet, radii: &[f64]) -> Result<IndicatorRecord> {
    let mut rec = IndicatorRecord::new();
    rec.insert("count", points.len() as f64);
    rec.insert("intensity", points.len() as f64 / points.window().area());
    if !radii.is_empty() {
        for (r, k) in ripley_k(points, radii)? {
            rec.insert(format!("{RIPLEY_PREFIX}{r}"), k);
        }
    }
    Ok(rec)
}

/// Evaluates `names` in order; every name must have been validated by
/// [`classify`] against the artifact kind beforehand.
pub fn evaluate(names: &[String], artifact: &Artifact, model: Option<&ModelOutcome>) -> Result<IndicatorRecord> {
    let full = match artifact {
        Artifact::Grid(g) => grid_record(g),
        Artifact::Network(n) => {
            let congested = names.iter().any(|n| n.starts_with("ue"));
            network_record(n, congested)?
        }
        Artifact::Points(p) => {
            let radii: Vec<f64> = names.iter().filter_map(|n| ripley_radius(n)).collect();
            point_record(p, &radii)?
        }
    };
    let mut out = IndicatorRecord::new();
    for name in names {
        let value = match (name.as_str(), model) {
            ("segregationInitial", Some(m)) => m.initial_index,
            ("segregationFinal", Some(m)) => m.final_index,
            ("schellingSteps", Some(m)) => m.steps as f64,
            (n, _) => match ripley_radius(n) {
                Some(r) => full.get(&format!("{RIPLEY_PREFIX}{r}")).unwrap_or(f64::NAN),
                None => full.get(n).unwrap_or(f64::NAN),
            },
        };
        out.insert(name.clone(), value);
    }
    Ok(out)
}

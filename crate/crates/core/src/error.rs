use std::io;

use thiserror::Error;

pub type Result<T, E = Error> = std::result::Result<T, E>;

#[derive(Debug, Error)]
pub enum Error {
    #[error("no such node: {0}")]
    NoSuchNode(i64),
    #[error("invalid weight on edge {edge}: {value}")]
    InvalidWeight { edge: usize, value: f64 },
    #[error("non-rectangular grid: row {row} has {found} values, expected {expected}")]
    NonRectangularGrid { row: usize, found: usize, expected: usize },
    #[error("negative cell value {value} at row {row}, column {col}")]
    NegativeCellValue { row: usize, col: usize, value: f64 },
    #[error("empty input: {0}")]
    EmptyInput(&'static str),
    #[error("duplicate node id {0}")]
    DuplicateNode(i64),
    #[error("dangling edge {from} -> {to}")]
    DanglingEdge { from: i64, to: i64 },
    #[error("self-loop on node {0}")]
    SelfLoop(i64),
    #[error("edge {from} -> {to} is shorter ({length}) than the distance between its endpoints ({euclid})")]
    EdgeTooShort { from: i64, to: i64, length: f64, euclid: f64 },
    #[error("degenerate point set: {0}")]
    DegeneratePointSet(&'static str),
    #[error("duplicate point at ({0}, {1})")]
    DuplicatePoint(f64, f64),
    #[error("point ({0}, {1}) outside window")]
    PointOutsideWindow(f64, f64),
    #[error("substrate not connected")]
    SubstrateNotConnected,
    #[error("cannot place cities: {placed} of {requested} placed with separation {separation}")]
    CannotPlaceCities { placed: usize, requested: usize, separation: f64 },
    #[error("too few points: need at least 2, got {0}")]
    TooFewPoints(usize),
    #[error("infeasible demand: no path from {origin} to {destination}")]
    InfeasibleDemand { origin: i64, destination: i64 },
    #[error("no vacancy for unsatisfied agents")]
    NoVacancy,
    #[error("cannot remove {requested} items, only {available} present")]
    TooManyRemovals { requested: usize, available: usize },
    #[error("invalid parameter `{name}`: {reason}")]
    InvalidParameter { name: &'static str, reason: String },
    #[error("parse error at line {line}: {message}")]
    Parse { line: usize, message: String },
    #[error(transparent)]
    Io(#[from] io::Error),
    #[error(transparent)]
    Json(#[from] serde_json::Error),
}

impl Error {
    pub(crate) fn param(name: &'static str, reason: impl Into<String>) -> Self {
        Error::InvalidParameter { name, reason: reason.into() }
    }
}

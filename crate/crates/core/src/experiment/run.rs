use std::io::Write;
use std::time::Instant;

use rayon::prelude::*;
use serde::Serialize;
use thiserror::Error;

use super::{generate, WorkloadSpec};
use crate::oracle::{OpTrace, ParseError, ReplayError, Replayer};
use crate::presort::{inversions, local_min_depth, runs};
use crate::{
    AdaptiveFibHeap, AddressableHeap, HeapKind, MetricsRecord, OracleHeap, PairingLikeHeap,
};

/// Bumped whenever the [`MetricsRow`] columns change.
pub const METRICS_SCHEMA_VERSION: u32 = 1;

#[derive(Debug, Error)]
pub enum RunError {
    #[error("i/o: {0}")]
    Io(#[from] std::io::Error),
    #[error("trace: {0}")]
    Parse(ParseError),
    #[error("{0}")]
    Usage(String),
    #[error("trial with seed {seed}: {error}")]
    Replay { seed: u64, error: ReplayError },
    #[error("csv: {0}")]
    Csv(#[from] csv::Error),
    #[error("json: {0}")]
    Json(#[from] serde_json::Error),
}

impl From<ReplayError> for RunError {
    fn from(error: ReplayError) -> Self {
        RunError::Replay { seed: 0, error }
    }
}

/// One trial's measurements. Column order is the CSV header.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct MetricsRow {
    pub schema_version: u32,
    pub heap: HeapKind,
    pub generator: String,
    pub mode: String,
    pub n: usize,
    pub seed: u64,
    pub comparisons: u64,
    pub links: u64,
    pub cuts: u64,
    pub cascading_cuts: u64,
    pub consolidate_cycles: u64,
    pub max_degree: u32,
    pub runs: usize,
    pub inversions: u64,
    pub local_min_depth: usize,
    pub wall_time_ns: u64,
}

/// Replays `trace` on a fresh heap of `kind`; returns its counters and the
/// elapsed time in nanoseconds.
pub fn replay_metrics(
    kind: HeapKind,
    trace: &OpTrace,
    validate: bool,
) -> Result<(MetricsRecord, u64), ReplayError> {
    fn go<H: AddressableHeap>(
        trace: &OpTrace,
        validate: bool,
    ) -> Result<(MetricsRecord, u64), ReplayError> {
        let mut r = Replayer::<H>::new(validate);
        let start = Instant::now();
        r.run(trace)?;
        let ns = start.elapsed().as_nanos() as u64;
        Ok((r.heap().metrics(), ns))
    }
    match kind {
        HeapKind::Fib => go::<AdaptiveFibHeap>(trace, validate),
        HeapKind::Pairing => go::<PairingLikeHeap>(trace, validate),
        HeapKind::Oracle => go::<OracleHeap>(trace, validate),
    }
}

fn trial(spec: &WorkloadSpec, t: u64, validate: bool) -> Result<MetricsRow, RunError> {
    let spec = WorkloadSpec {
        seed: spec.seed.wrapping_add(t),
        ..spec.clone()
    };
    let trace = generate(&spec)?;
    let xs = trace.inserted_keys();
    let (m, wall_time_ns) =
        replay_metrics(spec.heap, &trace, validate).map_err(|error| RunError::Replay {
            seed: spec.seed,
            error,
        })?;
    Ok(MetricsRow {
        schema_version: METRICS_SCHEMA_VERSION,
        heap: spec.heap,
        generator: spec.generator.to_string(),
        mode: spec.mode.to_string(),
        n: xs.len(),
        seed: spec.seed,
        comparisons: m.comparisons,
        links: m.links,
        cuts: m.cuts,
        cascading_cuts: m.cascading_cuts,
        consolidate_cycles: m.consolidate_cycles,
        max_degree: m.max_degree_seen,
        runs: runs(&xs),
        inversions: inversions(&xs),
        local_min_depth: local_min_depth(&xs).k,
        wall_time_ns,
    })
}

/// Runs `trials` trials of `spec` in parallel; trial `t` uses seed
/// `spec.seed + t`. Rows come back in trial order. Any validator failure
/// aborts the run.
pub fn run(spec: &WorkloadSpec, trials: u64, validate: bool) -> Result<Vec<MetricsRow>, RunError> {
    (0..trials)
        .into_par_iter()
        .map(|t| trial(spec, t, validate))
        .collect()
}

pub fn write_csv<W: Write>(rows: &[MetricsRow], out: W) -> Result<(), RunError> {
    let mut w = csv::Writer::from_writer(out);
    for row in rows {
        w.serialize(row)?;
    }
    w.flush()?;
    Ok(())
}

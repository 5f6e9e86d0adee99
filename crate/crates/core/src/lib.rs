//! Adaptive priority queues.
//!
//! Two heaps built on a CLRS-style Fibonacci forest that differ only in how
//! `extract_min` consolidates the root list:
//!
//! * [`AdaptiveFibHeap`] links roots through a degree-indexed slot table while
//!   walking the root list oldest to newest, so ascending runs in the input
//!   end up as chains instead of being broken apart.
//! * [`PairingLikeHeap`] repeatedly walks the circular root list comparing
//!   neighbours until a single root remains.
//!
//! Alongside them: structure validators, a sorted-multiset [`OracleHeap`] with
//! a replayable [`OpTrace`] format for differential testing, presortedness
//! measures, and the workload/probe drivers used by the `heaps` CLI.

pub mod error;
pub mod experiment;
pub mod fib;
pub mod heap_core;
pub mod oracle;
pub mod pairing;
pub mod presort;

use std::fmt;
use std::str::FromStr;

pub use error::HeapError;
pub use fib::AdaptiveFibHeap;
pub use heap_core::{
    HandleRemap, HeapState, MetricsRecord, NodeHandle, NodeView, TotalKey, ValidationReport,
};
pub use oracle::{OpTrace, OracleHeap, TraceOp};
pub use pairing::PairingLikeHeap;

/// Operations common to every heap in this crate.
pub trait AddressableHeap: Default {
    const KIND: HeapKind;

    fn insert(&mut self, key: i64) -> NodeHandle;

    fn find_min(&self) -> Option<(NodeHandle, TotalKey)>;

    /// Removes and returns the minimum. Errors are diagnostic: they signal a
    /// broken structural bound, not a misuse.
    fn extract_min(&mut self) -> Result<Option<TotalKey>, HeapError>;

    fn decrease_key(&mut self, h: NodeHandle, new_key: i64) -> Result<(), HeapError>;

    /// Removes `h`, returning its key.
    fn delete(&mut self, h: NodeHandle) -> Result<TotalKey, HeapError>;

    /// Absorbs `other`; its handles become invalid and are translated by the
    /// returned map.
    fn union(&mut self, other: Self) -> HandleRemap;

    fn len(&self) -> usize;

    fn is_empty(&self) -> bool {
        self.len() == 0
    }

    fn metrics(&self) -> MetricsRecord;

    fn take_metrics(&mut self) -> MetricsRecord;

    /// Current maximum node degree.
    fn max_degree(&self) -> u32;

    fn validate(&self) -> ValidationReport;
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, serde::Serialize)]
#[serde(rename_all = "lowercase")]
pub enum HeapKind {
    Fib,
    Pairing,
    Oracle,
}

impl fmt::Display for HeapKind {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            HeapKind::Fib => "fib",
            HeapKind::Pairing => "pairing",
            HeapKind::Oracle => "oracle",
        })
    }
}

impl FromStr for HeapKind {
    type Err = String;

    fn from_str(s: &str) -> Result<Self, String> {
        match s {
            "fib" => Ok(HeapKind::Fib),
            "pairing" => Ok(HeapKind::Pairing),
            "oracle" => Ok(HeapKind::Oracle),
            other => Err(format!(
                "unknown heap `{other}` (expected fib, pairing or oracle)"
            )),
        }
    }
}

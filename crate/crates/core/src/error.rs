use thiserror::Error;

use crate::heap_core::NodeHandle;

/// Errors raised by heap operations.
#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum HeapError {
    #[error("invalid or stale node handle {0:?}")]
    InvalidHandle(NodeHandle),

    #[error("decrease-key would increase key from {current} to {requested}")]
    KeyIncrease { current: i64, requested: i64 },

    /// A consolidation slot beyond `ceil(log_phi(n)) + 2` was requested. This
    /// would contradict the logarithmic degree bound.
    #[error("consolidation slot {slot} exceeds bound {bound} for n = {n}")]
    SlotBoundExceeded { slot: usize, bound: usize, n: usize },

    #[error("pairing consolidation exceeded its iteration budget ({budget}) for {roots} roots")]
    NonTermination { budget: usize, roots: usize },

    #[error("structural error: {0}")]
    Structural(&'static str),
}

//! Trivially correct reference heap, the operation-trace format and the
//! differential-testing driver built on them.

mod diff;
mod heap;
mod random;
mod replay;
mod shrink;
mod trace;

pub use diff::{
    differential_run, differential_run_with, DiffOptions, DiffReport, Divergence, DivergenceDetail,
};
pub use heap::OracleHeap;
pub use random::{random_trace, RandomTraceConfig};
pub use replay::{ReplayError, Replayer};
pub use shrink::{shrink_trace, ShrinkError};
pub use trace::{OpTrace, ParseError, TraceOp};

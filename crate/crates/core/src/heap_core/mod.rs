//! Node arena, circular list primitives, the tie-broken key order and the
//! CLRS forest operations shared by both heap variants.

mod arena;
mod key;
mod metrics;
mod state;
mod validate;

pub use arena::NodeHandle;
pub(crate) use arena::NodeId;
pub use key::TotalKey;
pub use metrics::MetricsRecord;
pub use state::{HandleRemap, HeapState, NodeView};
pub use validate::{max_degree_bound, slot_bound, ValidationReport, Violation, ViolationKind};

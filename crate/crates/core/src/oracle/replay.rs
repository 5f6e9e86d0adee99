use std::collections::HashMap;

use thiserror::Error;

use super::{OpTrace, TraceOp};
use crate::error::HeapError;
use crate::heap_core::{NodeHandle, TotalKey, ValidationReport};
use crate::AddressableHeap;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum ReplayError {
    #[error("ordinal {0} does not name a live node of this heap")]
    InvalidOrdinal(u64),
    #[error(transparent)]
    Heap(#[from] HeapError),
    #[error("validator: {0}")]
    Validation(ValidationReport),
}

/// Replays trace operations on one heap, translating insertion ordinals to
/// handles. Extract-min results (nested blocks included) accumulate in
/// [`Replayer::outputs`].
#[derive(Debug)]
pub struct Replayer<H> {
    heap: H,
    handles: HashMap<u64, NodeHandle>,
    ordinals: HashMap<NodeHandle, u64>,
    next_ordinal: u64,
    validate: bool,
    outputs: Vec<Option<TotalKey>>,
}

impl<H: AddressableHeap> Replayer<H> {
    /// With `validate`, the heap's validator runs after every operation.
    pub fn new(validate: bool) -> Self {
        Self::with_heap(H::default(), validate)
    }

    pub fn with_heap(heap: H, validate: bool) -> Self {
        Self {
            heap,
            handles: HashMap::new(),
            ordinals: HashMap::new(),
            next_ordinal: 0,
            validate,
            outputs: Vec::new(),
        }
    }

    pub fn heap(&self) -> &H {
        &self.heap
    }

    pub fn heap_mut(&mut self) -> &mut H {
        &mut self.heap
    }

    pub fn into_heap(self) -> H {
        self.heap
    }

    pub fn outputs(&self) -> &[Option<TotalKey>] {
        &self.outputs
    }

    pub fn handle(&self, ordinal: u64) -> Option<NodeHandle> {
        self.handles.get(&ordinal).copied()
    }

    fn forget(&mut self, h: NodeHandle) {
        if let Some(o) = self.ordinals.remove(&h) {
            self.handles.remove(&o);
        }
    }

    fn live(&self, ordinal: u64) -> Result<NodeHandle, ReplayError> {
        self.handle(ordinal)
            .ok_or(ReplayError::InvalidOrdinal(ordinal))
    }

    /// Applies one operation. Returns the extracted key for `ExtractMin`.
    pub fn apply(&mut self, op: &TraceOp) -> Result<Option<TotalKey>, ReplayError> {
        let mut result = None;
        match op {
            TraceOp::Insert(k) => {
                let h = self.heap.insert(*k);
                self.handles.insert(self.next_ordinal, h);
                self.ordinals.insert(h, self.next_ordinal);
                self.next_ordinal += 1;
            }
            TraceOp::ExtractMin => {
                let min = self.heap.find_min().map(|(h, _)| h);
                result = self.heap.extract_min()?;
                if let Some(h) = min {
                    self.forget(h);
                }
                self.outputs.push(result);
            }
            TraceOp::DecreaseKey { ordinal, key } => {
                let h = self.live(*ordinal)?;
                self.heap.decrease_key(h, *key)?;
            }
            TraceOp::Delete(ordinal) => {
                let h = self.live(*ordinal)?;
                self.heap.delete(h)?;
                self.forget(h);
            }
            TraceOp::Union(inner) => {
                let mut child = Replayer::<H>::new(self.validate);
                child.next_ordinal = self.next_ordinal;
                let outcome = child.run(inner);
                self.next_ordinal = child.next_ordinal;
                self.outputs.append(&mut child.outputs);
                outcome?;
                let remap = self.heap.union(child.heap);
                for (ordinal, old) in child.handles {
                    let new = remap.get(old).expect("union dropped a live node");
                    self.handles.insert(ordinal, new);
                    self.ordinals.insert(new, ordinal);
                }
            }
        }
        if self.validate {
            let report = self.heap.validate();
            if !report.passed() {
                return Err(ReplayError::Validation(report));
            }
        }
        Ok(result)
    }

    pub fn run(&mut self, trace: &OpTrace) -> Result<(), ReplayError> {
        for op in &trace.ops {
            self.apply(op)?;
        }
        Ok(())
    }
}

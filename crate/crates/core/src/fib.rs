//! Fibonacci heap with an order-preserving consolidation.
//!
//! Insert, find-min, union, decrease-key and delete are the CLRS operations.
//! `extract_min` differs only in CONSOLIDATE: the root list is walked oldest
//! to newest and each root is dropped into a degree-indexed [`SlotTable`].
//! A slot may keep a node that has since become a child, and a slot may hold
//! a node whose degree is one above the slot index (a "darkened" node, which
//! may not take another child at that slot). Only parentless slot entries
//! form the new root list.

use crate::error::HeapError;
use crate::heap_core::{
    slot_bound, HandleRemap, HeapState, MetricsRecord, NodeHandle, NodeId, TotalKey,
    ValidationReport,
};
use crate::{AddressableHeap, HeapKind};

/// Consolidation array indexed by degree.
#[derive(Debug, Clone)]
pub struct SlotTable {
    slots: Vec<Option<NodeId>>,
    bound: usize,
    n: usize,
}

impl SlotTable {
    /// Table for consolidating a forest of `n` nodes; indices above
    /// `ceil(log_phi(n)) + 2` are rejected.
    pub(crate) fn new(n: usize) -> Self {
        let bound = slot_bound(n);
        Self {
            slots: vec![None; bound + 1],
            bound,
            n,
        }
    }

    fn check(&self, d: usize) -> Result<(), HeapError> {
        if d > self.bound {
            return Err(HeapError::SlotBoundExceeded {
                slot: d,
                bound: self.bound,
                n: self.n,
            });
        }
        Ok(())
    }

    fn get(&self, d: usize) -> Option<NodeId> {
        self.slots[d]
    }

    fn set(&mut self, d: usize, x: NodeId) {
        self.slots[d] = Some(x);
    }

    fn occupied(&self) -> impl Iterator<Item = (usize, NodeId)> + '_ {
        self.slots
            .iter()
            .enumerate()
            .filter_map(|(d, s)| s.map(|x| (d, x)))
    }
}

/// What the last consolidation did, recorded when tracing is enabled.
#[derive(Debug, Clone, Default, PartialEq, Eq)]
pub struct ConsolidateTrace {
    /// `(key, slot)` each time a node took a child while staying in its slot.
    pub darkened: Vec<(i64, usize)>,
    /// Final slot contents as `(key, degree)`.
    pub slots: Vec<Option<(i64, u32)>>,
}

#[derive(Debug, Clone, Default)]
pub struct AdaptiveFibHeap {
    state: HeapState,
    tracing: bool,
    last_trace: Option<ConsolidateTrace>,
}

impl AdaptiveFibHeap {
    pub fn new() -> Self {
        Self::default()
    }

    /// Record a [`ConsolidateTrace`] for each consolidation.
    pub fn set_tracing(&mut self, on: bool) {
        self.tracing = on;
    }

    pub fn last_trace(&self) -> Option<&ConsolidateTrace> {
        self.last_trace.as_ref()
    }

    pub fn state(&self) -> &HeapState {
        &self.state
    }

    pub fn compare_less(&mut self, a: NodeHandle, b: NodeHandle) -> Result<bool, HeapError> {
        self.state.compare_less(a, b)
    }

    pub fn render(&self) -> String {
        self.state.render()
    }

    /// Drops `x` into slot `d`, linking against the current occupant.
    fn append_slot(
        &mut self,
        x: NodeId,
        d: usize,
        table: &mut SlotTable,
        trace: &mut Option<ConsolidateTrace>,
    ) -> Result<(), HeapError> {
        table.check(d)?;
        let st = &mut self.state;
        if let Some(y) = table.get(d) {
            if st.less(y, x) {
                if st.nodes[y].degree as usize == d {
                    st.link(x, y);
                }
                if st.nodes[y].parent.is_none() {
                    let dy = st.nodes[y].degree as usize;
                    if dy <= d {
                        return Err(HeapError::Structural("slot recursion did not advance"));
                    }
                    self.append_slot(y, dy, table, trace)?;
                }
            } else if st.nodes[y].parent.is_none() {
                st.link(y, x);
                if let Some(t) = trace {
                    t.darkened.push((st.nodes[x].key.key, d));
                }
            }
        }
        table.set(d, x);
        Ok(())
    }

    fn consolidate(&mut self) -> Result<(), HeapError> {
        let mut trace = self.tracing.then(ConsolidateTrace::default);
        let st = &mut self.state;
        st.metrics.consolidate_calls += 1;
        st.metrics.consolidate_cycles += 1;

        let roots = st.root_ids();
        for &x in &roots {
            st.nodes.list_remove(x);
        }
        st.root = None;

        let mut table = SlotTable::new(st.n);
        for x in roots {
            let d = self.state.nodes[x].degree as usize;
            self.append_slot(x, d, &mut table, &mut trace)?;
        }

        let st = &mut self.state;
        for (d, x) in table.occupied() {
            let degree = st.nodes[x].degree as usize;
            if degree != d && degree != d + 1 {
                return Err(HeapError::Structural("slot holds a node of foreign degree"));
            }
            if st.nodes[x].parent.is_none() {
                st.push_root(x);
                let m = st.min.expect("consolidate of an empty heap");
                if st.less(x, m) {
                    st.min = Some(x);
                }
            }
        }
        if let Some(t) = trace.as_mut() {
            t.slots = table
                .slots
                .iter()
                .map(|s| s.map(|x| (st.nodes[x].key.key, st.nodes[x].degree)))
                .collect();
            while t.slots.last() == Some(&None) {
                t.slots.pop();
            }
        }
        self.last_trace = trace;
        Ok(())
    }
}

impl AddressableHeap for AdaptiveFibHeap {
    const KIND: HeapKind = HeapKind::Fib;

    fn insert(&mut self, key: i64) -> NodeHandle {
        self.state.insert(key)
    }

    fn find_min(&self) -> Option<(NodeHandle, TotalKey)> {
        self.state.find_min()
    }

    fn extract_min(&mut self) -> Result<Option<TotalKey>, HeapError> {
        let Some((key, more)) = self.state.remove_min() else {
            return Ok(None);
        };
        if more {
            self.consolidate()?;
        }
        Ok(Some(key))
    }

    fn decrease_key(&mut self, h: NodeHandle, new_key: i64) -> Result<(), HeapError> {
        self.state.decrease_key(h, new_key)
    }

    fn delete(&mut self, h: NodeHandle) -> Result<TotalKey, HeapError> {
        self.state.doom(h)?;
        self.extract_min()?
            .ok_or(HeapError::Structural("delete found an empty heap"))
    }

    fn union(&mut self, other: Self) -> HandleRemap {
        self.state.union(other.state)
    }

    fn len(&self) -> usize {
        self.state.len()
    }

    fn metrics(&self) -> MetricsRecord {
        *self.state.metrics()
    }

    fn take_metrics(&mut self) -> MetricsRecord {
        self.state.take_metrics()
    }

    fn max_degree(&self) -> u32 {
        self.state.max_degree()
    }

    /// Structure, heap order, the child-degree lemma and the degree bound.
    fn validate(&self) -> ValidationReport {
        self.state.validate_structure(true)
    }
}

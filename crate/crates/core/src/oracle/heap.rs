use std::collections::BTreeMap;

use crate::error::HeapError;
use crate::heap_core::{HandleRemap, MetricsRecord, NodeHandle, TotalKey, ValidationReport};
use crate::{AddressableHeap, HeapKind};

/// Ordered map from `(key, seq)` to handle index. Counts nothing.
#[derive(Debug, Clone, Default)]
pub struct OracleHeap {
    set: BTreeMap<TotalKey, u32>,
    /// Indexed by handle; slots are never reused.
    entries: Vec<Option<TotalKey>>,
    next_seq: u64,
}

impl OracleHeap {
    pub fn new() -> Self {
        Self::default()
    }

    pub fn key_of(&self, h: NodeHandle) -> Result<TotalKey, HeapError> {
        match self.entries.get(h.index()) {
            Some(Some(k)) if h.generation() == 0 => Ok(*k),
            _ => Err(HeapError::InvalidHandle(h)),
        }
    }

    fn push(&mut self, k: TotalKey) -> NodeHandle {
        let index = self.entries.len() as u32;
        self.entries.push(Some(k));
        self.set.insert(k, index);
        NodeHandle::new(index, 0)
    }
}

impl AddressableHeap for OracleHeap {
    const KIND: HeapKind = HeapKind::Oracle;

    fn insert(&mut self, key: i64) -> NodeHandle {
        let k = TotalKey::new(key, self.next_seq);
        self.next_seq += 1;
        self.push(k)
    }

    fn find_min(&self) -> Option<(NodeHandle, TotalKey)> {
        let (&k, &i) = self.set.first_key_value()?;
        Some((NodeHandle::new(i, 0), k))
    }

    fn extract_min(&mut self) -> Result<Option<TotalKey>, HeapError> {
        let Some((k, i)) = self.set.pop_first() else {
            return Ok(None);
        };
        self.entries[i as usize] = None;
        Ok(Some(k))
    }

    fn decrease_key(&mut self, h: NodeHandle, new_key: i64) -> Result<(), HeapError> {
        let old = self.key_of(h)?;
        if new_key > old.key {
            return Err(HeapError::KeyIncrease {
                current: old.key,
                requested: new_key,
            });
        }
        let new = TotalKey::new(new_key, old.seq);
        self.set.remove(&old);
        self.set.insert(new, h.index() as u32);
        self.entries[h.index()] = Some(new);
        Ok(())
    }

    fn delete(&mut self, h: NodeHandle) -> Result<TotalKey, HeapError> {
        let k = self.key_of(h)?;
        self.set.remove(&k);
        self.entries[h.index()] = None;
        Ok(k)
    }

    /// Absorbed ordinals are shifted past ours, as in the forest heaps.
    fn union(&mut self, other: Self) -> HandleRemap {
        let offset = self.next_seq;
        let mut remap = HandleRemap::default();
        for (i, e) in other.entries.into_iter().enumerate() {
            if let Some(k) = e {
                let new = self.push(TotalKey::new(k.key, k.seq + offset));
                remap.set(NodeHandle::new(i as u32, 0), new);
            }
        }
        self.next_seq = offset + other.next_seq;
        remap
    }

    fn len(&self) -> usize {
        self.set.len()
    }

    fn metrics(&self) -> MetricsRecord {
        MetricsRecord::default()
    }

    fn take_metrics(&mut self) -> MetricsRecord {
        MetricsRecord::default()
    }

    fn max_degree(&self) -> u32 {
        0
    }

    fn validate(&self) -> ValidationReport {
        ValidationReport::pass()
    }
}

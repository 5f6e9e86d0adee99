use std::fmt::Write as _;

use super::arena::{Arena, NodeId};
use super::{MetricsRecord, NodeHandle, TotalKey};
use crate::error::HeapError;

/// Read-only view of one node.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct NodeView {
    pub key: TotalKey,
    pub degree: u32,
    pub mark: bool,
    pub parent: Option<NodeHandle>,
    /// Earliest-linked first.
    pub children: Vec<NodeHandle>,
}

/// Maps handles of a heap absorbed by `union` to handles in the receiver.
#[derive(Debug, Clone, Default)]
pub struct HandleRemap {
    entries: Vec<Option<(u32, NodeHandle)>>,
}

impl HandleRemap {
    pub(crate) fn with_len(len: usize) -> Self {
        Self {
            entries: vec![None; len],
        }
    }

    pub(crate) fn set(&mut self, old: NodeHandle, new: NodeHandle) {
        if self.entries.len() <= old.index() {
            self.entries.resize(old.index() + 1, None);
        }
        self.entries[old.index()] = Some((old.generation(), new));
    }

    /// The new handle for `old`, or `None` if `old` was not live in the
    /// absorbed heap.
    pub fn get(&self, old: NodeHandle) -> Option<NodeHandle> {
        match self.entries.get(old.index()) {
            Some(Some((gen, new))) if *gen == old.generation() => Some(*new),
            _ => None,
        }
    }
}

/// Forest of heap-ordered trees shared by both heap variants: node store,
/// circular root list anchored at its oldest element, the minimum, and
/// counters. Everything except consolidation lives here.
#[derive(Debug, Clone, Default)]
pub struct HeapState {
    pub(crate) nodes: Arena,
    pub(crate) min: Option<NodeId>,
    /// Oldest element of the root list.
    pub(crate) root: Option<NodeId>,
    pub(crate) n: usize,
    next_seq: u64,
    pub(crate) metrics: MetricsRecord,
    /// Live node count per degree; trailing zeros trimmed.
    degree_hist: Vec<usize>,
}

impl HeapState {
    pub fn new() -> Self {
        Self::default()
    }

    pub fn len(&self) -> usize {
        self.n
    }

    pub fn is_empty(&self) -> bool {
        self.n == 0
    }

    pub fn metrics(&self) -> &MetricsRecord {
        &self.metrics
    }

    pub fn take_metrics(&mut self) -> MetricsRecord {
        self.metrics.snapshot_and_reset()
    }

    /// Current maximum degree over all live nodes.
    pub fn max_degree(&self) -> u32 {
        self.degree_hist.len().saturating_sub(1) as u32
    }

    fn hist_add(&mut self, d: u32) {
        let d = d as usize;
        if self.degree_hist.len() <= d {
            self.degree_hist.resize(d + 1, 0);
        }
        self.degree_hist[d] += 1;
    }

    fn hist_sub(&mut self, d: u32) {
        self.degree_hist[d as usize] -= 1;
        while self.degree_hist.last() == Some(&0) {
            self.degree_hist.pop();
        }
    }

    /// Total-order test without touching the comparison counter. A doomed
    /// node (being deleted) sits below every key.
    pub(crate) fn precedes(&self, a: NodeId, b: NodeId) -> bool {
        let (x, y) = (&self.nodes[a], &self.nodes[b]);
        match (x.doomed, y.doomed) {
            (true, false) => true,
            (false, true) => false,
            _ => x.key < y.key,
        }
    }

    /// Counted key comparison: every call is one comparison.
    pub(crate) fn less(&mut self, a: NodeId, b: NodeId) -> bool {
        self.metrics.comparisons += 1;
        self.precedes(a, b)
    }

    /// `TotalKey(a) < TotalKey(b)`, counted as one comparison.
    pub fn compare_less(&mut self, a: NodeHandle, b: NodeHandle) -> Result<bool, HeapError> {
        let a = self.nodes.resolve(a)?;
        let b = self.nodes.resolve(b)?;
        Ok(self.less(a, b))
    }

    pub fn contains(&self, h: NodeHandle) -> bool {
        self.nodes.resolve(h).is_ok()
    }

    pub fn key_of(&self, h: NodeHandle) -> Result<TotalKey, HeapError> {
        Ok(self.nodes[self.nodes.resolve(h)?].key)
    }

    pub fn node(&self, h: NodeHandle) -> Result<NodeView, HeapError> {
        let id = self.nodes.resolve(h)?;
        let rec = &self.nodes[id];
        Ok(NodeView {
            key: rec.key,
            degree: rec.degree,
            mark: rec.mark,
            parent: rec.parent.map(|p| self.nodes.handle(p)),
            children: self
                .nodes
                .children(id)
                .map(|c| self.nodes.handle(c))
                .collect(),
        })
    }

    /// Root handles, oldest first.
    pub fn roots(&self) -> Vec<NodeHandle> {
        self.nodes
            .list_iter(self.root)
            .map(|id| self.nodes.handle(id))
            .collect()
    }

    pub(crate) fn root_ids(&self) -> Vec<NodeId> {
        self.nodes.list_iter(self.root).collect()
    }

    pub fn root_handle(&self) -> Option<NodeHandle> {
        self.root.map(|id| self.nodes.handle(id))
    }

    pub fn find_min(&self) -> Option<(NodeHandle, TotalKey)> {
        self.min
            .map(|id| (self.nodes.handle(id), self.nodes[id].key))
    }

    /// New degree-0 root at the root-list tail.
    pub fn insert(&mut self, key: i64) -> NodeHandle {
        let seq = self.next_seq;
        self.next_seq += 1;
        let x = self.nodes.alloc(TotalKey::new(key, seq));
        self.hist_add(0);
        self.push_root(x);
        self.n += 1;
        match self.min {
            None => self.min = Some(x),
            Some(m) => {
                if self.less(x, m) {
                    self.min = Some(x);
                }
            }
        }
        self.nodes.handle(x)
    }

    pub(crate) fn push_root(&mut self, x: NodeId) {
        self.root = Some(
            self.nodes
                .list_append_tail(self.root, x)
                .expect("root append of a linked node"),
        );
    }

    /// Removes `x` from the root list, moving the anchor on if needed.
    pub(crate) fn detach_root(&mut self, x: NodeId) {
        let next = self.nodes.list_remove(x);
        if self.root == Some(x) {
            self.root = next;
        }
    }

    /// Makes detached, parentless `child` the newest child of `parent`.
    pub(crate) fn link(&mut self, child: NodeId, parent: NodeId) {
        debug_assert!(self.nodes[child].parent.is_none());
        let anchor = self.nodes[parent].child;
        let anchor = self
            .nodes
            .list_append_tail(anchor, child)
            .expect("link of a linked node");
        self.nodes[parent].child = Some(anchor);
        self.nodes[child].parent = Some(parent);
        self.nodes[child].mark = false;
        let d = self.nodes[parent].degree;
        self.nodes[parent].degree = d + 1;
        self.hist_sub(d);
        self.hist_add(d + 1);
        self.metrics.links += 1;
        self.metrics.max_degree_seen = self.metrics.max_degree_seen.max(d + 1);
    }

    /// Moves `x` from the child list of `parent` to the root-list tail.
    fn cut(&mut self, x: NodeId, parent: NodeId) {
        let next = self.nodes.list_remove(x);
        if self.nodes[parent].child == Some(x) {
            self.nodes[parent].child = next;
        }
        let d = self.nodes[parent].degree;
        self.nodes[parent].degree = d - 1;
        self.hist_sub(d);
        self.hist_add(d - 1);
        self.nodes[x].parent = None;
        self.nodes[x].mark = false;
        self.push_root(x);
        self.metrics.cuts += 1;
    }

    fn cascading_cut(&mut self, mut y: NodeId) {
        while let Some(z) = self.nodes[y].parent {
            if !self.nodes[y].mark {
                self.nodes[y].mark = true;
                return;
            }
            self.cut(y, z);
            self.metrics.cascading_cuts += 1;
            y = z;
        }
    }

    /// CLRS DECREASE-KEY after the key of `x` has been lowered.
    fn settle_decreased(&mut self, x: NodeId) {
        if let Some(y) = self.nodes[x].parent {
            if self.less(x, y) {
                self.cut(x, y);
                self.cascading_cut(y);
            }
        }
        let m = self.min.expect("non-empty heap has a minimum");
        if self.less(x, m) {
            self.min = Some(x);
        }
    }

    pub fn decrease_key(&mut self, h: NodeHandle, new_key: i64) -> Result<(), HeapError> {
        let x = self.nodes.resolve(h)?;
        let current = self.nodes[x].key.key;
        if new_key > current {
            return Err(HeapError::KeyIncrease {
                current,
                requested: new_key,
            });
        }
        self.nodes[x].key.key = new_key;
        self.settle_decreased(x);
        Ok(())
    }

    /// First half of delete: lowers `h` to minus infinity so it becomes the
    /// minimum. The caller then runs its extract-min.
    pub(crate) fn doom(&mut self, h: NodeHandle) -> Result<(), HeapError> {
        let x = self.nodes.resolve(h)?;
        self.nodes[x].doomed = true;
        self.settle_decreased(x);
        Ok(())
    }

    /// EXTRACT-MIN up to (not including) CONSOLIDATE. Splices the minimum's
    /// children onto the root-list tail, earliest-linked first, removes the
    /// minimum and sets `min` to its right neighbour. Returns the removed key
    /// and whether the root list still needs consolidating.
    pub(crate) fn remove_min(&mut self) -> Option<(TotalKey, bool)> {
        let z = self.min?;
        while let Some(c) = self.nodes[z].child {
            self.nodes[z].child = self.nodes.list_remove(c);
            self.nodes[c].parent = None;
            self.nodes[c].mark = false;
            self.push_root(c);
        }
        let d = self.nodes[z].degree;
        self.nodes[z].degree = 0;
        self.hist_sub(d);

        let right = self.nodes[z].right;
        self.detach_root(z);
        let more = self.root.is_some();
        self.min = more.then_some(right);
        self.n -= 1;
        let rec = self.nodes.release(z);
        Some((rec.key, more))
    }

    /// Absorbs `other`. Its root list follows ours; its insertion ordinals are
    /// shifted past ours so tie-breaking stays a total order.
    pub fn union(&mut self, other: HeapState) -> HandleRemap {
        let mut remap = HandleRemap::with_len(0);
        let offset = self.next_seq;
        let mut ids: Vec<Option<NodeId>> = Vec::new();
        for old in other.nodes.ids() {
            let rec = &other.nodes[old];
            let new = self
                .nodes
                .alloc(TotalKey::new(rec.key.key, rec.key.seq + offset));
            if ids.len() <= old.0 as usize {
                ids.resize(old.0 as usize + 1, None);
            }
            ids[old.0 as usize] = Some(new);
            remap.set(other.nodes.handle(old), self.nodes.handle(new));
        }
        let map = |id: NodeId| ids[id.0 as usize].expect("link to a vacant slot");
        for old in other.nodes.ids() {
            let rec = &other.nodes[old];
            let new = map(old);
            let dst = &mut self.nodes[new];
            dst.doomed = rec.doomed;
            dst.degree = rec.degree;
            dst.mark = rec.mark;
            dst.parent = rec.parent.map(map);
            dst.child = rec.child.map(map);
            dst.left = map(rec.left);
            dst.right = map(rec.right);
        }

        if let Some(b) = other.root.map(map) {
            match self.root {
                None => self.root = Some(b),
                Some(a) => {
                    let a_tail = self.nodes[a].left;
                    let b_tail = self.nodes[b].left;
                    self.nodes[a_tail].right = b;
                    self.nodes[b].left = a_tail;
                    self.nodes[b_tail].right = a;
                    self.nodes[a].left = b_tail;
                }
            }
        }
        if let Some(m2) = other.min.map(map) {
            match self.min {
                None => self.min = Some(m2),
                Some(m1) => {
                    if self.less(m2, m1) {
                        self.min = Some(m2);
                    }
                }
            }
        }

        self.n += other.n;
        self.next_seq += other.next_seq;
        for (d, &count) in other.degree_hist.iter().enumerate() {
            for _ in 0..count {
                self.hist_add(d as u32);
            }
        }
        self.metrics.absorb(&other.metrics);
        remap
    }

    /// Renders the forest as `key{child,child}` trees, roots oldest first.
    /// Recursive; meant for small heaps.
    pub fn render(&self) -> String {
        let mut out = String::new();
        for (i, r) in self.nodes.list_iter(self.root).enumerate() {
            if i > 0 {
                out.push(' ');
            }
            self.render_tree(r, &mut out);
        }
        out
    }

    fn render_tree(&self, x: NodeId, out: &mut String) {
        let _ = write!(out, "{}", self.nodes[x].key.key);
        if self.nodes[x].child.is_some() {
            out.push('{');
            for (i, c) in self.nodes.children(x).enumerate() {
                if i > 0 {
                    out.push(',');
                }
                self.render_tree(c, out);
            }
            out.push('}');
        }
    }
}

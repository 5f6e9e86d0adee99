use std::ops::{Index, IndexMut};

use super::TotalKey;
use crate::error::HeapError;

/// Opaque reference to a node of one heap instance.
///
/// Handles stay valid until their node is extracted or deleted. Slots are
/// recycled, so a handle also carries the slot generation it was issued for.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct NodeHandle {
    index: u32,
    generation: u32,
}

impl NodeHandle {
    pub(crate) fn new(index: u32, generation: u32) -> Self {
        Self { index, generation }
    }

    pub fn index(self) -> usize {
        self.index as usize
    }

    pub fn generation(self) -> u32 {
        self.generation
    }
}

/// Internal arena index; only meaningful while the slot is occupied.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub(crate) struct NodeId(pub(crate) u32);

#[derive(Debug, Clone)]
pub(crate) struct NodeRecord {
    pub(crate) key: TotalKey,
    /// Set by delete: the node compares below every other key.
    pub(crate) doomed: bool,
    pub(crate) degree: u32,
    pub(crate) mark: bool,
    pub(crate) parent: Option<NodeId>,
    /// Oldest child; siblings follow in link order through `right`.
    pub(crate) child: Option<NodeId>,
    pub(crate) left: NodeId,
    pub(crate) right: NodeId,
}

#[derive(Debug, Clone)]
struct Slot {
    generation: u32,
    node: Option<NodeRecord>,
}

/// Node store with a free list. Links between nodes are arena indices.
#[derive(Debug, Clone, Default)]
pub(crate) struct Arena {
    slots: Vec<Slot>,
    free: Vec<u32>,
    live: usize,
}

impl Arena {
    pub(crate) fn alloc(&mut self, key: TotalKey) -> NodeId {
        let id = match self.free.pop() {
            Some(i) => NodeId(i),
            None => {
                let i = u32::try_from(self.slots.len()).expect("arena exhausted");
                self.slots.push(Slot {
                    generation: 0,
                    node: None,
                });
                NodeId(i)
            }
        };
        self.slots[id.0 as usize].node = Some(NodeRecord {
            key,
            doomed: false,
            degree: 0,
            mark: false,
            parent: None,
            child: None,
            left: id,
            right: id,
        });
        self.live += 1;
        id
    }

    pub(crate) fn release(&mut self, id: NodeId) -> NodeRecord {
        let slot = &mut self.slots[id.0 as usize];
        let node = slot.node.take().expect("release of vacant slot");
        slot.generation = slot.generation.wrapping_add(1);
        self.free.push(id.0);
        self.live -= 1;
        node
    }

    /// Number of slots ever allocated; bounds every `NodeId` index.
    pub(crate) fn capacity(&self) -> usize {
        self.slots.len()
    }

    pub(crate) fn live(&self) -> usize {
        self.live
    }

    pub(crate) fn handle(&self, id: NodeId) -> NodeHandle {
        NodeHandle::new(id.0, self.slots[id.0 as usize].generation)
    }

    pub(crate) fn resolve(&self, h: NodeHandle) -> Result<NodeId, HeapError> {
        match self.slots.get(h.index()) {
            Some(slot) if slot.generation == h.generation() && slot.node.is_some() => {
                Ok(NodeId(h.index))
            }
            _ => Err(HeapError::InvalidHandle(h)),
        }
    }

    /// Occupied slots in index order.
    pub(crate) fn ids(&self) -> impl Iterator<Item = NodeId> + '_ {
        self.slots
            .iter()
            .enumerate()
            .filter(|(_, s)| s.node.is_some())
            .map(|(i, _)| NodeId(i as u32))
    }

    pub(crate) fn is_detached(&self, x: NodeId) -> bool {
        self[x].left == x && self[x].right == x
    }

    /// Links detached `x` just left of `anchor`, i.e. as the newest element of
    /// the list. Returns the (possibly new) anchor.
    pub(crate) fn list_append_tail(
        &mut self,
        anchor: Option<NodeId>,
        x: NodeId,
    ) -> Result<NodeId, HeapError> {
        if !self.is_detached(x) || anchor == Some(x) {
            return Err(HeapError::Structural(
                "append of a node that is already linked",
            ));
        }
        let Some(a) = anchor else {
            return Ok(x);
        };
        let tail = self[a].left;
        self[x].left = tail;
        self[x].right = a;
        self[tail].right = x;
        self[a].left = x;
        Ok(a)
    }

    /// Splices `x` out of its list and detaches it. Returns the former right
    /// neighbour, or `None` if `x` was alone.
    pub(crate) fn list_remove(&mut self, x: NodeId) -> Option<NodeId> {
        let (l, r) = (self[x].left, self[x].right);
        if r == x {
            return None;
        }
        self[l].right = r;
        self[r].left = l;
        self[x].left = x;
        self[x].right = x;
        Some(r)
    }

    /// Walks a circular list from `anchor` rightwards (oldest to newest).
    pub(crate) fn list_iter(&self, anchor: Option<NodeId>) -> ListIter<'_> {
        ListIter {
            arena: self,
            anchor,
            next: anchor,
        }
    }

    pub(crate) fn children(&self, x: NodeId) -> ListIter<'_> {
        self.list_iter(self[x].child)
    }
}

impl Index<NodeId> for Arena {
    type Output = NodeRecord;

    fn index(&self, id: NodeId) -> &NodeRecord {
        self.slots[id.0 as usize]
            .node
            .as_ref()
            .expect("dangling node id")
    }
}

impl IndexMut<NodeId> for Arena {
    fn index_mut(&mut self, id: NodeId) -> &mut NodeRecord {
        self.slots[id.0 as usize]
            .node
            .as_mut()
            .expect("dangling node id")
    }
}

pub(crate) struct ListIter<'a> {
    arena: &'a Arena,
    anchor: Option<NodeId>,
    next: Option<NodeId>,
}

impl Iterator for ListIter<'_> {
    type Item = NodeId;

    fn next(&mut self) -> Option<NodeId> {
        let cur = self.next?;
        let r = self.arena[cur].right;
        self.next = if Some(r) == self.anchor {
            None
        } else {
            Some(r)
        };
        Some(cur)
    }
}

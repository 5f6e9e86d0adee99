use std::collections::HashMap;

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use super::{OpTrace, OracleHeap, TraceOp};
use crate::heap_core::NodeHandle;
use crate::AddressableHeap;

/// Shape of the traces produced by [`random_trace`]. Weights are relative.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct RandomTraceConfig {
    /// Upper bound on top-level operations; the actual length is uniform in
    /// `1..=max_len`.
    pub max_len: usize,
    /// Keys are drawn from `-key_range..key_range`, so duplicates are common.
    pub key_range: i64,
    pub insert: u32,
    pub extract: u32,
    pub decrease: u32,
    pub delete: u32,
    pub union: u32,
    /// Upper bound on operations inside one nested union block.
    pub union_len: usize,
    /// How deep union blocks may nest.
    pub union_depth: u32,
}

impl Default for RandomTraceConfig {
    fn default() -> Self {
        Self {
            max_len: 4096,
            key_range: 1000,
            insert: 40,
            extract: 25,
            decrease: 20,
            delete: 10,
            union: 5,
            union_len: 16,
            union_depth: 2,
        }
    }
}

struct Shadow {
    heap: OracleHeap,
    handles: HashMap<u64, NodeHandle>,
    ordinals: HashMap<NodeHandle, u64>,
    // ordinals that may still be live; dead ones are pruned on sight
    candidates: Vec<u64>,
}

impl Shadow {
    fn new() -> Self {
        Self {
            heap: OracleHeap::new(),
            handles: HashMap::new(),
            ordinals: HashMap::new(),
            candidates: Vec::new(),
        }
    }

    fn pick_live(&mut self, rng: &mut ChaCha8Rng) -> Option<(u64, NodeHandle)> {
        while !self.candidates.is_empty() {
            let i = rng.random_range(0..self.candidates.len());
            let o = self.candidates[i];
            match self.handles.get(&o) {
                Some(&h) => return Some((o, h)),
                None => {
                    self.candidates.swap_remove(i);
                }
            }
        }
        None
    }

    fn add(&mut self, ordinal: u64, h: NodeHandle) {
        self.handles.insert(ordinal, h);
        self.ordinals.insert(h, ordinal);
        self.candidates.push(ordinal);
    }

    fn forget(&mut self, h: NodeHandle) {
        if let Some(o) = self.ordinals.remove(&h) {
            self.handles.remove(&o);
        }
    }
}

struct Gen<'a> {
    cfg: &'a RandomTraceConfig,
    rng: ChaCha8Rng,
    next_ordinal: u64,
}

impl Gen<'_> {
    fn block(&mut self, len: usize, depth: u32) -> (Vec<TraceOp>, Shadow) {
        let cfg = self.cfg;
        let mut s = Shadow::new();
        let mut ops = Vec::with_capacity(len);
        let union = if depth < cfg.union_depth {
            cfg.union
        } else {
            0
        };
        let total = cfg.insert + cfg.extract + cfg.decrease + cfg.delete + union;
        while ops.len() < len {
            let mut r = self.rng.random_range(0..total);
            if r < cfg.insert {
                let k = self.rng.random_range(-cfg.key_range..cfg.key_range);
                let h = s.heap.insert(k);
                s.add(self.next_ordinal, h);
                self.next_ordinal += 1;
                ops.push(TraceOp::Insert(k));
                continue;
            }
            r -= cfg.insert;
            if r < cfg.extract {
                if let Some((h, _)) = s.heap.find_min() {
                    s.heap.extract_min().expect("oracle extract");
                    s.forget(h);
                }
                ops.push(TraceOp::ExtractMin);
                continue;
            }
            r -= cfg.extract;
            if r < cfg.decrease {
                if let Some((ordinal, h)) = s.pick_live(&mut self.rng) {
                    let cur = s.heap.key_of(h).expect("live handle").key;
                    let key = cur - self.rng.random_range(0..=cfg.key_range / 4);
                    s.heap.decrease_key(h, key).expect("oracle decrease");
                    ops.push(TraceOp::DecreaseKey { ordinal, key });
                }
                continue;
            }
            r -= cfg.decrease;
            if r < cfg.delete {
                if let Some((ordinal, h)) = s.pick_live(&mut self.rng) {
                    s.heap.delete(h).expect("oracle delete");
                    s.forget(h);
                    ops.push(TraceOp::Delete(ordinal));
                }
                continue;
            }
            let inner_len = self.rng.random_range(1..=cfg.union_len.max(1));
            let (inner, child) = self.block(inner_len, depth + 1);
            let remap = s.heap.union(child.heap);
            let mut moved: Vec<(u64, NodeHandle)> = child.handles.into_iter().collect();
            moved.sort_unstable();
            for (o, h) in moved {
                s.add(o, remap.get(h).expect("union keeps live nodes"));
            }
            ops.push(TraceOp::Union(OpTrace::new(inner)));
        }
        (ops, s)
    }
}

/// Seeded random trace over every operation kind. Every ordinal referenced
/// by a decrease-key or delete is live at that point, and decreases never
/// raise a key, so the oracle accepts the whole trace.
pub fn random_trace(seed: u64, cfg: &RandomTraceConfig) -> OpTrace {
    let mut g = Gen {
        cfg,
        rng: ChaCha8Rng::seed_from_u64(seed),
        next_ordinal: 0,
    };
    let len = g.rng.random_range(1..=cfg.max_len.max(1));
    OpTrace::new(g.block(len, 0).0)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::oracle::Replayer;

    #[test]
    fn oracle_accepts_generated_traces() {
        let cfg = RandomTraceConfig {
            max_len: 300,
            ..Default::default()
        };
        for seed in 0..50 {
            let t = random_trace(seed, &cfg);
            assert!(!t.is_empty() && t.len() <= 300);
            Replayer::<OracleHeap>::new(false).run(&t).unwrap();
        }
    }

    #[test]
    fn generation_is_deterministic() {
        let cfg = RandomTraceConfig::default();
        assert_eq!(random_trace(9, &cfg), random_trace(9, &cfg));
        assert_ne!(random_trace(9, &cfg), random_trace(10, &cfg));
    }

    #[test]
    fn all_op_kinds_appear() {
        let t = random_trace(
            3,
            &RandomTraceConfig {
                max_len: 4096,
                ..Default::default()
            },
        );
        let has = |f: fn(&TraceOp) -> bool| t.ops.iter().any(f);
        assert!(has(|o| matches!(o, TraceOp::Insert(_))));
        assert!(has(|o| matches!(o, TraceOp::ExtractMin)));
        assert!(has(|o| matches!(o, TraceOp::DecreaseKey { .. })));
        assert!(has(|o| matches!(o, TraceOp::Delete(_))));
        assert!(has(|o| matches!(o, TraceOp::Union(_))));
    }
}

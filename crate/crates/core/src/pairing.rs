//! Pairing-like heap: the same forest operations as [`crate::AdaptiveFibHeap`]
//! but CONSOLIDATE walks the circular root list comparing each root with the
//! node visited just before it, until only one root is left.
//!
//! The previously visited node `p` may already have been linked away. A
//! non-root `p` still takes `c` as a child when `p < c`, which is how
//! ascending runs turn into chains. Degrees are kept for validators only.

use crate::error::HeapError;
use crate::experiment::{generate, WorkloadSpec};
use crate::heap_core::{
    HandleRemap, HeapState, MetricsRecord, NodeHandle, NodeId, TotalKey, ValidationReport,
    ViolationKind,
};
use crate::oracle::Replayer;
use crate::{AddressableHeap, HeapKind};

/// Per-consolidation record kept while cycle logging is on.
#[derive(Debug, Clone, Default, PartialEq, Eq)]
pub struct ConsolidateLog {
    /// Root count before the walk.
    pub initial_roots: usize,
    /// Root list before the walk and after each cycle, anchor first.
    pub snapshots: Vec<Vec<TotalKey>>,
    /// Degree gained by each node that was a root before the walk.
    pub degree_increases: Vec<(TotalKey, u32)>,
    pub iterations: usize,
}

#[derive(Debug, Clone, Default)]
pub struct PairingLikeHeap {
    state: HeapState,
    cycle_logging: bool,
    cycle_log: Vec<ConsolidateLog>,
    // cycle stamp of the last visit to each arena slot
    visited: Vec<u64>,
    stamp: u64,
}

/// Walk budget for `k` roots: `4 k ceil(lg k) + 4`.
pub fn iteration_budget(k: usize) -> usize {
    let lg = if k <= 1 {
        0
    } else {
        (usize::BITS - (k - 1).leading_zeros()) as usize
    };
    4 * k * lg + 4
}

impl PairingLikeHeap {
    pub fn new() -> Self {
        Self::default()
    }

    pub fn set_cycle_logging(&mut self, on: bool) {
        self.cycle_logging = on;
    }

    pub fn cycle_log(&self) -> &[ConsolidateLog] {
        &self.cycle_log
    }

    pub fn take_cycle_log(&mut self) -> Vec<ConsolidateLog> {
        std::mem::take(&mut self.cycle_log)
    }

    pub fn state(&self) -> &HeapState {
        &self.state
    }

    pub fn render(&self) -> String {
        self.state.render()
    }

    fn root_keys(&self) -> Vec<TotalKey> {
        self.state
            .root_ids()
            .into_iter()
            .map(|id| self.state.nodes[id].key)
            .collect()
    }

    fn consolidate(&mut self) -> Result<(), HeapError> {
        let logging = self.cycle_logging;
        let initial: Vec<NodeId> = self.state.root_ids();
        let k = initial.len();
        let budget = iteration_budget(k);
        let mut log = logging.then(|| ConsolidateLog {
            initial_roots: k,
            snapshots: vec![self.root_keys()],
            ..Default::default()
        });
        let before: Vec<(NodeId, u32)> = if logging {
            initial
                .iter()
                .map(|&id| (id, self.state.nodes[id].degree))
                .collect()
        } else {
            Vec::new()
        };

        let st = &mut self.state;
        let visited = &mut self.visited;
        visited.resize(st.nodes.capacity(), 0);
        st.metrics.consolidate_calls += 1;
        let mut roots = k;
        let mut iterations = 0;
        let mut p = st
            .root
            .ok_or(HeapError::Structural("consolidate of an empty root list"))?;
        let mut c = st.nodes[p].right;
        self.stamp += 1;

        while c != p {
            // reaching a root already visited in this cycle means the walk
            // has wrapped around the list
            if visited[c.0 as usize] == self.stamp {
                st.metrics.consolidate_cycles += 1;
                if let Some(l) = log.as_mut() {
                    l.snapshots.push(
                        st.root_ids()
                            .into_iter()
                            .map(|id| st.nodes[id].key)
                            .collect(),
                    );
                }
                self.stamp += 1;
            }
            visited[c.0 as usize] = self.stamp;
            iterations += 1;
            if iterations > budget {
                return Err(HeapError::NonTermination { budget, roots: k });
            }
            let mut next = st.nodes[c].right;
            if st.less(p, c) {
                st.detach_root(c);
                st.link(c, p);
                roots -= 1;
            } else if st.nodes[p].parent.is_none() {
                st.detach_root(p);
                st.link(p, c);
                roots -= 1;
                // two-root list: the captured neighbour was p itself
                if next == p {
                    next = c;
                }
            }
            p = c;
            c = next;
        }
        if iterations > 0 {
            st.metrics.consolidate_cycles += 1;
            if let Some(l) = log.as_mut() {
                l.snapshots.push(vec![st.nodes[c].key]);
            }
        }

        if st.nodes[c].parent.is_some() || st.nodes[c].right != c || roots != 1 {
            return Err(HeapError::Structural("walk ended with more than one root"));
        }
        st.root = Some(c);
        st.min = Some(c);

        if let Some(mut l) = log {
            l.iterations = iterations;
            l.degree_increases = before
                .into_iter()
                .map(|(id, d)| (st.nodes[id].key, st.nodes[id].degree - d))
                .collect();
            self.cycle_log.push(l);
        }
        Ok(())
    }
}

impl AddressableHeap for PairingLikeHeap {
    const KIND: HeapKind = HeapKind::Pairing;

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

    fn validate(&self) -> ValidationReport {
        self.state.validate_structure(false)
    }
}

/// Elements of a circular list smaller than both circular neighbours.
/// A singleton has no neighbours other than itself and no local minimum.
pub fn circular_local_minima(list: &[TotalKey]) -> Vec<TotalKey> {
    let len = list.len();
    if len < 2 {
        return Vec::new();
    }
    (0..len)
        .filter(|&i| {
            let x = list[i];
            x < list[(i + len - 1) % len] && x < list[(i + 1) % len]
        })
        .map(|i| list[i])
        .collect()
}

/// Every circular local minimum of `before` must survive into `after`.
pub fn validate_pairing_cycle(before: &[TotalKey], after: &[TotalKey]) -> ValidationReport {
    for m in circular_local_minima(before) {
        if !after.contains(&m) {
            return ValidationReport::fail(ViolationKind::LocalMinimumLost, vec![m.key]);
        }
    }
    ValidationReport::pass()
}

/// Every degree increase from one consolidation of `k` roots must be below
/// `2 lg k`. Vacuous for `k < 2`.
pub fn validate_degree_growth(k: usize, deltas: &[(TotalKey, u32)]) -> ValidationReport {
    if k < 2 {
        return ValidationReport::pass();
    }
    let bound = 2.0 * (k as f64).log2();
    for &(key, delta) in deltas {
        if f64::from(delta) >= bound {
            return ValidationReport::fail(
                ViolationKind::DegreeGrowth {
                    increase: delta,
                    roots: k,
                },
                vec![key.key],
            );
        }
    }
    ValidationReport::pass()
}

/// Checks both lemmas on one logged consolidation.
pub fn validate_log(log: &ConsolidateLog) -> ValidationReport {
    for pair in log.snapshots.windows(2) {
        let r = validate_pairing_cycle(&pair[0], &pair[1]);
        if !r.passed() {
            return r;
        }
    }
    validate_degree_growth(log.initial_roots, &log.degree_increases)
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, serde::Serialize)]
pub struct DegreeProbeRow {
    pub n: usize,
    pub trial: u64,
    pub seed: u64,
    pub max_degree: u32,
}

/// Largest degree seen while replaying the workload for each size and trial.
/// Measurement only; nothing is asserted about the values.
pub fn probe_degree_bound(
    n_values: &[usize],
    trials: u64,
    workload: &WorkloadSpec,
) -> Result<Vec<DegreeProbeRow>, crate::experiment::RunError> {
    let mut rows = Vec::new();
    for &n in n_values {
        for trial in 0..trials {
            let spec = WorkloadSpec {
                n,
                seed: workload.seed.wrapping_add(trial),
                ..workload.clone()
            };
            let trace = generate(&spec)?;
            let mut replay = Replayer::<PairingLikeHeap>::new(false);
            replay.run(&trace)?;
            rows.push(DegreeProbeRow {
                n,
                trial,
                seed: spec.seed,
                max_degree: replay.heap().metrics().max_degree_seen,
            });
        }
    }
    Ok(rows)
}

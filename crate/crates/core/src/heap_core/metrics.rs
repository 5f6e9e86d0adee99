use serde::Serialize;

/// Operation counters accumulated over a heap's lifetime.
#[derive(Debug, Clone, Copy, Default, PartialEq, Eq, Serialize)]
pub struct MetricsRecord {
    /// Key-vs-key comparisons.
    pub comparisons: u64,
    pub links: u64,
    /// Every CUT, including the ones performed by cascading.
    pub cuts: u64,
    /// CUTs performed by CASCADING-CUT.
    pub cascading_cuts: u64,
    pub consolidate_calls: u64,
    pub consolidate_cycles: u64,
    pub max_degree_seen: u32,
}

impl MetricsRecord {
    /// Returns the current counters and zeroes them.
    pub fn snapshot_and_reset(&mut self) -> MetricsRecord {
        std::mem::take(self)
    }

    /// Folds `other` into `self`: sums counters, keeps the larger degree.
    pub fn absorb(&mut self, other: &MetricsRecord) {
        self.comparisons += other.comparisons;
        self.links += other.links;
        self.cuts += other.cuts;
        self.cascading_cuts += other.cascading_cuts;
        self.consolidate_calls += other.consolidate_calls;
        self.consolidate_cycles += other.consolidate_cycles;
        self.max_degree_seen = self.max_degree_seen.max(other.max_degree_seen);
    }
}

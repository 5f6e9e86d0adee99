use std::fmt;

use serde::Serialize;

/// Key paired with its insertion ordinal.
///
/// Ordering is lexicographic on `(key, seq)`, so equal keys are ordered by
/// insertion and the order is strict.
#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize)]
pub struct TotalKey {
    pub key: i64,
    pub seq: u64,
}

impl TotalKey {
    pub fn new(key: i64, seq: u64) -> Self {
        Self { key, seq }
    }
}

impl fmt::Display for TotalKey {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}#{}", self.key, self.seq)
    }
}

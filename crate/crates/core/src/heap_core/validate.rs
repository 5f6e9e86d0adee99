use std::fmt;

use super::arena::NodeId;
use super::HeapState;

const PHI: f64 = 1.618_033_988_749_895;

/// `floor(log_phi(n)) + 1`, the admitted maximum degree for `n` nodes
/// (one above the classic bound to allow for darkened nodes).
pub fn max_degree_bound(n: usize) -> u32 {
    if n <= 1 {
        return 1;
    }
    ((n as f64).ln() / PHI.ln()).floor() as u32 + 1
}

/// `ceil(log_phi(n)) + 2`, the largest consolidation slot index allowed.
pub fn slot_bound(n: usize) -> usize {
    if n <= 1 {
        return 2;
    }
    ((n as f64).ln() / PHI.ln()).ceil() as usize + 2
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub enum ViolationKind {
    /// `x.right.left != x` or a list never returns to its anchor.
    BrokenList,
    ParentMismatch,
    RootHasParent,
    MarkedRoot,
    HeapOrder,
    DegreeMismatch {
        stored: u32,
        actual: u32,
    },
    CountMismatch {
        reachable: usize,
        n: usize,
        live: usize,
    },
    AnchorMismatch,
    MinNotRoot,
    MinNotMinimal,
    /// Child at 1-based `position` has fewer than `position - 2` children.
    ChildDegree {
        position: usize,
        degree: u32,
    },
    MaxDegree {
        degree: u32,
        bound: u32,
    },
    /// A circular local minimum of one root-list cycle vanished in the next.
    LocalMinimumLost,
    DegreeGrowth {
        increase: u32,
        roots: usize,
    },
}

/// A failed check plus the keys on the path from a root to the offending node.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Violation {
    pub kind: ViolationKind,
    pub path: Vec<i64>,
}

impl fmt::Display for Violation {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{:?} at path {:?}", self.kind, self.path)
    }
}

/// Outcome of a validator: the first violation found, if any.
#[derive(Debug, Clone, Default, PartialEq, Eq)]
pub struct ValidationReport {
    pub violation: Option<Violation>,
    /// Largest degree seen during the scan.
    pub max_degree: u32,
}

impl ValidationReport {
    pub fn pass() -> Self {
        Self::default()
    }

    pub fn fail(kind: ViolationKind, path: Vec<i64>) -> Self {
        Self {
            violation: Some(Violation { kind, path }),
            max_degree: 0,
        }
    }

    pub fn passed(&self) -> bool {
        self.violation.is_none()
    }
}

impl fmt::Display for ValidationReport {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match &self.violation {
            None => write!(f, "pass (max degree {})", self.max_degree),
            Some(v) => write!(f, "fail: {v}"),
        }
    }
}

impl HeapState {
    fn path_to(&self, mut x: NodeId) -> Vec<i64> {
        let mut path = vec![self.nodes[x].key.key];
        while let Some(p) = self.nodes[x].parent {
            path.push(self.nodes[p].key.key);
            x = p;
        }
        path.reverse();
        path
    }

    /// Walks one circular list, checking link symmetry. `None` if broken.
    fn checked_list(&self, anchor: Option<NodeId>) -> Option<Vec<NodeId>> {
        let Some(a) = anchor else {
            return Some(Vec::new());
        };
        let limit = self.nodes.live();
        let mut out = Vec::new();
        let mut x = a;
        loop {
            let r = self.nodes[x].right;
            if self.nodes[r].left != x {
                return None;
            }
            out.push(x);
            if out.len() > limit {
                return None;
            }
            x = r;
            if x == a {
                return Some(out);
            }
        }
    }

    /// Full scan of the forest. With `degree_lemma` set, also checks that the
    /// i-th child (earliest-linked first, 1-based) of every node has degree at
    /// least i - 2, and that no degree exceeds [`max_degree_bound`].
    pub fn validate_structure(&self, degree_lemma: bool) -> ValidationReport {
        let fail = |kind, x: Option<NodeId>| {
            ValidationReport::fail(kind, x.map(|x| self.path_to(x)).unwrap_or_default())
        };

        let Some(roots) = self.checked_list(self.root) else {
            return fail(ViolationKind::BrokenList, self.root);
        };
        if roots.is_empty() != (self.n == 0) || self.min.is_none() != (self.n == 0) {
            return fail(
                ViolationKind::CountMismatch {
                    reachable: roots.len(),
                    n: self.n,
                    live: self.nodes.live(),
                },
                None,
            );
        }
        if let Some(m) = self.min {
            if !roots.contains(&m) {
                return fail(ViolationKind::MinNotRoot, Some(m));
            }
        }

        let mut max_degree = 0;
        let mut reachable = 0;
        let mut stack = Vec::new();
        for &r in &roots {
            let rec = &self.nodes[r];
            if rec.parent.is_some() {
                return fail(ViolationKind::RootHasParent, Some(r));
            }
            if rec.mark {
                return fail(ViolationKind::MarkedRoot, Some(r));
            }
            if let Some(m) = self.min {
                if self.precedes(r, m) {
                    return fail(ViolationKind::MinNotMinimal, Some(r));
                }
            }
            stack.push(r);
        }

        while let Some(x) = stack.pop() {
            reachable += 1;
            if reachable > self.nodes.live() {
                return fail(ViolationKind::BrokenList, Some(x));
            }
            let Some(children) = self.checked_list(self.nodes[x].child) else {
                return fail(ViolationKind::BrokenList, Some(x));
            };
            let degree = self.nodes[x].degree;
            if degree as usize != children.len() {
                return fail(
                    ViolationKind::DegreeMismatch {
                        stored: degree,
                        actual: children.len() as u32,
                    },
                    Some(x),
                );
            }
            max_degree = max_degree.max(degree);
            for (i, &c) in children.iter().enumerate() {
                if self.nodes[c].parent != Some(x) {
                    return fail(ViolationKind::ParentMismatch, Some(c));
                }
                if !self.precedes(x, c) {
                    return fail(ViolationKind::HeapOrder, Some(c));
                }
                let position = i + 1;
                let child_degree = self.nodes[c].degree;
                if degree_lemma && (child_degree as i64) < position as i64 - 2 {
                    return fail(
                        ViolationKind::ChildDegree {
                            position,
                            degree: child_degree,
                        },
                        Some(c),
                    );
                }
                stack.push(c);
            }
        }

        if reachable != self.n || self.n != self.nodes.live() {
            return fail(
                ViolationKind::CountMismatch {
                    reachable,
                    n: self.n,
                    live: self.nodes.live(),
                },
                None,
            );
        }
        if degree_lemma {
            let bound = max_degree_bound(self.n);
            if max_degree > bound {
                return fail(
                    ViolationKind::MaxDegree {
                        degree: max_degree,
                        bound,
                    },
                    None,
                );
            }
        }
        ValidationReport {
            violation: None,
            max_degree,
        }
    }
}

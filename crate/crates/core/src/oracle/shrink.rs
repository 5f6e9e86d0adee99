use thiserror::Error;

use super::{OpTrace, TraceOp};

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum ShrinkError {
    #[error("predicate does not fail on the input trace")]
    NotFailing,
}

/// Delta debugging over top-level operations: returns a subsequence of
/// `trace` on which `fails` still holds and from which no single operation
/// can be removed.
///
/// Dropping an insert renumbers later ordinals, so candidates may be invalid
/// traces; `fails` should treat those as not failing.
pub fn shrink_trace<F>(trace: &OpTrace, mut fails: F) -> Result<OpTrace, ShrinkError>
where
    F: FnMut(&OpTrace) -> bool,
{
    if !fails(trace) {
        return Err(ShrinkError::NotFailing);
    }
    let mut ops = trace.ops.clone();
    let mut test = |ops: &[TraceOp]| fails(&OpTrace::new(ops.to_vec()));

    let mut granularity = 2;
    while ops.len() >= 2 {
        let chunk = ops.len().div_ceil(granularity);
        let chunks: Vec<(usize, usize)> = (0..ops.len())
            .step_by(chunk)
            .map(|s| (s, (s + chunk).min(ops.len())))
            .collect();

        let mut reduced = false;
        for &(s, e) in &chunks {
            if test(&ops[s..e]) {
                ops = ops[s..e].to_vec();
                granularity = 2;
                reduced = true;
                break;
            }
        }
        if !reduced {
            for &(s, e) in &chunks {
                let complement: Vec<TraceOp> = ops[..s].iter().chain(&ops[e..]).cloned().collect();
                if test(&complement) {
                    ops = complement;
                    granularity = (granularity - 1).max(2);
                    reduced = true;
                    break;
                }
            }
        }
        if !reduced {
            if granularity >= ops.len() {
                break;
            }
            granularity = (granularity * 2).min(ops.len());
        }
    }

    // one-minimality sweep
    let mut i = 0;
    while i < ops.len() && ops.len() > 1 {
        let mut candidate = ops.clone();
        candidate.remove(i);
        if test(&candidate) {
            ops = candidate;
        } else {
            i += 1;
        }
    }
    Ok(OpTrace::new(ops))
}

#[cfg(test)]
mod tests {
    use super::*;

    fn inserts(keys: &[i64]) -> OpTrace {
        OpTrace::new(keys.iter().map(|&k| TraceOp::Insert(k)).collect())
    }

    #[test]
    fn singleton_stays() {
        let t = inserts(&[4]);
        assert_eq!(shrink_trace(&t, |_| true).unwrap(), t);
    }

    #[test]
    fn passing_trace_is_rejected() {
        let t = inserts(&[1, 2]);
        assert_eq!(shrink_trace(&t, |_| false), Err(ShrinkError::NotFailing));
    }

    #[test]
    fn finds_the_culprit() {
        let keys: Vec<i64> = (0..100).collect();
        let t = inserts(&keys);
        let has = |t: &OpTrace, k| t.ops.contains(&TraceOp::Insert(k));
        let out = shrink_trace(&t, |t| has(t, 37)).unwrap();
        assert_eq!(out, inserts(&[37]));
        let out = shrink_trace(&t, |t| has(t, 3) && has(t, 90)).unwrap();
        assert_eq!(out, inserts(&[3, 90]));
    }
}

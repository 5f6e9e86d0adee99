use super::{shrink_trace, OpTrace, OracleHeap, ReplayError, Replayer};
use crate::heap_core::TotalKey;
use crate::{AdaptiveFibHeap, AddressableHeap, HeapKind, PairingLikeHeap};

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct DiffOptions {
    /// Run the subject's validator after every operation.
    pub validate: bool,
    /// Minimize the failing prefix with [`shrink_trace`].
    pub shrink: bool,
}

impl Default for DiffOptions {
    fn default() -> Self {
        Self {
            validate: true,
            shrink: true,
        }
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub enum DivergenceDetail {
    Output {
        expected: Option<TotalKey>,
        actual: Option<TotalKey>,
    },
    FindMin {
        expected: Option<TotalKey>,
        actual: Option<TotalKey>,
    },
    Len {
        expected: usize,
        actual: usize,
    },
    /// The subject failed (error or validator) where the oracle did not.
    Subject(ReplayError),
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Divergence {
    /// Index of the top-level operation after which the outputs differed.
    pub op_index: usize,
    pub detail: DivergenceDetail,
    /// Failing prefix, minimized when shrinking is enabled.
    pub prefix: OpTrace,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct DiffReport {
    pub subject: HeapKind,
    pub ops: usize,
    pub divergence: Option<Divergence>,
}

impl DiffReport {
    pub fn passed(&self) -> bool {
        self.divergence.is_none()
    }
}

/// Replays `trace` on `subject` and the oracle in lockstep with validators on
/// and shrinking enabled. `Err` means the trace itself is invalid (the oracle
/// rejected it).
pub fn differential_run(trace: &OpTrace, subject: HeapKind) -> Result<DiffReport, ReplayError> {
    let opts = DiffOptions::default();
    match subject {
        HeapKind::Fib => differential_run_with::<AdaptiveFibHeap>(trace, opts),
        HeapKind::Pairing => differential_run_with::<PairingLikeHeap>(trace, opts),
        HeapKind::Oracle => differential_run_with::<OracleHeap>(trace, opts),
    }
}

pub fn differential_run_with<H: AddressableHeap>(
    trace: &OpTrace,
    opts: DiffOptions,
) -> Result<DiffReport, ReplayError> {
    let divergence = match first_divergence::<H>(trace, opts.validate)? {
        None => None,
        Some((op_index, detail)) => {
            let prefix = OpTrace::new(trace.ops[..=op_index].to_vec());
            let prefix = if opts.shrink {
                shrink_trace(&prefix, |t| {
                    matches!(first_divergence::<H>(t, opts.validate), Ok(Some(_)))
                })
                .unwrap_or(prefix)
            } else {
                prefix
            };
            Some(Divergence {
                op_index,
                detail,
                prefix,
            })
        }
    };
    Ok(DiffReport {
        subject: H::KIND,
        ops: trace.len(),
        divergence,
    })
}

fn first_divergence<H: AddressableHeap>(
    trace: &OpTrace,
    validate: bool,
) -> Result<Option<(usize, DivergenceDetail)>, ReplayError> {
    let mut oracle = Replayer::<OracleHeap>::new(false);
    let mut subject = Replayer::<H>::new(validate);
    for (i, op) in trace.ops.iter().enumerate() {
        let seen = oracle.outputs().len();
        oracle.apply(op)?;
        if let Err(e) = subject.apply(op) {
            return Ok(Some((i, DivergenceDetail::Subject(e))));
        }
        let (want, got) = (oracle.outputs(), subject.outputs());
        if want.len() != got.len() {
            return Ok(Some((
                i,
                DivergenceDetail::Len {
                    expected: want.len(),
                    actual: got.len(),
                },
            )));
        }
        if let Some(j) = (seen..want.len()).find(|&j| want[j] != got[j]) {
            return Ok(Some((
                i,
                DivergenceDetail::Output {
                    expected: want[j],
                    actual: got[j],
                },
            )));
        }
        let expected = oracle.heap().find_min().map(|(_, k)| k);
        let actual = subject.heap().find_min().map(|(_, k)| k);
        if expected != actual {
            return Ok(Some((i, DivergenceDetail::FindMin { expected, actual })));
        }
        if oracle.heap().len() != subject.heap().len() {
            return Ok(Some((
                i,
                DivergenceDetail::Len {
                    expected: oracle.heap().len(),
                    actual: subject.heap().len(),
                },
            )));
        }
    }
    Ok(None)
}

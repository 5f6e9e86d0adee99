use std::collections::BTreeSet;
use std::fmt;
use std::path::PathBuf;
use std::str::FromStr;

use rand::seq::SliceRandom;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use super::RunError;
use crate::oracle::{OpTrace, TraceOp};
use crate::HeapKind;

/// Source of the inserted keys.
#[derive(Debug, Clone, PartialEq, Eq)]
pub enum Generator {
    /// Uniform permutation of `1..=n`.
    Random,
    Sorted,
    Reverse,
    /// Random permutation cut into this many ascending runs.
    Runs(usize),
    /// Sorted, then this many random transpositions.
    Swaps(usize),
    /// Ascending teeth of the given period.
    Sawtooth(usize),
    /// Operations read verbatim from a trace file.
    Trace(PathBuf),
}

impl fmt::Display for Generator {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Generator::Random => f.write_str("random"),
            Generator::Sorted => f.write_str("sorted"),
            Generator::Reverse => f.write_str("reverse"),
            Generator::Runs(r) => write!(f, "runs:{r}"),
            Generator::Swaps(s) => write!(f, "swaps:{s}"),
            Generator::Sawtooth(p) => write!(f, "sawtooth:{p}"),
            Generator::Trace(p) => write!(f, "trace:{}", p.display()),
        }
    }
}

impl FromStr for Generator {
    type Err = String;

    fn from_str(s: &str) -> Result<Self, String> {
        let (name, arg) = match s.split_once(':') {
            Some((n, a)) => (n, Some(a)),
            None => (s, None),
        };
        let count = |a: Option<&str>| -> Result<usize, String> {
            let a =
                a.ok_or_else(|| format!("generator `{name}` needs an argument, e.g. `{name}:8`"))?;
            match a.parse::<usize>() {
                Ok(v) if v > 0 => Ok(v),
                _ => Err(format!("bad argument `{a}` for generator `{name}`")),
            }
        };
        match (name, arg) {
            ("random", None) => Ok(Generator::Random),
            ("sorted", None) => Ok(Generator::Sorted),
            ("reverse", None) => Ok(Generator::Reverse),
            ("runs", a) => Ok(Generator::Runs(count(a)?)),
            ("swaps", a) => Ok(Generator::Swaps(count(a)?)),
            ("sawtooth", a) => Ok(Generator::Sawtooth(count(a)?)),
            ("trace", Some(path)) if !path.is_empty() => Ok(Generator::Trace(path.into())),
            _ => Err(format!("unknown generator `{s}`")),
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Mode {
    /// `n` inserts then `n` extract-mins.
    Sort,
    /// All inserts, then extract-mins each followed by up to two
    /// decrease-keys of random live nodes to keys no smaller than the last
    /// extracted one.
    DijkstraLike,
    /// Replay a trace file as is.
    Replay,
}

impl fmt::Display for Mode {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            Mode::Sort => "sort",
            Mode::DijkstraLike => "dijkstra",
            Mode::Replay => "replay",
        })
    }
}

impl FromStr for Mode {
    type Err = String;

    fn from_str(s: &str) -> Result<Self, String> {
        match s {
            "sort" => Ok(Mode::Sort),
            "dijkstra" | "dijkstra-like" => Ok(Mode::DijkstraLike),
            "replay" => Ok(Mode::Replay),
            other => Err(format!("unknown mode `{other}`")),
        }
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct WorkloadSpec {
    pub generator: Generator,
    pub n: usize,
    pub seed: u64,
    pub heap: HeapKind,
    pub mode: Mode,
}

impl WorkloadSpec {
    pub fn new(generator: Generator, n: usize, seed: u64, heap: HeapKind, mode: Mode) -> Self {
        Self {
            generator,
            n,
            seed,
            heap,
            mode,
        }
    }
}

fn keys(generator: &Generator, n: usize, rng: &mut ChaCha8Rng) -> Vec<i64> {
    let n_i = n as i64;
    match generator {
        Generator::Sorted => (1..=n_i).collect(),
        Generator::Reverse => (1..=n_i).rev().collect(),
        Generator::Random => {
            let mut v: Vec<i64> = (1..=n_i).collect();
            v.shuffle(rng);
            v
        }
        Generator::Runs(r) => {
            let mut v: Vec<i64> = (1..=n_i).collect();
            v.shuffle(rng);
            let r = (*r).clamp(1, n.max(1));
            for i in 0..r {
                let (s, e) = (i * n / r, (i + 1) * n / r);
                v[s..e].sort_unstable();
            }
            v
        }
        Generator::Swaps(s) => {
            let mut v: Vec<i64> = (1..=n_i).collect();
            if n > 1 {
                for _ in 0..*s {
                    let (i, j) = (rng.random_range(0..n), rng.random_range(0..n));
                    v.swap(i, j);
                }
            }
            v
        }
        Generator::Sawtooth(p) => (0..n_i)
            .map(|i| (i % *p as i64) * n_i + i / *p as i64 + 1)
            .collect(),
        Generator::Trace(_) => unreachable!("trace generators have no key sequence"),
    }
}

/// Deterministic trace for `spec`.
pub fn generate(spec: &WorkloadSpec) -> Result<OpTrace, RunError> {
    if let Generator::Trace(path) = &spec.generator {
        let text = std::fs::read_to_string(path)?;
        return text.parse().map_err(RunError::Parse);
    }
    let mut rng = ChaCha8Rng::seed_from_u64(spec.seed);
    let xs = keys(&spec.generator, spec.n, &mut rng);
    match spec.mode {
        Mode::Sort => Ok(OpTrace::sort(&xs)),
        Mode::DijkstraLike => Ok(dijkstra_like(&xs, &mut rng)),
        Mode::Replay => Err(RunError::Usage(
            "replay mode needs a trace:FILE generator".into(),
        )),
    }
}

fn dijkstra_like(xs: &[i64], rng: &mut ChaCha8Rng) -> OpTrace {
    let mut ops: Vec<TraceOp> = xs.iter().map(|&k| TraceOp::Insert(k)).collect();
    let mut current: Vec<i64> = xs.to_vec();
    let mut queue: BTreeSet<(i64, u64)> = xs.iter().copied().zip(0..).collect();
    let mut live: Vec<u64> = (0..xs.len() as u64).collect();
    let mut slot: Vec<usize> = (0..xs.len()).collect();

    while let Some((floor, ord)) = queue.pop_first() {
        ops.push(TraceOp::ExtractMin);
        let i = slot[ord as usize];
        live.swap_remove(i);
        if i < live.len() {
            slot[live[i] as usize] = i;
        }
        for _ in 0..2 {
            if live.is_empty() {
                break;
            }
            let target = live[rng.random_range(0..live.len())];
            let cur = current[target as usize];
            let key = rng.random_range(floor..=cur);
            queue.remove(&(cur, target));
            queue.insert((key, target));
            current[target as usize] = key;
            ops.push(TraceOp::DecreaseKey {
                ordinal: target,
                key,
            });
        }
    }
    OpTrace::new(ops)
}

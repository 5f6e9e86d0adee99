use std::fmt;
use std::fs::File;
use std::io::BufWriter;
use std::path::{Path, PathBuf};
use std::str::FromStr;

use rayon::prelude::*;
use serde::Serialize;

use super::{generate, replay_metrics, Generator, Mode, RunError, WorkloadSpec};
use crate::presort::local_min_depth;
use crate::HeapKind;

/// Open questions the probes gather data for. Nothing is asserted about the
/// measured values.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum ProbeId {
    /// Comparisons of the adaptive Fibonacci heap on random sort workloads.
    FibAmortized,
    /// Largest degree of the pairing-like heap under decrease-key workloads.
    PairingDegree,
    /// Pairing-like heap sort cost against the local-minima depth `k`.
    Nk,
}

impl fmt::Display for ProbeId {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            ProbeId::FibAmortized => "fib-amortized",
            ProbeId::PairingDegree => "pairing-degree",
            ProbeId::Nk => "nk",
        })
    }
}

impl FromStr for ProbeId {
    type Err = String;

    fn from_str(s: &str) -> Result<Self, String> {
        match s {
            "fib-amortized" => Ok(ProbeId::FibAmortized),
            "pairing-degree" => Ok(ProbeId::PairingDegree),
            "nk" | "nk-characterization" => Ok(ProbeId::Nk),
            other => Err(format!(
                "unknown probe `{other}` (expected fib-amortized, pairing-degree or nk)"
            )),
        }
    }
}

/// Parses `2^8..2^16` (every power of two in range), `2^10`, or a comma list
/// such as `100,1000`.
pub fn parse_sizes(s: &str) -> Result<Vec<usize>, String> {
    let one = |t: &str| -> Result<usize, String> {
        let t = t.trim();
        let v = match t.strip_prefix("2^") {
            Some(e) => {
                let e: u32 = e.parse().map_err(|_| format!("bad exponent in `{t}`"))?;
                if e >= usize::BITS {
                    return Err(format!("`{t}` is too large"));
                }
                1usize << e
            }
            None => t.parse().map_err(|_| format!("bad size `{t}`"))?,
        };
        if v == 0 {
            return Err("sizes must be positive".into());
        }
        Ok(v)
    };
    if let Some((lo, hi)) = s.split_once("..") {
        let (lo, hi) = (one(lo)?, one(hi)?);
        if !lo.is_power_of_two() || !hi.is_power_of_two() || lo > hi {
            return Err(format!("range `{s}` must be 2^a..2^b with a <= b"));
        }
        let mut out = Vec::new();
        let mut v = lo;
        while v <= hi {
            out.push(v);
            v <<= 1;
        }
        return Ok(out);
    }
    s.split(',').map(one).collect()
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct ProbeRow {
    pub probe: String,
    pub heap: HeapKind,
    pub generator: String,
    pub mode: String,
    pub n: usize,
    pub trial: u64,
    pub seed: u64,
    pub lg_n: f64,
    pub k: usize,
    /// Which counter `cost` holds.
    pub cost_metric: &'static str,
    pub cost: u64,
    pub cost_per_n_lg_n: Option<f64>,
    pub cost_per_n_k: Option<f64>,
    pub cost_per_lg_n: Option<f64>,
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct ProbeGroup {
    pub heap: HeapKind,
    pub generator: String,
    pub mode: String,
    pub n: usize,
    pub trials: usize,
    pub mean_k: f64,
    pub mean_cost: f64,
    pub max_cost: u64,
    pub mean_cost_per_n_lg_n: Option<f64>,
    pub mean_cost_per_n_k: Option<f64>,
    pub mean_cost_per_lg_n: Option<f64>,
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct ProbeSummary {
    pub probe: String,
    pub schema_version: u32,
    pub cost_metric: &'static str,
    pub groups: Vec<ProbeGroup>,
}

#[derive(Debug, Clone)]
pub struct ProbeOutput {
    pub csv_path: PathBuf,
    pub json_path: PathBuf,
    pub rows: Vec<ProbeRow>,
    pub summary: ProbeSummary,
}

fn plan(id: ProbeId) -> (HeapKind, Vec<(Generator, Mode)>, &'static str) {
    match id {
        ProbeId::FibAmortized => (
            HeapKind::Fib,
            vec![(Generator::Random, Mode::Sort)],
            "comparisons",
        ),
        ProbeId::PairingDegree => (
            HeapKind::Pairing,
            vec![
                (Generator::Random, Mode::DijkstraLike),
                (Generator::Random, Mode::Sort),
            ],
            "max_degree",
        ),
        ProbeId::Nk => (
            HeapKind::Pairing,
            vec![
                (Generator::Sorted, Mode::Sort),
                (Generator::Reverse, Mode::Sort),
                (Generator::Runs(4), Mode::Sort),
                (Generator::Sawtooth(16), Mode::Sort),
                (Generator::Random, Mode::Sort),
            ],
            "comparisons",
        ),
    }
}

fn ratio(num: f64, den: f64) -> Option<f64> {
    (den > 0.0).then(|| num / den)
}

fn mean(xs: impl Iterator<Item = f64>) -> f64 {
    let (sum, count) = xs.fold((0.0, 0usize), |(s, c), x| (s + x, c + 1));
    if count == 0 {
        0.0
    } else {
        sum / count as f64
    }
}

fn mean_opt(xs: &[Option<f64>]) -> Option<f64> {
    if xs.iter().any(Option::is_none) {
        return None;
    }
    Some(mean(xs.iter().flatten().copied()))
}

fn summarize(id: ProbeId, cost_metric: &'static str, rows: &[ProbeRow]) -> ProbeSummary {
    let mut groups: Vec<ProbeGroup> = Vec::new();
    let mut i = 0;
    while i < rows.len() {
        let r0 = &rows[i];
        let j = rows[i..]
            .iter()
            .position(|r| (r.n, &r.generator, &r.mode) != (r0.n, &r0.generator, &r0.mode))
            .map_or(rows.len(), |p| i + p);
        let g = &rows[i..j];
        groups.push(ProbeGroup {
            heap: r0.heap,
            generator: r0.generator.clone(),
            mode: r0.mode.clone(),
            n: r0.n,
            trials: g.len(),
            mean_k: mean(g.iter().map(|r| r.k as f64)),
            mean_cost: mean(g.iter().map(|r| r.cost as f64)),
            max_cost: g.iter().map(|r| r.cost).max().unwrap_or(0),
            mean_cost_per_n_lg_n: mean_opt(
                &g.iter().map(|r| r.cost_per_n_lg_n).collect::<Vec<_>>(),
            ),
            mean_cost_per_n_k: mean_opt(&g.iter().map(|r| r.cost_per_n_k).collect::<Vec<_>>()),
            mean_cost_per_lg_n: mean_opt(&g.iter().map(|r| r.cost_per_lg_n).collect::<Vec<_>>()),
        });
        i = j;
    }
    ProbeSummary {
        probe: id.to_string(),
        schema_version: super::METRICS_SCHEMA_VERSION,
        cost_metric,
        groups,
    }
}

/// Runs a probe over `sizes` and writes `<id>.csv` and `<id>.summary.json`
/// into `out_dir` (created if missing).
pub fn probe(
    id: ProbeId,
    sizes: &[usize],
    trials: u64,
    seed: u64,
    out_dir: &Path,
) -> Result<ProbeOutput, RunError> {
    let (heap, workloads, cost_metric) = plan(id);
    let mut jobs = Vec::new();
    for (generator, mode) in &workloads {
        for &n in sizes {
            for t in 0..trials {
                jobs.push(WorkloadSpec::new(
                    generator.clone(),
                    n,
                    seed.wrapping_add(t),
                    heap,
                    *mode,
                ));
            }
        }
    }
    let rows: Vec<ProbeRow> = jobs
        .par_iter()
        .map(|spec| -> Result<ProbeRow, RunError> {
            let trace = generate(spec)?;
            let (m, _) =
                replay_metrics(spec.heap, &trace, false).map_err(|error| RunError::Replay {
                    seed: spec.seed,
                    error,
                })?;
            let n = spec.n;
            let k = local_min_depth(&trace.inserted_keys()).k;
            let cost = match cost_metric {
                "max_degree" => u64::from(m.max_degree_seen),
                _ => m.comparisons,
            };
            let lg_n = (n as f64).log2();
            let c = cost as f64;
            Ok(ProbeRow {
                probe: id.to_string(),
                heap: spec.heap,
                generator: spec.generator.to_string(),
                mode: spec.mode.to_string(),
                n,
                trial: spec.seed.wrapping_sub(seed),
                seed: spec.seed,
                lg_n,
                k,
                cost_metric,
                cost,
                cost_per_n_lg_n: ratio(c, n as f64 * lg_n),
                cost_per_n_k: ratio(c, (n * k) as f64),
                cost_per_lg_n: ratio(c, lg_n),
            })
        })
        .collect::<Result<_, _>>()?;

    let summary = summarize(id, cost_metric, &rows);
    std::fs::create_dir_all(out_dir)?;
    let csv_path = out_dir.join(format!("{id}.csv"));
    let json_path = out_dir.join(format!("{id}.summary.json"));
    let mut w = csv::Writer::from_path(&csv_path)?;
    for r in &rows {
        w.serialize(r)?;
    }
    w.flush()?;
    serde_json::to_writer_pretty(BufWriter::new(File::create(&json_path)?), &summary)?;
    Ok(ProbeOutput {
        csv_path,
        json_path,
        rows,
        summary,
    })
}

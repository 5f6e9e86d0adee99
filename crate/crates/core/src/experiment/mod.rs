//! Workload generation, metric collection and conjecture probes behind the
//! `heaps` command line.

mod probe;
mod run;
mod workload;

pub use probe::{parse_sizes, probe, ProbeGroup, ProbeId, ProbeOutput, ProbeRow, ProbeSummary};
pub use run::{replay_metrics, run, write_csv, MetricsRow, RunError, METRICS_SCHEMA_VERSION};
pub use workload::{generate, Generator, Mode, WorkloadSpec};

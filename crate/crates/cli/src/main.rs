use std::fs::File;
use std::io;
use std::path::PathBuf;
use std::process::ExitCode;

use adaptive_heaps::experiment::{
    parse_sizes, probe, run, write_csv, Generator, Mode, ProbeId, RunError, WorkloadSpec,
};
use adaptive_heaps::oracle::{differential_run, DiffReport, OpTrace};
use adaptive_heaps::HeapKind;
use clap::{Parser, Subcommand, ValueEnum};

const EXIT_FAILURE: u8 = 1;
const EXIT_USAGE: u8 = 2;

#[derive(Parser)]
#[command(
    name = "heaps",
    version,
    about = "Adaptive Fibonacci and pairing-like heap experiments"
)]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Replay seeded workloads and write one metrics row per trial.
    Run {
        #[arg(long)]
        heap: HeapKind,
        /// random, sorted, reverse, runs:R, swaps:S, sawtooth:P or trace:FILE
        #[arg(long = "gen")]
        generator: Generator,
        #[arg(long, default_value_t = 1024)]
        n: usize,
        #[arg(long, default_value_t = 0)]
        seed: u64,
        #[arg(long, default_value_t = 1)]
        trials: u64,
        /// sort, dijkstra or replay
        #[arg(long, default_value = "sort")]
        mode: Mode,
        /// Run the structure validator after every operation.
        #[arg(long)]
        validate: bool,
        /// Write CSV here instead of stdout.
        #[arg(long)]
        csv: Option<PathBuf>,
    },
    /// Sweep a conjecture probe over sizes; writes <id>.csv and <id>.summary.json.
    Probe {
        /// fib-amortized, pairing-degree or nk
        #[arg(long)]
        id: ProbeId,
        /// e.g. 2^8..2^16, 2^10 or 256,1024
        // qualified path: clap treats a bare `Vec` as a repeated argument
        #[arg(long, value_parser = parse_sizes)]
        sizes: std::vec::Vec<usize>,
        #[arg(long)]
        out: PathBuf,
        #[arg(long, default_value_t = 8)]
        trials: u64,
        #[arg(long, default_value_t = 1)]
        seed: u64,
    },
    /// Replay a trace file against the oracle and report the first divergence.
    Diff {
        #[arg(long)]
        trace: PathBuf,
        #[arg(long)]
        subject: Subject,
    },
}

#[derive(Clone, Copy, ValueEnum)]
enum Subject {
    Fib,
    Pairing,
}

impl From<Subject> for HeapKind {
    fn from(s: Subject) -> Self {
        match s {
            Subject::Fib => HeapKind::Fib,
            Subject::Pairing => HeapKind::Pairing,
        }
    }
}

fn exit_for(e: &RunError) -> u8 {
    match e {
        RunError::Replay { .. } => EXIT_FAILURE,
        _ => EXIT_USAGE,
    }
}

#[allow(clippy::too_many_arguments)]
fn cmd_run(
    heap: HeapKind,
    generator: Generator,
    n: usize,
    seed: u64,
    trials: u64,
    mode: Mode,
    validate: bool,
    csv: Option<PathBuf>,
) -> Result<(), RunError> {
    let spec = WorkloadSpec::new(generator, n, seed, heap, mode);
    let rows = run(&spec, trials, validate)?;
    match csv {
        Some(path) => write_csv(&rows, File::create(path)?),
        None => write_csv(&rows, io::stdout().lock()),
    }
}

fn cmd_probe(
    id: ProbeId,
    sizes: &[usize],
    out: PathBuf,
    trials: u64,
    seed: u64,
) -> Result<(), RunError> {
    let result = probe(id, sizes, trials, seed, &out)?;
    println!(
        "{:<8} {:<20} {:>8} {:>7} {:>14} {:>12}",
        "heap", "workload", "n", "mean k", "mean cost", "max cost"
    );
    for g in &result.summary.groups {
        println!(
            "{:<8} {:<20} {:>8} {:>7.2} {:>14.1} {:>12}",
            g.heap.to_string(),
            format!("{}/{}", g.generator, g.mode),
            g.n,
            g.mean_k,
            g.mean_cost,
            g.max_cost
        );
    }
    println!("cost metric: {}", result.summary.cost_metric);
    println!("wrote {}", result.csv_path.display());
    println!("wrote {}", result.json_path.display());
    Ok(())
}

fn print_diff(report: &DiffReport) {
    match &report.divergence {
        None => println!(
            "pass: {} ops, {} agrees with the oracle",
            report.ops, report.subject
        ),
        Some(d) => {
            println!(
                "divergence: {} after top-level op {}: {:?}",
                report.subject, d.op_index, d.detail
            );
            println!("minimal failing prefix:");
            print!("{}", d.prefix);
        }
    }
}

fn cmd_diff(trace: PathBuf, subject: Subject) -> ExitCode {
    let text = match std::fs::read_to_string(&trace) {
        Ok(t) => t,
        Err(e) => {
            eprintln!("heaps: {}: {e}", trace.display());
            return ExitCode::from(EXIT_USAGE);
        }
    };
    let parsed: OpTrace = match text.parse() {
        Ok(t) => t,
        Err(e) => {
            eprintln!("heaps: {}: {e}", trace.display());
            return ExitCode::from(EXIT_USAGE);
        }
    };
    match differential_run(&parsed, subject.into()) {
        Ok(report) => {
            print_diff(&report);
            if report.passed() {
                ExitCode::SUCCESS
            } else {
                ExitCode::from(EXIT_FAILURE)
            }
        }
        Err(e) => {
            eprintln!("heaps: invalid trace: {e}");
            ExitCode::from(EXIT_USAGE)
        }
    }
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    let result = match cli.command {
        Command::Run {
            heap,
            generator,
            n,
            seed,
            trials,
            mode,
            validate,
            csv,
        } => cmd_run(heap, generator, n, seed, trials, mode, validate, csv),
        Command::Probe {
            id,
            sizes,
            out,
            trials,
            seed,
        } => cmd_probe(id, &sizes, out, trials, seed),
        Command::Diff { trace, subject } => return cmd_diff(trace, subject),
    };
    match result {
        Ok(()) => ExitCode::SUCCESS,
        Err(e) => {
            eprintln!("heaps: {e}");
            ExitCode::from(exit_for(&e))
        }
    }
}

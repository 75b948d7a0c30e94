//! `robustnet`: build, grow, verify and report on failure-robust networks.
//!
//! Summaries go to stdout as `key=value` pairs. Exit codes: 0 success,
//! 1 verification failed, 2 usage or input error, 3 enumeration budget
//! exceeded.

mod commands;

use std::path::PathBuf;
use std::process::ExitCode;

use clap::{ArgGroup, Args, Parser, Subcommand, ValueEnum};
use robustnet_core::{Factor, StaticMethod, DEFAULT_BUDGET};

#[derive(Parser, Debug)]
#[command(
    name = "robustnet",
    version,
    about = "Node-failure-robust network construction and verification"
)]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand, Debug)]
enum Command {
    /// Build a static network.
    Static(StaticArgs),
    /// Grow a network online, never removing links.
    Grow(GrowArgs),
    /// Check a graph file for robustness.
    Verify(VerifyArgs),
    /// Tabulate a growth trace.
    Report(ReportArgs),
    /// Convert graphs, traces and fixtures to canonical JSON or DOT.
    Export(ExportArgs),
}

#[derive(Args, Debug, Clone)]
struct VerifierArgs {
    /// Maximum number of removal sets to enumerate.
    #[arg(long, env = "ROBUSTNET_BUDGET", default_value_t = DEFAULT_BUDGET)]
    budget: u64,
    /// Worker threads for enumeration.
    #[arg(long, default_value_t = 1)]
    jobs: usize,
}

#[derive(Args, Debug)]
struct StaticArgs {
    #[arg(long)]
    n: usize,
    #[arg(long)]
    nf: Option<usize>,
    #[arg(long, default_value = "circulant")]
    method: StaticMethod,
    /// Fraction f for halves-f, as an integer, decimal or p/q.
    #[arg(long)]
    f: Option<Factor>,
    #[arg(long)]
    m: Option<usize>,
    /// Graph JSON output path.
    #[arg(long)]
    out: Option<PathBuf>,
    /// DOT output path.
    #[arg(long)]
    dot: Option<PathBuf>,
}

#[derive(Copy, Clone, Debug, PartialEq, Eq, ValueEnum)]
enum PolicyName {
    FixedNf,
    #[value(name = "fraction-2f")]
    Fraction2f,
    #[value(name = "fraction-2mf")]
    Fraction2mf,
    Half,
    HalfPlusN,
    VariableNf,
}

#[derive(Copy, Clone, Debug, PartialEq, Eq, ValueEnum)]
enum Insert {
    Latest,
    Random,
}

#[derive(Args, Debug)]
struct GrowArgs {
    #[arg(long)]
    policy: PolicyName,
    #[arg(long)]
    nf: Option<usize>,
    /// Per-step fraction schedule, comma separated; the last value repeats.
    /// Defaults to 1 for fraction-2mf.
    #[arg(long, value_delimiter = ',')]
    f: Vec<Factor>,
    #[arg(long)]
    m: Option<usize>,
    /// Extra robustness n for half-plus-n.
    #[arg(long)]
    plus: Option<usize>,
    /// Per-step N_f demand for variable-nf, comma separated.
    #[arg(long, value_delimiter = ',')]
    nf_schedule: Vec<usize>,
    /// Seed size; defaults to the policy minimum.
    #[arg(long)]
    from: Option<usize>,
    #[arg(long)]
    to: usize,
    #[arg(long, value_enum, default_value = "latest")]
    insert: Insert,
    /// RNG seed for random insertion.
    #[arg(long, default_value_t = 0)]
    seed: u64,
    /// JSONL trace output path.
    #[arg(long)]
    trace: Option<PathBuf>,
    /// Final graph JSON output path.
    #[arg(long)]
    out: Option<PathBuf>,
    #[arg(long)]
    dot: Option<PathBuf>,
    /// Check robustness after every step.
    #[arg(long)]
    verify_each: bool,
    #[command(flatten)]
    verifier: VerifierArgs,
}

#[derive(Copy, Clone, Debug, PartialEq, Eq, ValueEnum)]
enum VerifyMethod {
    /// Enumerate every removal set (exit 3 when over budget).
    BruteForce,
    /// Vertex connectivity via max-flow.
    Kappa,
    /// Degree shortcut, then enumeration within budget, then max-flow.
    Auto,
}

#[derive(Args, Debug)]
struct VerifyArgs {
    /// Graph JSON file.
    graph: PathBuf,
    #[arg(long)]
    nf: usize,
    #[arg(long, value_enum, default_value = "brute-force")]
    method: VerifyMethod,
    /// Also require 4L <= N^2 + 4N - 8.
    #[arg(long)]
    check_lg: bool,
    #[command(flatten)]
    verifier: VerifierArgs,
}

#[derive(Args, Debug)]
struct ReportArgs {
    /// JSONL trace file.
    trace: PathBuf,
    /// CSV output path.
    #[arg(long)]
    csv: Option<PathBuf>,
}

#[derive(Copy, Clone, Debug, PartialEq, Eq, ValueEnum)]
enum Coloring {
    None,
    Halves,
}

#[derive(Args, Debug)]
#[command(group(ArgGroup::new("input").required(true).args(["graph", "trace", "fixture"])))]
struct ExportArgs {
    /// Graph JSON input.
    #[arg(long)]
    graph: Option<PathBuf>,
    /// JSONL trace input; its final graph is exported.
    #[arg(long)]
    trace: Option<PathBuf>,
    /// Reference fixture size (8, 10 or 12).
    #[arg(long)]
    fixture: Option<usize>,
    #[arg(long)]
    out: Option<PathBuf>,
    #[arg(long)]
    dot: Option<PathBuf>,
    #[arg(long, value_enum, default_value = "none")]
    color: Coloring,
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    let result = match cli.command {
        Command::Static(a) => commands::run_static(a),
        Command::Grow(a) => commands::run_grow(a),
        Command::Verify(a) => commands::run_verify(a),
        Command::Report(a) => commands::run_report(a),
        Command::Export(a) => commands::run_export(a),
    };
    match result {
        Ok(code) => code,
        Err(e) => {
            eprintln!("error: {e:#}");
            commands::exit_code_for(&e)
        }
    }
}

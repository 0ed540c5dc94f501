//! Command-line front end: estimator runs, the two scaling experiments and
//! the small-instance verification suites. Tables go to stdout as CSV.

mod bench;
mod estimate;
mod source;
mod verify;

use std::io::Write;
use std::path::PathBuf;

use clap::{Args, Parser, Subcommand, ValueEnum};

use crate::graph::Graph;
use crate::par::Execution;

pub use source::{GenSpec, Source};

#[derive(Debug, Parser)]
#[command(
    name = "sublinear-match",
    version,
    about = "Sublinear matching-size estimation"
)]
pub struct Cli {
    /// Worker threads; defaults to SUBLINEAR_MATCH_THREADS, then all cores.
    #[arg(long, global = true)]
    pub threads: Option<usize>,

    /// Run every trial on the calling thread.
    #[arg(long, global = true)]
    pub sequential: bool,

    /// Append an `elapsed_ms` column. Output is then no longer reproducible.
    #[arg(long, global = true)]
    pub timing: bool,

    #[command(subcommand)]
    pub command: Command,
}

#[derive(Debug, Subcommand)]
pub enum Command {
    /// Estimate matching and vertex-cover sizes of one graph.
    Estimate(EstimateArgs),
    /// Average edge-oracle calls per vertex query across average degrees.
    BenchQueries(BenchQueriesArgs),
    /// Parallel round count versus longest oracle query path.
    BenchRounds(BenchRoundsArgs),
    /// Exhaustive and randomized consistency checks on small instances.
    Verify(VerifyArgs),
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum Model {
    List,
    Matrix,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum Mode {
    Mult,
    Additive,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum SuiteArg {
    Oracle,
    Rounds,
    Vizing,
    Lazy,
    All,
}

#[derive(Debug, Args)]
pub struct GraphInput {
    /// Edge-list file: a header `n m`, then one `u v` pair per line.
    #[arg(long, conflicts_with = "gen")]
    pub graph: Option<PathBuf>,

    /// Generator: pm:N, path:N, cycle:N, star:N, gnp:N:P or kab:A:B.
    #[arg(long)]
    pub gen: Option<GenSpec>,
}

impl GraphInput {
    fn source(&self) -> Option<Source> {
        match (&self.graph, &self.gen) {
            (Some(path), _) => Some(Source::File(path.clone())),
            (None, Some(spec)) => Some(Source::Gen(spec.clone())),
            (None, None) => None,
        }
    }
}

#[derive(Debug, Args)]
pub struct EstimateArgs {
    #[command(flatten)]
    pub input: GraphInput,

    #[arg(long, value_enum)]
    pub model: Model,

    #[arg(long, value_enum)]
    pub mode: Mode,

    #[arg(long)]
    pub eps: f64,

    #[arg(long, default_value_t = 1)]
    pub seed: u64,

    /// Race this many independent instances; the first to finish reports.
    #[arg(long, default_value_t = 1, value_parser = clap::value_parser!(u64).range(1..))]
    pub race: u64,

    /// Queries each racing instance may spend per turn.
    #[arg(long, default_value_t = 10_000, value_parser = clap::value_parser!(u64).range(1..))]
    pub quantum: u64,

    /// Fixed sample count instead of the one the guarantee needs.
    #[arg(long)]
    pub samples: Option<u64>,
}

#[derive(Debug, Args)]
pub struct BenchQueriesArgs {
    /// Benchmark this graph instead of generating G(n, p) per average degree.
    #[command(flatten)]
    pub input: GraphInput,

    #[arg(long, default_value_t = 10_000)]
    pub n: usize,

    /// Target average degrees, comma separated.
    #[arg(long, value_delimiter = ',', default_value = "2,8,32")]
    pub dbar: Vec<f64>,

    #[arg(long, default_value_t = 1000)]
    pub trials: u64,

    #[arg(long, default_value_t = 1)]
    pub seed: u64,

    /// One row per trial instead of one summary row per graph.
    #[arg(long)]
    pub per_trial: bool,
}

#[derive(Debug, Args)]
pub struct BenchRoundsArgs {
    #[command(flatten)]
    pub input: GraphInput,

    #[arg(long, default_value_t = 1000)]
    pub n: usize,

    #[arg(long, value_delimiter = ',', default_value = "8")]
    pub dbar: Vec<f64>,

    #[arg(long, default_value_t = 100)]
    pub trials: u64,

    #[arg(long, default_value_t = 1)]
    pub seed: u64,

    /// Skip the per-vertex oracle sessions that measure query paths.
    #[arg(long)]
    pub no_paths: bool,
}

#[derive(Debug, Args)]
pub struct VerifyArgs {
    #[arg(long, value_enum, default_value_t = SuiteArg::All)]
    pub suite: SuiteArg,

    /// Wall-clock budget in seconds for the whole suite.
    #[arg(long)]
    pub budget: Option<f64>,
}

/// Why a command stopped early, mapped to the process exit status.
#[derive(Debug, Clone, PartialEq, Eq)]
pub enum Failure {
    /// Unusable arguments; exit 2.
    Usage(String),
    /// A precondition or input error; exit 1.
    Run(String),
    /// Some verification check failed; exit 1.
    ChecksFailed,
    /// The verification budget ran out; exit 3.
    BudgetExceeded,
}

impl Failure {
    pub fn exit_code(&self) -> u8 {
        match self {
            Failure::Usage(_) => 2,
            Failure::Run(_) | Failure::ChecksFailed => 1,
            Failure::BudgetExceeded => 3,
        }
    }
}

impl From<crate::Error> for Failure {
    fn from(e: crate::Error) -> Self {
        Failure::Run(e.to_string())
    }
}

impl From<csv::Error> for Failure {
    fn from(e: csv::Error) -> Self {
        Failure::Run(format!("writing output: {e}"))
    }
}

impl From<std::io::Error> for Failure {
    fn from(e: std::io::Error) -> Self {
        Failure::Run(format!("writing output: {e}"))
    }
}

/// Settings shared by every subcommand.
#[derive(Debug, Clone, Copy)]
pub struct Context {
    pub exec: Execution,
    pub timing: bool,
}

/// Runs a parsed command line, writing its table or report to `out`.
pub fn run(cli: &Cli, out: &mut dyn Write) -> Result<(), Failure> {
    let ctx = Context {
        exec: if cli.sequential {
            Execution::Sequential
        } else {
            Execution::Parallel
        },
        timing: cli.timing,
    };
    match &cli.command {
        Command::Estimate(args) => estimate::run(args, ctx, out),
        Command::BenchQueries(args) => bench::queries(args, ctx, out),
        Command::BenchRounds(args) => bench::rounds(args, ctx, out),
        Command::Verify(args) => verify::run(args, out),
    }
}

/// Columns describing the input graph, shared by every table.
const GRAPH_COLUMNS: [&str; 5] = ["graph", "n", "m", "avg_degree", "max_degree"];

fn graph_fields(name: &str, g: &Graph) -> Vec<String> {
    let stats = g.stats();
    vec![
        name.to_string(),
        g.vertex_count().to_string(),
        g.edge_count().to_string(),
        stats.avg_degree_f64().to_string(),
        stats.max_degree.to_string(),
    ]
}

fn header(columns: &[&str], timing: bool) -> Vec<String> {
    let mut h: Vec<String> = columns.iter().map(|c| c.to_string()).collect();
    if timing {
        h.push("elapsed_ms".into());
    }
    h
}

//! Command-line driver.

mod commands;
mod experiment;

use std::ffi::OsString;
use std::path::PathBuf;

use clap::{Args, Parser, Subcommand};

pub use experiment::{
    curve_digest, graph_digest, load_graph, CurveCache, ExperimentConfig, LoadedGraph, WeightModel,
    DEFAULT_K, DEFAULT_SEED,
};

use crate::cascade::CascadeConfig;
use crate::error::Result;
use crate::maximize::Mode;
use crate::metrics::{DEFAULT_K_MAX, DEFAULT_K_MIN};

#[derive(Debug, Parser)]
#[command(
    name = "reselect",
    version,
    about = "Influence maximization with seed reselection"
)]
pub struct Cli {
    /// Master seed; every random stream is derived from it.
    #[arg(long, global = true, default_value_t = DEFAULT_SEED)]
    pub seed: u64,

    /// Monte Carlo runs per spread estimate.
    #[arg(long, global = true, default_value_t = CascadeConfig::DEFAULT_RUNS)]
    pub runs: u64,

    /// Worker thread cap. Results do not depend on it.
    #[arg(long, global = true)]
    pub threads: Option<usize>,

    #[arg(long, global = true, default_value = "out")]
    pub out_dir: PathBuf,

    /// Treat each input edge as undirected (adds the reverse edge).
    #[arg(long, global = true)]
    pub undirected: bool,

    #[command(subcommand)]
    pub command: Command,
}

#[derive(Debug, Subcommand)]
pub enum Command {
    /// Write a synthetic weighted edge list and its manifest.
    Gen(GenArgs),
    /// Assign WC or TR weights to a plain edge list.
    Weights(WeightsArgs),
    /// Greedy seed selection; writes the spread curve.
    Maximize(MaximizeArgs),
    /// Monte Carlo spread of a seed multiset.
    Spread(SpreadArgs),
    /// Exact spread of a seed multiset on a small graph.
    Exact(ExactArgs),
    /// Reselection gain, saturation, hub ratio and category.
    Report(ReportArgs),
    /// Reselection gain as a function of the fading factor.
    SweepAlpha(SweepArgs),
    /// Single-node spreads, highest first.
    RankNodes(RankArgs),
}

#[derive(Debug, Args)]
pub struct GenArgs {
    #[command(subcommand)]
    pub kind: GenKind,

    /// Output file (default `<out-dir>/<kind>.txt`).
    #[arg(long, global = true)]
    pub output: Option<PathBuf>,
}

#[derive(Debug, Subcommand)]
pub enum GenKind {
    Star {
        #[arg(long)]
        leaves: usize,
        #[arg(long)]
        p: f64,
    },
    Clique {
        #[arg(long)]
        n: usize,
        #[arg(long)]
        p: f64,
    },
    Random {
        #[arg(long)]
        n: usize,
        #[arg(long)]
        edge_prob: f64,
        #[arg(long)]
        p: f64,
    },
}

#[derive(Debug, Args, Clone)]
pub struct GraphArgs {
    #[arg(long)]
    pub input: Option<PathBuf>,

    /// auto, wc, tr or explicit.
    #[arg(long, default_value = "auto")]
    pub weights: WeightModel,

    /// Fix the node count and keep file ids verbatim.
    #[arg(long)]
    pub nodes: Option<usize>,
}

#[derive(Debug, Args)]
pub struct WeightsArgs {
    #[arg(long)]
    pub input: PathBuf,

    /// wc or tr.
    #[arg(long)]
    pub model: WeightModel,

    #[arg(long)]
    pub nodes: Option<usize>,
}

#[derive(Debug, Args)]
pub struct MaximizeArgs {
    #[command(flatten)]
    pub graph: GraphArgs,

    #[arg(long, default_value = "multiset")]
    pub mode: Mode,

    #[arg(long, default_value_t = DEFAULT_K)]
    pub k: usize,

    #[arg(long, default_value_t = 1.0)]
    pub alpha: f64,

    /// Re-run a saved manifest; overrides the other experiment flags.
    #[arg(long)]
    pub config: Option<PathBuf>,
}

#[derive(Debug, Args)]
pub struct SpreadArgs {
    #[command(flatten)]
    pub graph: GraphArgs,

    /// Seed multiset, e.g. `0:2,5,7:3`.
    #[arg(long)]
    pub seeds: String,

    #[arg(long, default_value_t = 1.0)]
    pub alpha: f64,

    /// Also write every run's activation count to `<out-dir>/runs.csv`.
    #[arg(long)]
    pub dump_runs: bool,
}

#[derive(Debug, Args)]
pub struct ExactArgs {
    #[command(flatten)]
    pub graph: GraphArgs,

    #[arg(long, default_value = "")]
    pub seeds: String,

    #[arg(long, default_value_t = 1.0)]
    pub alpha: f64,
}

#[derive(Debug, Args)]
pub struct ReportArgs {
    #[command(flatten)]
    pub graph: GraphArgs,

    #[arg(long, default_value_t = DEFAULT_K)]
    pub k: usize,

    #[arg(long, default_value_t = 1.0)]
    pub alpha: f64,

    /// Network name recorded in the report (default: input file stem).
    #[arg(long)]
    pub name: Option<String>,

    #[arg(long)]
    pub rg: bool,

    #[arg(long = "is")]
    pub saturation: bool,

    #[arg(long)]
    pub hr: bool,

    #[arg(long)]
    pub sweep_alpha: bool,

    #[arg(long, default_value_t = DEFAULT_K_MIN)]
    pub k_min: usize,

    #[arg(long, default_value_t = DEFAULT_K_MAX)]
    pub k_max: usize,

    /// Largest hub-ratio distance reported.
    #[arg(long, default_value_t = 50)]
    pub hr_max: usize,

    #[arg(long)]
    pub config: Option<PathBuf>,
}

#[derive(Debug, Args)]
pub struct SweepArgs {
    #[command(flatten)]
    pub graph: GraphArgs,

    #[arg(long, default_value_t = DEFAULT_K)]
    pub k: usize,

    /// Comma-separated fading values (default 0.0, 0.1, ..., 1.0).
    #[arg(long, value_delimiter = ',')]
    pub alphas: Option<Vec<f64>>,
}

#[derive(Debug, Args)]
pub struct RankArgs {
    #[command(flatten)]
    pub graph: GraphArgs,

    /// Explicit node pool, comma-separated.
    #[arg(long, value_delimiter = ',')]
    pub pool: Option<Vec<usize>>,
}

/// Parses `args` and runs the command; returns the process exit code.
pub fn main_with_args<I, T>(args: I) -> i32
where
    I: IntoIterator<Item = T>,
    T: Into<OsString> + Clone,
{
    let cli = match Cli::try_parse_from(args) {
        Ok(cli) => cli,
        Err(e) => {
            let _ = e.print();
            return e.exit_code();
        }
    };
    match run(cli) {
        Ok(()) => 0,
        Err(e) => {
            eprintln!("error: {e}");
            e.exit_code()
        }
    }
}

pub fn run(cli: Cli) -> Result<()> {
    let mut pool = rayon::ThreadPoolBuilder::new();
    if let Some(t) = cli.threads {
        pool = pool.num_threads(t.max(1));
    }
    let pool = pool
        .build()
        .map_err(|e| crate::Error::invalid(format!("thread pool: {e}")))?;
    pool.install(|| commands::dispatch(&cli))
}

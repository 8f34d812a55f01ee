use std::path::PathBuf;

use clap::{Parser, ValueEnum};
use coupon_core::{FitnessKind, ProcessKind, TruncationMode};
use serde::{Deserialize, Serialize};

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum CommandKind {
    /// E[T], n·H_{n/2} and the deviation for one n
    Exact,
    /// Deviation computed directly and as a difference, with diagnostics
    Deviation,
    /// Monte Carlo batch compared with the exact expectation
    Simulate,
    /// Convergence of the deviation towards 1/2 over a list of n
    Sweep,
    /// Monte Carlo comparison for every n in a list
    Compare,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Default, ValueEnum, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum OutputFormat {
    #[default]
    Csv,
    Json,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum ProcessArg {
    Coupon,
    Rls,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum FitnessArg {
    Onemax,
    Binval,
    RandomPositiveLinear,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum ModeArg {
    Full,
    Truncated,
}

impl From<ProcessArg> for ProcessKind {
    fn from(p: ProcessArg) -> Self {
        match p {
            ProcessArg::Coupon => ProcessKind::Coupon,
            ProcessArg::Rls => ProcessKind::Rls,
        }
    }
}

impl From<FitnessArg> for FitnessKind {
    fn from(f: FitnessArg) -> Self {
        match f {
            FitnessArg::Onemax => FitnessKind::OneMax,
            FitnessArg::Binval => FitnessKind::BinVal,
            FitnessArg::RandomPositiveLinear => FitnessKind::RandomPositiveLinear,
        }
    }
}

impl From<ModeArg> for TruncationMode {
    fn from(m: ModeArg) -> Self {
        match m {
            ModeArg::Full => TruncationMode::Full,
            ModeArg::Truncated => TruncationMode::Truncated,
        }
    }
}

/// Exact, bounded and simulated runtimes of the coupon collector with a
/// random initial stake (equivalently RLS on monotone functions).
#[derive(Debug, Clone, Parser)]
#[command(name = "coupon-stake", version)]
pub struct Cli {
    #[arg(value_enum)]
    pub command: CommandKind,

    /// Number of coupon types / bit-string length
    #[arg(long)]
    pub n: Option<usize>,

    /// Comma-separated list of n (sweep, compare; also accepted by exact)
    #[arg(long, value_delimiter = ',')]
    pub n_list: Vec<usize>,

    /// Trials per batch
    #[arg(long, default_value_t = 10_000)]
    pub trials: u64,

    /// Master seed; trial i uses stream i under this seed
    #[arg(long, default_value_t = 0)]
    pub seed: u64,

    #[arg(long, value_enum, default_value_t = ProcessArg::Coupon)]
    pub process: ProcessArg,

    /// Fitness used by the rls process
    #[arg(long, value_enum, default_value_t = FitnessArg::Onemax)]
    pub fitness: FitnessArg,

    /// Truncation constant c in A = sqrt(c n ln n); must exceed 3/2
    #[arg(long, default_value_t = 2.0)]
    pub c: f64,

    #[arg(long, value_enum, default_value_t = ModeArg::Full)]
    pub mode: ModeArg,

    #[arg(long, value_enum, default_value_t = OutputFormat::Csv)]
    pub format: OutputFormat,

    /// Write to this file instead of standard output
    #[arg(long)]
    pub out: Option<PathBuf>,

    /// Per-a rows for the deviation command
    #[arg(long)]
    pub verbose: bool,
}

/// Fully resolved settings of one invocation, echoed into JSON output.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(rename_all = "kebab-case")]
pub struct RunConfig {
    pub command: CommandKind,
    pub n: Option<usize>,
    pub n_list: Vec<usize>,
    pub trials: u64,
    pub seed: u64,
    pub process: ProcessKind,
    pub fitness: FitnessKind,
    pub c: f64,
    pub mode: TruncationMode,
    pub format: OutputFormat,
    pub out: Option<PathBuf>,
    pub verbose: bool,
}

impl From<Cli> for RunConfig {
    fn from(cli: Cli) -> Self {
        Self {
            command: cli.command,
            n: cli.n,
            n_list: cli.n_list,
            trials: cli.trials,
            seed: cli.seed,
            process: cli.process.into(),
            fitness: cli.fitness.into(),
            c: cli.c,
            mode: cli.mode.into(),
            format: cli.format,
            out: cli.out,
            verbose: cli.verbose,
        }
    }
}

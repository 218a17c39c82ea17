use std::path::PathBuf;

use clap::{Args, Parser, Subcommand};

#[derive(Debug, Parser)]
#[command(
    name = "dfmoint",
    version,
    about = "Derivative-free mixed-integer multiobjective solver"
)]
pub struct Cli {
    #[command(subcommand)]
    pub command: Command,
}

#[derive(Debug, Subcommand)]
pub enum Command {
    /// Solve one suite instance or user problem.
    Solve(SolveArgs),
    /// Solve every suite instance selected by a filter.
    Bench(BenchArgs),
    /// Compare solver result trees: metric table and performance profiles.
    Metrics(MetricsArgs),
}

/// Options shared by `solve` and `bench`. Flags override the config file.
#[derive(Debug, Clone, Default, Args)]
pub struct SolverFlags {
    /// JSON run configuration; unknown keys are rejected.
    #[arg(long)]
    pub config: Option<PathBuf>,
    /// Penalty parameter ε.
    #[arg(long)]
    pub eps: Option<f64>,
    /// Evaluation budget.
    #[arg(long)]
    pub budget: Option<u64>,
    /// Comma-separated penalty parameters, solved in turn with warm starts.
    #[arg(long, value_delimiter = ',', num_args = 1..)]
    pub eps_schedule: Option<Vec<f64>>,
    /// Solver tag used in the results tree.
    #[arg(long)]
    pub tag: Option<String>,
    /// Root of the results tree.
    #[arg(long, env = "DFMOINT_RESULTS")]
    pub results: Option<PathBuf>,
}

#[derive(Debug, Clone, Args)]
pub struct SolveArgs {
    /// Suite instance id, e.g. UF3-n20-fam4.
    #[arg(long, conflicts_with = "problem")]
    pub instance: Option<String>,
    /// Subprocess problem descriptor (JSON).
    #[arg(long)]
    pub problem: Option<PathBuf>,
    /// Output directory; defaults to <results>/<tag>/<instance>.
    #[arg(long)]
    pub out: Option<PathBuf>,
    #[command(flatten)]
    pub solver: SolverFlags,
}

#[derive(Debug, Clone, Args)]
pub struct BenchArgs {
    /// Suite filter such as `q=2,bound`, `constrained`, `uf=3,n=10` or `all`.
    #[arg(long)]
    pub filter: Option<String>,
    /// Worker threads; defaults to the number of CPUs.
    #[arg(long)]
    pub jobs: Option<usize>,
    #[command(flatten)]
    pub solver: SolverFlags,
}

#[derive(Debug, Clone, Args)]
pub struct MetricsArgs {
    /// One results directory per solver, each holding `<instance>/front.csv`.
    /// The directory name is the solver name.
    #[arg(required = true)]
    pub roots: Vec<PathBuf>,
    /// Output directory.
    #[arg(long, default_value = "metrics")]
    pub out: PathBuf,
}

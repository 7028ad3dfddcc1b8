use std::path::PathBuf;

use clap::{Args, Parser, Subcommand, ValueEnum};

#[derive(Debug, Parser)]
#[command(
    name = "lazypath",
    version,
    about = "Adaptive long-path experiments on sparse random graphs"
)]
pub struct Cli {
    #[command(subcommand)]
    pub command: Command,
}

#[derive(Debug, Subcommand)]
pub enum Command {
    /// Depth-first long-path search against the lazy oracle.
    DfsRun(DfsRunArgs),
    /// Long-path coverage of full G(n, p) draws against the 13 ε² n ceiling.
    CoverageVerify(CoverageArgs),
    /// Multi-round amplification harness.
    ReductionSim(ReductionArgs),
    /// Galton-Watson or uniform labeled tree samples.
    GwSample(GwSampleArgs),
    /// Smallest path constant C on a grid passing the ε³ criterion.
    CalibrateC(CalibrateArgs),
    /// Union bound for disjoint paths in a random map.
    MapBound(MapBoundArgs),
    /// Probability that a random tree has b disjoint paths of length a.
    TreePaths(TreePathsArgs),
    /// DFS query counts against the ℓ/(pε) law.
    ScalingStudy(ScalingArgs),
}

#[derive(Debug, Clone, Args)]
pub struct OutputArgs {
    /// CSV destination; stdout when absent.
    #[arg(long)]
    pub out: Option<PathBuf>,
    /// Run manifest destination [default: next to --out].
    #[arg(long)]
    pub manifest: Option<PathBuf>,
    /// Exit with status 2 when the acceptance threshold is missed.
    #[arg(long)]
    pub check: bool,
}

#[derive(Debug, Clone, Args)]
pub struct ExperimentArgs {
    /// Flat JSON config; flags override its values.
    #[arg(long)]
    pub config: Option<PathBuf>,
    #[arg(long)]
    pub n: Option<usize>,
    #[arg(long, alias = "epsilon")]
    pub eps: Option<f64>,
    #[arg(long)]
    pub q: Option<f64>,
    #[arg(long = "C")]
    pub c: Option<f64>,
    #[arg(long)]
    pub trials: Option<u64>,
    #[arg(long)]
    pub seed: Option<u64>,
    #[arg(long)]
    pub spanning_tree_cap: Option<usize>,
}

#[derive(Debug, Args)]
pub struct DfsRunArgs {
    #[arg(long)]
    pub n: usize,
    #[arg(long)]
    pub eps: f64,
    /// Target length [default: floor(ε² n / 5)].
    #[arg(long)]
    pub target: Option<usize>,
    #[arg(long, default_value_t = 1)]
    pub trials: u64,
    #[arg(long, default_value_t = 0)]
    pub seed: u64,
    #[arg(long)]
    pub budget: Option<u64>,
    #[command(flatten)]
    pub output: OutputArgs,
}

#[derive(Debug, Args)]
pub struct CoverageArgs {
    #[command(flatten)]
    pub experiment: ExperimentArgs,
    /// Measure this edge-list fixture instead of random draws.
    #[arg(long)]
    pub graph: Option<PathBuf>,
    #[command(flatten)]
    pub output: OutputArgs,
}

#[derive(Debug, Clone, Copy, ValueEnum)]
pub enum AlgorithmChoice {
    Dfs,
    Never,
}

#[derive(Debug, Args)]
pub struct ReductionArgs {
    #[command(flatten)]
    pub experiment: ExperimentArgs,
    /// Per-round query budget [default: the derived cap].
    #[arg(long)]
    pub budget: Option<u64>,
    #[arg(long, value_enum, default_value = "dfs")]
    pub alg: AlgorithmChoice,
    /// Write the first trial's full transcript as JSON.
    #[arg(long)]
    pub transcript: Option<PathBuf>,
    #[command(flatten)]
    pub output: OutputArgs,
}

#[derive(Debug, Args)]
pub struct GwSampleArgs {
    /// Offspring mean; exclusive with --eps.
    #[arg(long, conflicts_with = "eps")]
    pub mu: Option<f64>,
    /// Use the dual parameter of 1 + ε.
    #[arg(long)]
    pub eps: Option<f64>,
    /// Sample uniform rooted labeled trees of this size instead.
    #[arg(long, conflicts_with_all = ["mu", "eps"])]
    pub size: Option<usize>,
    #[arg(long, default_value_t = 1000)]
    pub trials: u64,
    #[arg(long, default_value_t = 0)]
    pub seed: u64,
    #[command(flatten)]
    pub output: OutputArgs,
}

#[derive(Debug, Clone, Copy, ValueEnum)]
pub enum MethodChoice {
    Exact,
    MonteCarlo,
}

#[derive(Debug, Args)]
pub struct CalibrateArgs {
    #[arg(long)]
    pub eps: f64,
    #[arg(long, value_delimiter = ',', default_value = "1,2,4,8,16")]
    pub grid: Vec<f64>,
    #[arg(long, value_enum, default_value = "exact")]
    pub method: MethodChoice,
    /// Trials per grid value for the Monte Carlo method.
    #[arg(long, default_value_t = 100_000)]
    pub trials: u64,
    #[arg(long, default_value_t = 0)]
    pub seed: u64,
    #[command(flatten)]
    pub output: OutputArgs,
}

#[derive(Debug, Args)]
pub struct MapBoundArgs {
    #[arg(long)]
    pub t: u64,
    #[arg(long)]
    pub a: u64,
    #[arg(long)]
    pub b: u64,
}

#[derive(Debug, Args)]
pub struct TreePathsArgs {
    #[arg(long)]
    pub t: usize,
    #[arg(long)]
    pub a: usize,
    #[arg(long)]
    pub b: usize,
    #[arg(long, default_value_t = 10_000)]
    pub trials: u64,
    #[arg(long, default_value_t = 0)]
    pub seed: u64,
}

#[derive(Debug, Args)]
pub struct ScalingArgs {
    #[arg(long)]
    pub n: usize,
    #[arg(long, value_delimiter = ',', default_value = "0.1,0.15,0.2")]
    pub eps_list: Vec<f64>,
    #[arg(long, default_value_t = 20)]
    pub trials: u64,
    #[arg(long, default_value_t = 0)]
    pub seed: u64,
    #[arg(long)]
    pub budget: Option<u64>,
    #[command(flatten)]
    pub output: OutputArgs,
}

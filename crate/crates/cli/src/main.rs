use std::path::PathBuf;
use std::process::ExitCode;

use clap::{Args, Parser, Subcommand, ValueEnum};
use temporal_encoder::{ErrorKind, LoadOptions};

mod commands;
mod params;
mod run;

/// Temporal encoder embedding, vertex dynamics and synthetic benchmarks for
/// time-series graphs.
#[derive(Debug, Parser)]
#[command(name = "tenc", version, about)]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Debug, Subcommand)]
enum Command {
    /// Embed every time step of a graph.
    Embed(EmbedArgs),
    /// Vertex, community and graph dynamics with thresholds, histogram and ranking.
    Dynamics(DynamicsArgs),
    /// Generate a synthetic time-series graph from a parameter file or preset.
    Simulate(SimulateArgs),
    /// Plant outlier vertices into an existing graph.
    InjectOutliers(InjectArgs),
    /// Unfolded spectral embedding baseline.
    Spectral(SpectralArgs),
    /// Time encoder and spectral embeddings over a grid of graph sizes.
    Benchmark(BenchmarkArgs),
    /// Rank vertices by encoder dynamic and spectral distance side by side.
    Compare(CompareArgs),
}

#[derive(Debug, Args)]
struct Common {
    /// Output directory, created if missing.
    #[arg(long)]
    out: PathBuf,
    /// Worker threads; defaults to the available parallelism.
    #[arg(long)]
    threads: Option<usize>,
}

#[derive(Debug, Args)]
struct GraphArgs {
    /// Edgelist files: one per time step, or a single file with a time column.
    #[arg(long, num_args = 1..)]
    edges: Vec<PathBuf>,
    /// Label files (`vertex,community`): one, or one per time step.
    #[arg(long, num_args = 1..)]
    labels: Vec<PathBuf>,
    /// Number of communities; inferred from the largest label when omitted.
    #[arg(long)]
    k: Option<usize>,
    /// Treat each edge as undirected (default).
    #[arg(long, overrides_with = "directed")]
    undirected: bool,
    /// Treat each edge as directed from source to target.
    #[arg(long, overrides_with = "undirected")]
    directed: bool,
    /// Accept negative weights; dynamics are then no longer confined to [0, 1].
    #[arg(long)]
    allow_negative: bool,
}

impl GraphArgs {
    fn load_options(&self) -> LoadOptions {
        LoadOptions { k: self.k, undirected: !self.directed, allow_negative: self.allow_negative }
    }
}

#[derive(Debug, Clone, Copy, ValueEnum)]
enum EmbeddingFormat {
    Csv,
    Binary,
    Both,
}

#[derive(Debug, Args)]
struct EmbedArgs {
    #[command(flatten)]
    graph: GraphArgs,
    #[command(flatten)]
    common: Common,
    /// Time step (1-based) whose label file is used when several are given.
    #[arg(long, default_value_t = 1)]
    ref_time: usize,
    #[arg(long, value_enum, default_value = "csv")]
    format: EmbeddingFormat,
    /// Repeat the embedding step this many times and report mean timing.
    #[arg(long, default_value_t = 1)]
    replicates: usize,
}

#[derive(Debug, Args)]
struct Thresholds {
    /// Dynamics strictly above this mark outliers.
    #[arg(long, default_value_t = 0.5)]
    threshold_outlier: f64,
    /// Dynamics strictly below this mark inliers.
    #[arg(long, default_value_t = 0.1)]
    threshold_inlier: f64,
}

#[derive(Debug, Args)]
struct DynamicsArgs {
    /// Embedding from `tenc embed`: its output directory, a CSV or a binary file.
    #[arg(long, conflicts_with = "edges")]
    embedding: Option<PathBuf>,
    #[command(flatten)]
    graph: GraphArgs,
    #[command(flatten)]
    common: Common,
    /// Reference time step (1-based).
    #[arg(long, default_value_t = 1)]
    ref_time: usize,
    #[command(flatten)]
    thresholds: Thresholds,
    /// Number of uniform histogram bins on [0, 1].
    #[arg(long, default_value_t = 20)]
    bins: usize,
    /// Time step for the histogram; defaults to the last.
    #[arg(long)]
    hist_time: Option<usize>,
    /// Time step for the ranking and outlier list; defaults to the last.
    #[arg(long)]
    rank_time: Option<usize>,
    /// Inclusive window `a:b` for per-vertex maximum dynamics.
    #[arg(long)]
    window: Option<String>,
}

#[derive(Debug, Args)]
#[group(id = "source", required = true, multiple = false)]
struct SimulationSource {
    /// TOML parameter file.
    #[arg(long, group = "source")]
    params: Option<PathBuf>,
    /// Built-in parameter set: stability, stability-small or outlier.
    #[arg(long, group = "source")]
    preset: Option<String>,
}

#[derive(Debug, Args)]
struct SimulateArgs {
    #[command(flatten)]
    source: SimulationSource,
    #[command(flatten)]
    common: Common,
    /// Override the seed in the parameter file.
    #[arg(long)]
    seed: Option<u64>,
}

#[derive(Debug, Clone, Copy, ValueEnum)]
enum InjectMode {
    Overwrite,
    Add,
}

#[derive(Debug, Args)]
struct InjectArgs {
    #[command(flatten)]
    graph: GraphArgs,
    #[command(flatten)]
    common: Common,
    #[arg(long, default_value_t = 10)]
    count: usize,
    /// Time step (1-based) receiving the outliers; defaults to the last.
    #[arg(long)]
    time: Option<usize>,
    #[arg(long, default_value_t = 1)]
    min_edges: usize,
    #[arg(long, default_value_t = 2)]
    max_edges: usize,
    #[arg(long, default_value_t = 500.0)]
    weight_min: f64,
    #[arg(long, default_value_t = 1000.0)]
    weight_max: f64,
    #[arg(long, value_enum, default_value = "overwrite")]
    mode: InjectMode,
    #[arg(long, default_value_t = 0)]
    seed: u64,
}

#[derive(Debug, Args)]
struct SpectralArgs {
    #[command(flatten)]
    graph: GraphArgs,
    #[command(flatten)]
    common: Common,
    /// Embedding dimension.
    #[arg(long, default_value_t = 10)]
    dim: usize,
    #[arg(long, default_value_t = 1)]
    ref_time: usize,
    /// Time step for the ranking; defaults to the last.
    #[arg(long)]
    rank_time: Option<usize>,
    /// Seed of the random start block.
    #[arg(long, default_value_t = 0)]
    seed: u64,
    /// Largest vertex count accepted.
    #[arg(long, default_value_t = 50_000)]
    max_vertices: usize,
    /// Iteration cap of the block Krylov solver.
    #[arg(long, default_value_t = 500)]
    max_block_steps: usize,
}

#[derive(Debug, Args)]
struct BenchmarkArgs {
    #[command(flatten)]
    common: Common,
    /// Vertex counts of the grid.
    #[arg(long, value_delimiter = ',', default_value = "5000,10000,20000,40000")]
    vertices: Vec<usize>,
    /// Time-step counts of the grid.
    #[arg(long, value_delimiter = ',', default_value = "3")]
    steps: Vec<usize>,
    #[arg(long, default_value_t = 10)]
    replicates: usize,
    /// Spectral dimension.
    #[arg(long, default_value_t = 3)]
    dim: usize,
    /// Time the encoder only.
    #[arg(long)]
    no_spectral: bool,
    /// Vertex count at which the reference block probabilities apply unscaled.
    #[arg(long, default_value_t = 5000)]
    base_n: usize,
    #[arg(long, default_value_t = 0)]
    seed: u64,
}

#[derive(Debug, Args)]
struct CompareArgs {
    #[command(flatten)]
    graph: GraphArgs,
    #[command(flatten)]
    common: Common,
    #[arg(long, default_value_t = 10)]
    dim: usize,
    #[arg(long, default_value_t = 1)]
    ref_time: usize,
    #[arg(long)]
    rank_time: Option<usize>,
    /// Planted outlier list (`outliers.csv` from simulate or inject-outliers).
    #[arg(long)]
    planted: Option<PathBuf>,
    /// Ranking cutoffs for recall.
    #[arg(long, value_delimiter = ',', default_value = "10,50")]
    cutoffs: Vec<usize>,
    #[arg(long, default_value_t = 0)]
    seed: u64,
}

fn exit_code(kind: ErrorKind) -> u8 {
    match kind {
        ErrorKind::Validation => 2,
        ErrorKind::Io => 3,
        ErrorKind::Numerical => 4,
    }
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    let threads = match &cli.command {
        Command::Embed(a) => a.common.threads,
        Command::Dynamics(a) => a.common.threads,
        Command::Simulate(a) => a.common.threads,
        Command::InjectOutliers(a) => a.common.threads,
        Command::Spectral(a) => a.common.threads,
        Command::Benchmark(a) => a.common.threads,
        Command::Compare(a) => a.common.threads,
    };
    if let Some(n) = threads {
        if n == 0 {
            eprintln!("error: --threads must be at least 1");
            return ExitCode::from(2);
        }
        rayon::ThreadPoolBuilder::new().num_threads(n).build_global().expect("thread pool configured once");
    }
    let result = match cli.command {
        Command::Embed(a) => commands::embed(a),
        Command::Dynamics(a) => commands::dynamics(a),
        Command::Simulate(a) => commands::simulate(a),
        Command::InjectOutliers(a) => commands::inject_outliers(a),
        Command::Spectral(a) => commands::spectral(a),
        Command::Benchmark(a) => commands::benchmark(a),
        Command::Compare(a) => commands::compare(a),
    };
    match result {
        Ok(()) => ExitCode::SUCCESS,
        Err(e) => {
            eprintln!("error: {e}");
            ExitCode::from(exit_code(e.kind()))
        }
    }
}

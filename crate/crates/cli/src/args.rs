use std::path::PathBuf;

use clap::{Args, Parser, Subcommand, ValueEnum};

#[derive(Debug, Parser)]
#[command(name = "baldom", version, about = "Balanced domination numbers, layer certificates and structure checks")]
pub struct Cli {
    #[command(subcommand)]
    pub command: Command,
}

#[derive(Debug, Subcommand)]
pub enum Command {
    /// Build a graph from a named family.
    Gen {
        #[command(flatten)]
        graph: GraphArgs,
        #[command(flatten)]
        output: OutputArgs,
    },
    /// Compute the exact balanced domination number.
    Solve {
        #[command(flatten)]
        graph: GraphArgs,
        #[command(flatten)]
        limits: LimitArgs,
        #[command(flatten)]
        output: OutputArgs,
    },
    /// Check the layer-sum certificate of a polytope graph.
    Certify {
        #[command(flatten)]
        graph: GraphArgs,
        #[command(flatten)]
        output: OutputArgs,
    },
    /// Enumerate and classify every non-zero BDF of an m x n grid.
    GridClassify {
        #[arg(long)]
        m: usize,
        #[arg(long)]
        n: usize,
        #[arg(long, default_value_t = 1, value_parser = clap::value_parser!(u64).range(1..))]
        workers: u64,
        #[command(flatten)]
        output: OutputArgs,
    },
    /// Compare a tree's balanced domination number with its structural prediction.
    TreeCheck {
        /// Leaf counts of the root's children, e.g. `2,0,0`.
        #[arg(long, value_delimiter = ',', group = "tree")]
        two_level: Option<Vec<usize>>,
        /// Full binary tree shape, e.g. `((..)(..))`.
        #[arg(long, group = "tree")]
        full_binary: Option<String>,
        /// Leaf counts along the spine, e.g. `2,1,1,2`.
        #[arg(long, value_delimiter = ',', group = "tree")]
        caterpillar: Option<Vec<usize>>,
        #[command(flatten)]
        limits: LimitArgs,
        #[command(flatten)]
        output: OutputArgs,
    },
    /// List every non-zero MBDF on caterpillars with spine length n.
    CaterpillarSearch {
        #[arg(long)]
        n: usize,
        #[arg(long, default_value_t = 1, value_parser = clap::value_parser!(u64).range(1..))]
        workers: u64,
        #[command(flatten)]
        output: OutputArgs,
    },
    /// Run every structural check over its default parameter range.
    Sweep {
        /// Suites to run; all of them when omitted.
        #[arg(long, value_enum, value_delimiter = ',')]
        suite: Vec<Suite>,
        /// Upper bound for each suite's main size parameter.
        #[arg(long)]
        max: Option<usize>,
        #[command(flatten)]
        limits: LimitArgs,
        #[command(flatten)]
        output: OutputArgs,
    },
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum FamilyName {
    Antiprism,
    PolytopeD,
    PolytopeR2,
    Grid,
    Caterpillar,
    TwoLevel,
    FullBinary,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, ValueEnum)]
pub enum Suite {
    Polytopes,
    Certificates,
    Grids,
    TwoLevel,
    FullBinary,
    Caterpillars,
    Antidiagonal,
}

#[derive(Debug, Args)]
pub struct GraphArgs {
    #[arg(long, value_enum)]
    pub family: Option<FamilyName>,
    #[arg(long)]
    pub n: Option<usize>,
    #[arg(long)]
    pub m: Option<usize>,
    /// Comma-separated leaf counts, or a shape for full-binary.
    #[arg(long)]
    pub spec: Option<String>,
    /// Graph JSON file; `-` reads standard input.
    #[arg(long, conflicts_with = "family")]
    pub input: Option<PathBuf>,
}

#[derive(Debug, Args)]
pub struct LimitArgs {
    /// Largest kernel dimension to enumerate.
    #[arg(long = "limits-max-free", default_value_t = 20, value_parser = clap::value_parser!(u64).range(1..))]
    pub max_free: u64,
    /// Node budget for the backtracking search.
    #[arg(long = "limits-node-budget", default_value_t = 50_000_000, value_parser = clap::value_parser!(u64).range(1..))]
    pub node_budget: u64,
    /// Fall back to backtracking when the kernel is too large.
    #[arg(long = "limits-fallback")]
    pub fallback: bool,
    #[arg(long, default_value_t = 1, value_parser = clap::value_parser!(u64).range(1..))]
    pub workers: u64,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum Format {
    Json,
    Dot,
    Text,
}

#[derive(Debug, Args)]
pub struct OutputArgs {
    #[arg(long, value_enum, default_value_t = Format::Json)]
    pub format: Format,
    /// Write the report here instead of standard output.
    #[arg(long)]
    pub out: Option<PathBuf>,
}

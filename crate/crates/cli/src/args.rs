use std::path::PathBuf;

use clap::{Args, Parser, Subcommand, ValueEnum};

#[derive(Parser, Debug)]
#[command(
    name = "numrad",
    version,
    about = "Numerical radius, parallelism and orthogonality of operators on finite-dimensional normed spaces"
)]
pub struct Cli {
    #[command(subcommand)]
    pub command: Command,
}

#[derive(Subcommand, Debug)]
pub enum Command {
    /// Compute the numerical radius v(T) with maximizing witnesses
    Radius {
        #[command(flatten)]
        common: Common,
        /// Operator as a JSON row-major matrix, or `I` / `0`
        #[arg(long)]
        matrix: Option<String>,
    },
    /// Decide a relation between two vectors or two operators
    Check {
        relation: Relation,
        #[command(flatten)]
        common: Common,
        #[command(flatten)]
        operands: Operands,
        /// Include the raw λ or α sweep in the report
        #[arg(long)]
        sweep: bool,
    },
    /// Run verification suites by id (`all` for every suite)
    Verify {
        id: String,
        /// Seed for random instances and the search engine
        #[arg(long)]
        seed: Option<u64>,
        /// Write a JSON report to this path
        #[arg(long)]
        report: Option<PathBuf>,
        /// JSON run configuration (only `engine.seed` and `report` are used)
        #[arg(long)]
        config: Option<PathBuf>,
    },
}

#[derive(ValueEnum, Clone, Copy, Debug, PartialEq, Eq)]
pub enum Relation {
    Parallel,
    Birkhoff,
    NrParallel,
    NrBirkhoff,
    Daugavet,
}

impl Relation {
    pub fn name(self) -> &'static str {
        match self {
            Relation::Parallel => "parallel",
            Relation::Birkhoff => "birkhoff",
            Relation::NrParallel => "nr-parallel",
            Relation::NrBirkhoff => "nr-birkhoff",
            Relation::Daugavet => "daugavet",
        }
    }

    pub fn takes_vectors(self) -> bool {
        matches!(self, Relation::Parallel | Relation::Birkhoff)
    }
}

#[derive(Args, Debug, Default, Clone)]
pub struct Common {
    /// Norm: lp:<p>, l1, l2, linf or mixed
    #[arg(long)]
    pub space: Option<String>,
    #[arg(long)]
    pub dim: Option<usize>,
    /// Scalar field: real or complex
    #[arg(long)]
    pub field: Option<String>,
    /// Angles in the planar search grid
    #[arg(long)]
    pub grid: Option<usize>,
    /// Random starts for the multistart search
    #[arg(long)]
    pub multistarts: Option<usize>,
    /// Zoom rounds around planar grid maxima
    #[arg(long)]
    pub refine: Option<usize>,
    #[arg(long)]
    pub seed: Option<u64>,
    #[arg(long)]
    pub tol: Option<f64>,
    /// Write a JSON report to this path
    #[arg(long)]
    pub report: Option<PathBuf>,
    /// JSON run configuration; flags take precedence over it
    #[arg(long)]
    pub config: Option<PathBuf>,
}

#[derive(Args, Debug, Default, Clone)]
pub struct Operands {
    /// First operator (JSON matrix, `I` or `0`)
    #[arg(long)]
    pub a: Option<String>,
    /// Second operator
    #[arg(long)]
    pub b: Option<String>,
    /// Operator for `daugavet` (same as --a)
    #[arg(long)]
    pub matrix: Option<String>,
    /// First vector (JSON array)
    #[arg(long)]
    pub x: Option<String>,
    /// Second vector
    #[arg(long)]
    pub y: Option<String>,
}

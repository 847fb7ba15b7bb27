//! Command-line surface.

use std::path::PathBuf;

use clap::{Args, Parser, Subcommand, ValueEnum};

/// Born-Infeld two-charge potentials: figure data, verification and
/// bound-state spreads.
#[derive(Debug, Parser)]
#[command(name = "bipot", version, about)]
pub struct Cli {
    #[command(flatten)]
    pub global: GlobalOpts,
    #[command(subcommand)]
    pub command: Command,
}

#[derive(Debug, Clone, Args)]
pub struct GlobalOpts {
    /// Worker threads (default: available parallelism).
    #[arg(long, global = true, value_name = "N")]
    pub threads: Option<usize>,
    /// Absolute quadrature tolerance (overrides BIPOT_TOLERANCE).
    #[arg(long, global = true, value_name = "TOL")]
    pub abs_tol: Option<f64>,
    /// Relative quadrature tolerance (overrides BIPOT_TOLERANCE).
    #[arg(long, global = true, value_name = "TOL")]
    pub rel_tol: Option<f64>,
}

#[derive(Debug, Subcommand)]
pub enum Command {
    /// phi(-inf) as a function of the separation r.
    Fig1(FigArgs),
    /// The four effective potentials def1, def2, coulomb and single.
    Fig2(FigArgs),
    /// Run the invariant suite and report the worst residual per check.
    Verify(VerifyArgs),
    /// Bound-state energies of two effective potentials and their difference.
    Spectrum(SpectrumArgs),
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum Format {
    Csv,
    Json,
}

#[derive(Debug, Clone, Args)]
pub struct OutputArgs {
    /// Output file (default: standard output).
    #[arg(short, long, value_name = "PATH")]
    pub output: Option<PathBuf>,
    #[arg(long, value_enum, default_value = "csv")]
    pub format: Format,
}

#[derive(Debug, Clone, Args)]
pub struct FigArgs {
    /// Born parameter.
    #[arg(long, default_value_t = 1.0)]
    pub beta: f64,
    /// Smallest separation (default depends on the figure).
    #[arg(long, value_name = "R")]
    pub r_min: Option<f64>,
    /// Largest separation (default depends on the figure).
    #[arg(long, value_name = "R")]
    pub r_max: Option<f64>,
    /// Number of grid points (at least 2).
    #[arg(long, value_name = "N")]
    pub points: Option<usize>,
    /// Log-spaced grid.
    #[arg(long, conflicts_with = "lin")]
    pub log: bool,
    /// Linearly spaced grid.
    #[arg(long)]
    pub lin: bool,
    #[command(flatten)]
    pub out: OutputArgs,
}

#[derive(Debug, Clone, Args)]
pub struct VerifyArgs {
    /// Machine-readable report.
    #[arg(long)]
    pub json: bool,
    /// Test hook: add MAG to every value of the def1 or def2 potential so
    /// the identities break. Exists only to show the verifier can fail.
    #[arg(long, hide = true, num_args = 2, value_names = ["KIND", "MAG"])]
    pub perturb: Option<Vec<String>>,
}

#[derive(Debug, Clone, Args)]
pub struct SpectrumArgs {
    /// Born parameters to sweep.
    #[arg(long, value_delimiter = ',', default_value = "0.2")]
    pub betas: Vec<f64>,
    /// Bound states per potential.
    #[arg(long, default_value_t = 2)]
    pub levels: usize,
    /// The two potential kinds to compare.
    #[arg(long, value_delimiter = ',', default_value = "def1,def2")]
    pub kinds: Vec<String>,
    /// Angular momentum.
    #[arg(long, default_value_t = 0)]
    pub l: u32,
    /// Points of the logarithmic shooting mesh (at least 1000).
    #[arg(long, default_value_t = bipot::RadialProblem::DEFAULT_MESH_POINTS)]
    pub mesh_points: usize,
    /// Nodes of each potential table.
    #[arg(long, default_value_t = 800)]
    pub table_nodes: usize,
    #[command(flatten)]
    pub out: OutputArgs,
}

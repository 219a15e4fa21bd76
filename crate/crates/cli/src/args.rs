use std::path::PathBuf;

use clap::{Args, Parser, Subcommand, ValueEnum};
use serde::Serialize;

#[derive(Debug, Parser)]
#[command(
    name = "falconer",
    version,
    about = "Congruence-class counts, lattice censuses and Fourier estimators",
    args_override_self = true,
    after_help = "Exit codes: 0 ok, 2 usage, 3 bad input, 4 I/O, 5 budget exceeded, 6 computation failed."
)]
pub struct Cli {
    /// Output directory for JSON/CSV files and manifest.json.
    #[arg(long, global = true, env = "FALCONER_OUT")]
    pub out: Option<PathBuf>,
    #[command(subcommand)]
    pub command: Command,
}

#[derive(Debug, Subcommand)]
pub enum Command {
    /// Count simplex classes in a lattice box or in a point-set file.
    Census(CensusArgs),
    /// Fit the growth exponent of the planar triangle census over several q.
    Growth(GrowthArgs),
    /// Lattice points on a circle (d=2) or sphere (d=3).
    Spheres(SpheresArgs),
    /// Triangle classes with one vertex on each of three lattice spheres.
    ThreeSpheres(ThreeSpheresArgs),
    /// Centers and radius of one level of the grid construction.
    Sharpness(SharpnessArgs),
    /// Spherical averages of |μ̂|² and their decay fit.
    Spectral(SpectralArgs),
    /// ∫ σ(t)² t^{d−1} dt over [tmin, tmax].
    Mattila(MattilaArgs),
    /// Haar-averaged ∫ ν_g^{k+1}.
    GroupEnergy(GroupEnergyArgs),
    /// Ball-mass scaling of a measure.
    Frostman(FrostmanArgs),
    /// Dimension thresholds for k-simplices in R^d.
    Thresholds(ThresholdsArgs),
    /// ε-thickened congruent-pair measure of a weighted point set.
    Thickened(ThickenedArgs),
    /// Parse and normalize a point-set file.
    Validate(ValidateArgs),
    /// Run the experiment described by a key = value config file.
    Run(RunArgs),
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum, Serialize)]
#[serde(rename_all = "lowercase")]
pub enum RelationArg {
    Congruence,
    Similarity,
}

impl From<RelationArg> for falconer_core::geometry::Relation {
    fn from(r: RelationArg) -> Self {
        match r {
            RelationArg::Congruence => Self::Congruence,
            RelationArg::Similarity => Self::Similarity,
        }
    }
}

#[derive(Debug, Clone, Args, Serialize)]
pub struct CensusArgs {
    #[arg(long, default_value_t = 2)]
    pub d: usize,
    #[arg(long, default_value_t = 2)]
    pub k: usize,
    /// Box side; points are Z^d ∩ [0,q]^d.
    #[arg(long, alias = "grid")]
    pub q: Option<u64>,
    /// Point-set CSV instead of a lattice box.
    #[arg(long, conflicts_with = "q")]
    pub input: Option<PathBuf>,
    #[arg(long, value_enum, default_value = "congruence")]
    pub relation: RelationArg,
    #[arg(long)]
    pub budget: Option<u128>,
    #[arg(long)]
    pub include_degenerate: bool,
    /// Subsets sampled when the exhaustive count is over budget.
    #[arg(long)]
    pub samples: Option<usize>,
    #[arg(long, default_value_t = 0)]
    pub seed: u64,
    /// Float-mode quantization of squared distances.
    #[arg(long)]
    pub quantum: Option<f64>,
}

#[derive(Debug, Clone, Args, Serialize)]
pub struct GrowthArgs {
    /// Box sides, comma separated.
    #[arg(long, value_delimiter = ',', default_values_t = [4u64, 8, 16, 32])]
    pub q: Vec<u64>,
    #[arg(long, default_value_t = 2)]
    pub d: usize,
    #[arg(long, default_value_t = 2)]
    pub k: usize,
    #[arg(long, value_enum, default_value = "congruence")]
    pub relation: RelationArg,
    #[arg(long)]
    pub budget: Option<u128>,
}

#[derive(Debug, Clone, Args, Serialize)]
pub struct SpheresArgs {
    #[arg(long, default_value_t = 2)]
    pub d: usize,
    /// Squared radius.
    #[arg(long)]
    pub n: u64,
    /// Also tabulate the counts for every squared radius up to n.
    #[arg(long)]
    pub upto: bool,
}

#[derive(Debug, Clone, Args, Serialize)]
pub struct ThreeSpheresArgs {
    /// Squared radii n1,n2,n3.
    #[arg(long, value_delimiter = ',', num_args = 1.., required = true)]
    pub radii: Vec<u64>,
    /// Allow a lattice point to serve as two vertices.
    #[arg(long)]
    pub allow_repeats: bool,
    /// Keep collinear triangles.
    #[arg(long)]
    pub allow_degenerate: bool,
}

#[derive(Debug, Clone, Args, Serialize)]
pub struct SharpnessArgs {
    #[arg(long, default_value_t = 2)]
    pub d: usize,
    #[arg(long)]
    pub s: f64,
    #[arg(long)]
    pub q: u64,
}

#[derive(Debug, Clone, Args, Serialize)]
pub struct MeasureArgs {
    /// delta | cantor:LEVEL | cantor-cells:LEVEL | grid:M | file:PATH
    #[arg(long, required_unless_present = "input")]
    pub measure: Option<String>,
    /// Point-set CSV, same as --measure file:PATH.
    #[arg(long, conflicts_with = "measure")]
    pub input: Option<PathBuf>,
    /// Ambient dimension of generated measures.
    #[arg(long, default_value_t = 2)]
    pub d: usize,
}

#[derive(Debug, Clone, Args, Serialize)]
pub struct SpectralArgs {
    #[command(flatten)]
    #[serde(flatten)]
    pub measure: MeasureArgs,
    #[arg(long, default_value_t = 4.0)]
    pub tmin: f64,
    #[arg(long, default_value_t = 128.0)]
    pub tmax: f64,
    /// Number of log-spaced t values.
    #[arg(long, default_value_t = 11)]
    pub points: usize,
    #[arg(long, default_value_t = 512)]
    pub nodes: usize,
    /// Dimension for the decay fit and the energy integral.
    #[arg(long)]
    pub s: Option<f64>,
}

#[derive(Debug, Clone, Args, Serialize)]
pub struct MattilaArgs {
    #[command(flatten)]
    #[serde(flatten)]
    pub measure: MeasureArgs,
    #[arg(long, default_value_t = 1.0)]
    pub tmin: f64,
    #[arg(long)]
    pub tmax: f64,
    #[arg(long, default_value_t = 256)]
    pub nodes: usize,
    /// Gauss–Legendre points per panel.
    #[arg(long, default_value_t = 16)]
    pub order: usize,
    /// Maximum number of σ(t) evaluations.
    #[arg(long, default_value_t = 1_000_000)]
    pub budget: usize,
}

#[derive(Debug, Clone, Args, Serialize)]
pub struct GroupEnergyArgs {
    #[command(flatten)]
    #[serde(flatten)]
    pub measure: MeasureArgs,
    #[arg(long, default_value_t = 1)]
    pub k: usize,
    #[arg(long, default_value_t = 64)]
    pub samples: usize,
    #[arg(long, default_value_t = 0)]
    pub seed: u64,
    /// Grid cells per unit length; the cell side is 1/grid-res.
    #[arg(long, default_value_t = 32)]
    pub grid_res: u32,
    #[arg(long, default_value_t = 1)]
    pub supersample: usize,
    /// Dilation range `A_LO A_HI` for the similarity variant.
    #[arg(long, value_delimiter = ',', num_args = 2)]
    pub scales: Option<Vec<f64>>,
    /// Largest padded FFT grid.
    #[arg(long, default_value_t = 1 << 24)]
    pub budget: usize,
}

#[derive(Debug, Clone, Args, Serialize)]
pub struct FrostmanArgs {
    #[command(flatten)]
    #[serde(flatten)]
    pub measure: MeasureArgs,
    /// Strictly decreasing radii, comma separated.
    #[arg(long, value_delimiter = ',', required = true)]
    pub radii: Vec<f64>,
}

#[derive(Debug, Clone, Args, Serialize)]
pub struct ThresholdsArgs {
    #[arg(long)]
    pub k: usize,
    #[arg(long)]
    pub d: usize,
}

#[derive(Debug, Clone, Args, Serialize)]
pub struct ThickenedArgs {
    #[arg(long)]
    pub input: PathBuf,
    #[arg(long, default_value_t = 1)]
    pub k: usize,
    #[arg(long)]
    pub epsilon: f64,
    /// Exact-sum budget on ordered tuple pairs.
    #[arg(long)]
    pub budget: Option<u128>,
    /// Monte-Carlo samples used when the exact sum is over budget.
    #[arg(long)]
    pub samples: Option<usize>,
    #[arg(long, default_value_t = 0)]
    pub seed: u64,
}

#[derive(Debug, Clone, Args, Serialize)]
pub struct ValidateArgs {
    #[arg(long)]
    pub input: PathBuf,
}

#[derive(Debug, Clone, Args, Serialize)]
pub struct RunArgs {
    pub config: PathBuf,
    /// Flags that override the config file.
    #[arg(trailing_var_arg = true, allow_hyphen_values = true)]
    pub overrides: Vec<String>,
}

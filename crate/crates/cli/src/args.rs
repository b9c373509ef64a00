use std::path::PathBuf;

use clap::{Args, Parser, Subcommand, ValueEnum};

const ABOUT: &str = "Casimir-Polder energetics of an anisotropic atom on the axis of a ring, annular disc or apertured plate";

const LONG_ABOUT: &str = "\
Casimir-Polder energetics of an anisotropic atom on the axis of a ring, annular disc or apertured plate.

Angles are given in degrees on the command line and converted to radians internally.
All outputs are in reduced units: heights in units of the inner radius a, energies and
forces in the body's energy scale, which is written once in the JSON `meta.energy_scale`.

CSV columns (fixed order): h_hat,theta_deg,b_hat,energy_reduced,force_reduced,e_iso,e_aniso,flags
Numbers carry 17 significant digits; inapplicable fields are empty.

Flags: quadrature, repulsive, torsion-free, paper-text-conflict, canary.

Exit codes: 0 success, 1 verification failure, 2 usage error, 3 numerical non-convergence.";

#[derive(Debug, Parser)]
#[command(name = "casimir", version, about = ABOUT, long_about = LONG_ABOUT)]
pub struct Cli {
    /// Flat `key=value` file read as if each entry were given as `--key value`.
    /// Flags given on the command line take precedence.
    #[arg(long, global = true, value_name = "FILE")]
    pub config: Option<PathBuf>,

    #[command(subcommand)]
    pub command: Command,
}

#[derive(Debug, Subcommand)]
pub enum Command {
    /// Reduced energy over a (θ, ĥ) grid.
    Energy(SweepArgs),
    /// Reduced axial force −∂Ê/∂ĥ over a (θ, ĥ) grid; positive is outward.
    Force(SweepArgs),
    /// Orientation-independent (torsion-free) heights.
    TorsionFree(TorsionFreeArgs),
    /// Height windows in which the axial force is repulsive.
    Repulsion(RepulsionArgs),
    /// Orientation bounds for short- and intermediate-range ring repulsion.
    CriticalAngles,
    /// Annulus outer radius at which the intermediate repulsion window closes.
    CriticalRadius(CriticalRadiusArgs),
    /// ΔE(ĥ) = E(θ=0) − E(θ=90°) = 2·e_aniso over a height grid.
    DeltaE(DeltaEArgs),
    /// Energies and works of the ring machine cycle A → B → C → D → A.
    Cycle,
    /// Regenerate the data behind the energy-curve and ΔE figures.
    Figure(FigureArgs),
    /// Run every acceptance check and print one line per check.
    Verify(VerifyArgs),
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum BodyKind {
    Ring,
    Annulus,
    Plate,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum OutputFormat {
    Csv,
    Json,
}

#[derive(Debug, Clone, Args)]
pub struct BodyArgs {
    #[arg(long, value_enum, default_value = "ring")]
    pub body: BodyKind,

    /// Body polarization: axial, radial, azimuthal, isotropic, or
    /// tensor:T,L for the fixed tensor T(x̂x̂+ŷŷ) + L ẑẑ.
    #[arg(long, default_value = "axial")]
    pub pol: String,

    /// Annulus outer radius b/a (> 1).
    #[arg(long = "b", value_name = "B_HAT")]
    pub b_hat: Option<f64>,
}

#[derive(Debug, Clone, Args)]
pub struct GridArgs {
    /// Explicit heights h/a, comma separated.
    #[arg(long = "h", value_delimiter = ',', allow_negative_numbers = true,
          conflicts_with_all = ["h_min", "h_max", "h_count"])]
    pub h: Vec<f64>,

    #[arg(long, allow_negative_numbers = true)]
    pub h_min: Option<f64>,

    #[arg(long, allow_negative_numbers = true)]
    pub h_max: Option<f64>,

    /// Number of evenly spaced heights (≥ 2), endpoints included.
    #[arg(long)]
    pub h_count: Option<usize>,
}

#[derive(Debug, Clone, Copy, Args)]
pub struct TolArgs {
    /// Relative tolerance of every quadrature.
    #[arg(long, default_value_t = 1e-9)]
    pub rel_tol: f64,

    /// Absolute tolerance of every quadrature.
    #[arg(long, default_value_t = 1e-12)]
    pub abs_tol: f64,
}

#[derive(Debug, Clone, Args)]
pub struct SweepArgs {
    #[command(flatten)]
    pub body: BodyArgs,

    /// Atom orientations in degrees from the symmetry axis, comma separated.
    #[arg(long, value_delimiter = ',', allow_negative_numbers = true, default_value = "0")]
    pub theta: Vec<f64>,

    #[command(flatten)]
    pub grid: GridArgs,

    #[arg(long, value_enum, default_value = "csv")]
    pub format: OutputFormat,

    #[command(flatten)]
    pub tol: TolArgs,
}

#[derive(Debug, Clone, Args)]
pub struct TorsionFreeArgs {
    #[command(flatten)]
    pub body: BodyArgs,

    /// Upper end of the height scan; defaults to 10, or more for radial
    /// bodies whose outer height grows with b.
    #[arg(long)]
    pub scan_max: Option<f64>,

    #[command(flatten)]
    pub tol: TolArgs,
}

#[derive(Debug, Clone, Args)]
pub struct RepulsionArgs {
    #[command(flatten)]
    pub body: BodyArgs,

    #[arg(long, value_delimiter = ',', allow_negative_numbers = true, default_value = "0,90")]
    pub theta: Vec<f64>,

    /// Step of the independent force-sign scan.
    #[arg(long, default_value_t = 1e-3)]
    pub step: f64,

    /// Upper end of the force-sign scan.
    #[arg(long, default_value_t = 5.0)]
    pub scan_max: f64,

    #[command(flatten)]
    pub tol: TolArgs,
}

#[derive(Debug, Clone, Args)]
pub struct CriticalRadiusArgs {
    #[arg(long, value_delimiter = ',', allow_negative_numbers = true, default_value = "0,6,9,12")]
    pub theta: Vec<f64>,
}

#[derive(Debug, Clone, Args)]
pub struct DeltaEArgs {
    #[command(flatten)]
    pub body: BodyArgs,

    #[command(flatten)]
    pub grid: GridArgs,

    #[arg(long, value_enum, default_value = "csv")]
    pub format: OutputFormat,

    #[command(flatten)]
    pub tol: TolArgs,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum FigureName {
    /// Ring energy curves at θ = 0°, 30°, 60°, 90°.
    Fig2,
    /// ΔE curve of one body (choose with --curve).
    Fig4,
    /// Every figure file, written to --out-dir.
    All,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum CurveName {
    RingAxial,
    PlateAxial,
    RingRadial,
    PlateRadial,
}

#[derive(Debug, Clone, Args)]
pub struct FigureArgs {
    #[arg(value_enum)]
    pub name: FigureName,

    #[arg(long, value_enum, default_value = "ring-axial")]
    pub curve: CurveName,

    /// Write CSV files into this directory instead of standard output.
    #[arg(long)]
    pub out_dir: Option<PathBuf>,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum VerifyFormat {
    Text,
    Json,
}

#[derive(Debug, Clone, Args)]
pub struct VerifyArgs {
    /// Multiply every numerical tolerance by this factor (0.1 tightens 10×).
    /// Acceptance thresholds are unchanged.
    #[arg(long, default_value_t = 1.0)]
    pub tol_scale: f64,

    /// Corrupt the retardation-integral reference constants; the kernel
    /// certification check must then fail.
    #[arg(long)]
    pub canary: bool,

    #[arg(long, value_enum, default_value = "text")]
    pub format: VerifyFormat,
}

use std::path::PathBuf;

use clap::{Args, Parser, Subcommand, ValueEnum};

/// Simulate naive and BB1-compensated Ising gates under systematic errors.
#[derive(Debug, Parser)]
#[command(name = "robust-ising", version)]
pub struct Cli {
    /// Flat `key = value` file with defaults for any flag below.
    #[arg(long, global = true, value_name = "FILE")]
    pub config: Option<PathBuf>,

    #[command(subcommand)]
    pub command: Command,
}

#[derive(Debug, Subcommand)]
pub enum Command {
    /// Fidelity against the ideal gate over a grid of error sizes, as CSV.
    Sweep(SweepArgs),
    /// Fit the infidelity expansions and check the robustness figures.
    Verify(VerifyArgs),
    /// Largest symmetric error range that keeps infidelity under a threshold.
    Range(RangeArgs),
    /// List the pulses and free-evolution periods of a sequence.
    Dump(DumpArgs),
}

#[derive(Debug, Args, Default)]
pub struct FamilyArgs {
    /// naive-single, bb1-single, naive-ising, bb1-ising, naive-cnot or bb1-cnot.
    #[arg(long)]
    pub family: Option<String>,

    /// Rotation angle: radians, `0.5pi`, `pi/2` or `90deg`.
    #[arg(long, allow_hyphen_values = true)]
    pub theta: Option<String>,

    /// Expand every single-spin pulse into its own BB1 sequence.
    #[arg(long)]
    pub robust_pulses: bool,
}

#[derive(Debug, Args)]
pub struct SweepArgs {
    #[command(flatten)]
    pub family: FamilyArgs,

    /// Error grid as `min:max:step`.
    #[arg(long, allow_hyphen_values = true, value_name = "MIN:MAX:STEP")]
    pub eps: Option<String>,

    /// Which error to vary: `j` (coupling) or `pulse`.
    #[arg(long)]
    pub axis: Option<String>,

    /// Write to a file instead of standard output.
    #[arg(short, long)]
    pub output: Option<PathBuf>,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum Claim {
    Expansions,
    RangeRatio,
    Flatness,
    All,
}

#[derive(Debug, Args)]
pub struct VerifyArgs {
    #[arg(long, value_enum)]
    pub claim: Option<Claim>,

    /// Rotation angle used by the expansion fits.
    #[arg(long, allow_hyphen_values = true)]
    pub theta: Option<String>,

    /// Infidelity threshold for the range-ratio claim.
    #[arg(long)]
    pub threshold: Option<f64>,
}

#[derive(Debug, Args)]
pub struct RangeArgs {
    #[command(flatten)]
    pub family: FamilyArgs,

    #[arg(long)]
    pub threshold: Option<f64>,

    /// Also report the ratio against this family's range.
    #[arg(long)]
    pub baseline: Option<String>,

    #[arg(long)]
    pub axis: Option<String>,

    /// Upper end of the error search.
    #[arg(long)]
    pub search_max: Option<f64>,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum DumpFormat {
    Text,
    Json,
}

#[derive(Debug, Args)]
pub struct DumpArgs {
    #[command(flatten)]
    pub family: FamilyArgs,

    #[arg(long, value_enum)]
    pub format: Option<DumpFormat>,

    /// Keep tilted periods as single elements instead of pulse sandwiches.
    #[arg(long)]
    pub logical: bool,

    /// Fuse adjacent pulses about a common axis and drop zero-angle pulses.
    #[arg(long)]
    pub merge: bool,

    #[arg(short, long)]
    pub output: Option<PathBuf>,
}

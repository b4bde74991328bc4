use std::path::PathBuf;

use clap::{Args, Parser, Subcommand, ValueEnum};
use mmwave_core::pdp::{DetectionThresholds, DEFAULT_DYNAMIC_RANGE_DB, DEFAULT_THRESHOLD_DB};
use mmwave_core::{Directionality, Environment, Polarization};

/// Environment variable naming the default output directory of `simulate`
/// and `report`.
pub const OUTPUT_DIR_ENV: &str = "MMWAVE_OUTPUT_DIR";

#[derive(Debug, Parser)]
#[command(
    name = "mmwave",
    version,
    about = "Indoor 28/73.5 GHz channel model toolkit"
)]
pub struct Cli {
    #[command(flatten)]
    pub globals: Globals,

    #[command(subcommand)]
    pub command: Command,
}

#[derive(Debug, Clone, Args)]
pub struct Globals {
    /// Close-in reference distance, meters.
    #[arg(long = "d0-m", global = true, default_value_t = 1.0)]
    pub d0_m: f64,

    /// Seed for `simulate`; overrides the config file's seed.
    #[arg(long, global = true)]
    pub seed: Option<u64>,

    /// Detection threshold above the noise floor, dB.
    #[arg(long = "threshold-db", global = true, default_value_t = DEFAULT_THRESHOLD_DB)]
    pub threshold_db: f64,

    /// Dynamic range below the PDP peak, dB.
    #[arg(long = "dynamic-range-db", global = true, default_value_t = DEFAULT_DYNAMIC_RANGE_DB)]
    pub dynamic_range_db: f64,
}

impl Default for Globals {
    fn default() -> Self {
        Self {
            d0_m: 1.0,
            seed: None,
            threshold_db: DEFAULT_THRESHOLD_DB,
            dynamic_range_db: DEFAULT_DYNAMIC_RANGE_DB,
        }
    }
}

impl Globals {
    pub fn thresholds(&self) -> DetectionThresholds {
        DetectionThresholds {
            threshold_db: self.threshold_db,
            dynamic_range_db: self.dynamic_range_db,
        }
    }
}

#[derive(Debug, Subcommand)]
pub enum Command {
    /// Fit close-in models to a path-loss sample CSV, one row per stratum.
    Fit(FitArgs),
    /// Delay statistics for a JSON batch of power delay profiles.
    PdpStats(PdpStatsArgs),
    /// Omnidirectional path loss from directional campaign records.
    SynthesizeOmni(SynthesizeArgs),
    /// Seeded synthetic campaign with a fit-back report.
    Simulate(SimulateArgs),
    /// Compare fitted models and delay spreads against the catalog.
    Report(ReportArgs),
    /// Dump the built-in parameter catalog.
    Catalog(CatalogArgs),
}

#[derive(Debug, Clone, Args)]
pub struct FitArgs {
    /// Path-loss sample CSV.
    pub input: PathBuf,
    /// Keep only this band, GHz.
    #[arg(long)]
    pub band: Option<f64>,
    #[arg(long)]
    pub env: Option<Environment>,
    #[arg(long)]
    pub pol: Option<Polarization>,
    #[arg(long)]
    pub dir: Option<Directionality>,
    /// Also write the fitted models as a parameter CSV (input to `report --fits`).
    #[arg(long, short)]
    pub output: Option<PathBuf>,
}

#[derive(Debug, Clone, Args)]
pub struct PdpStatsArgs {
    /// JSON array of PDPs.
    pub input: PathBuf,
    /// Write the CSV here instead of standard output.
    #[arg(long, short)]
    pub output: Option<PathBuf>,
}

#[derive(Debug, Clone, Args)]
pub struct SynthesizeArgs {
    /// JSON array of campaign records.
    pub input: PathBuf,
    #[arg(long, short)]
    pub output: Option<PathBuf>,
}

#[derive(Debug, Clone, Args)]
pub struct SimulateArgs {
    /// Campaign config JSON.
    pub config: PathBuf,
    #[arg(long = "output-dir", short, env = OUTPUT_DIR_ENV, default_value = "mmwave-output")]
    pub output_dir: PathBuf,
    /// Generate locations on one thread (output is identical either way).
    #[arg(long)]
    pub serial: bool,
    /// Also write directional campaign records (omni configs only).
    #[arg(long)]
    pub records: bool,
}

#[derive(Debug, Clone, Args)]
pub struct ReportArgs {
    /// Parameter CSV of fitted models.
    #[arg(long)]
    pub fits: Option<PathBuf>,
    /// RMS delay-spread CSV.
    #[arg(long)]
    pub spreads: Option<PathBuf>,
    #[arg(long = "output-dir", short, env = OUTPUT_DIR_ENV, default_value = "mmwave-output")]
    pub output_dir: PathBuf,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Default, ValueEnum)]
pub enum Format {
    #[default]
    Json,
    Csv,
}

#[derive(Debug, Clone, Args)]
pub struct CatalogArgs {
    #[arg(long, value_enum, default_value_t = Format::Json)]
    pub format: Format,
    /// Dump the delay-spread table instead of the path-loss models.
    #[arg(long = "delay-spread")]
    pub delay_spread: bool,
    #[arg(long, short)]
    pub output: Option<PathBuf>,
}

//! Command-line interface definition.

use clap::{Args, Parser, Subcommand};
use std::path::PathBuf;

#[derive(Parser, Debug)]
#[command(
    name = "squeezelab",
    version,
    about = "Generalized su(1,1) squeezed vacuum states: parameter sweeps, \
             figure-data regeneration, and oracle cross-checks"
)]
pub struct Cli {
    #[command(subcommand)]
    pub command: Command,
}

#[derive(Subcommand, Debug)]
pub enum Command {
    /// Quadrature variances over (alpha, tau, theta) grids.
    Variances(SweepArgs),
    /// Squeezing-transition polynomials and roots (x grid or parameter grids).
    Transition(SweepArgs),
    /// Photon-number distributions per parity sector.
    PhotonDist(SweepArgs),
    /// Mach-Zehnder Mandel Q scans.
    Mandel(SweepArgs),
    /// Run the invariant suite over a seeded random grid.
    Verify(VerifyArgs),
}

#[derive(Args, Debug, Default)]
pub struct SweepArgs {
    /// Declarative sweep spec (TOML); excludes all grid/parameter flags.
    #[arg(long)]
    pub config: Option<PathBuf>,

    /// Grid over alpha: `start:stop:step`, `start:stop`, or a comma list.
    #[arg(long, allow_hyphen_values = true)]
    pub alpha: Option<String>,

    /// Grid over |tau| (same syntax as --alpha).
    #[arg(long, conflicts_with = "tau", allow_hyphen_values = true)]
    pub tau_abs: Option<String>,

    /// Phase of tau in radians (pi shortcuts such as `pi/2` parse).
    #[arg(long, conflicts_with = "tau", allow_hyphen_values = true)]
    pub tau_phase: Option<String>,

    /// Full complex tau as `re` or `re,im`.
    #[arg(long, allow_hyphen_values = true)]
    pub tau: Option<String>,

    /// Grid over theta in radians (single value for photon-dist `mixed`).
    #[arg(long, allow_hyphen_values = true)]
    pub theta: Option<String>,

    /// Grid over x (transition sweeps only).
    #[arg(long, allow_hyphen_values = true)]
    pub x: Option<String>,

    /// Grid over the sector index n (photon-dist only), e.g. `0:20`.
    #[arg(long, allow_hyphen_values = true)]
    pub n: Option<String>,

    /// Coherent amplitude `re` or `re,im` (mandel only; default 1).
    #[arg(long, allow_hyphen_values = true)]
    pub z: Option<String>,

    /// Interferometer phase in radians (mandel only; default pi/2).
    #[arg(long, allow_hyphen_values = true)]
    pub phi: Option<String>,

    /// Output port (mandel only).
    #[arg(long, value_parser = ["a-prime", "b-prime"])]
    pub port: Option<String>,

    /// Parity sector (photon-dist only).
    #[arg(long, value_parser = ["even", "odd", "mixed"])]
    pub parity: Option<String>,

    /// Re-evaluate this fraction of points with the truncated-Fock oracle.
    #[arg(long)]
    pub oracle_check: Option<f64>,

    /// Seed for the oracle-check sample.
    #[arg(long, default_value_t = crate::spec::DEFAULT_SEED)]
    pub seed: u64,

    /// Abort if the grid exceeds this many points.
    #[arg(long, default_value_t = crate::spec::DEFAULT_MAX_POINTS)]
    pub max_points: usize,

    /// Output file, or `-` for stdout.
    #[arg(long, short, default_value = "-")]
    pub output: String,

    /// Output format.
    #[arg(long, value_parser = ["csv", "json"], default_value = "csv")]
    pub format: String,
}

#[derive(Args, Debug)]
pub struct VerifyArgs {
    /// Seed of the randomized grid.
    #[arg(long, default_value_t = crate::spec::DEFAULT_SEED)]
    pub seed: u64,

    /// Grid size per check (oracle checks use a tenth of this).
    #[arg(long, default_value_t = 200)]
    pub points: usize,

    /// Tolerance override `name=value`; repeatable.
    #[arg(long = "tol", value_name = "NAME=VALUE")]
    pub tolerances: Vec<String>,

    /// Run only the named checks; repeatable.
    #[arg(long = "only", value_name = "NAME")]
    pub only: Vec<String>,

    /// List available check names and exit.
    #[arg(long)]
    pub list: bool,
}

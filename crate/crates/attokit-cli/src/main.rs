//! `attokit` — scans, barrier profiles, photon statistics, regime maps,
//! and data comparison as CSV/JSON emitters.
//!
//! Exit codes: 0 = success (including partial results with warnings),
//! 1 = configuration error, 2 = data error. Output is plain text with no
//! decoration (`ATTOKIT_NO_COLOR` is accepted and trivially honored).

mod commands;
mod config;
mod render;

use std::path::PathBuf;
use std::process::ExitCode;

use clap::error::ErrorKind;
use clap::{Args, Parser, Subcommand, ValueEnum};

#[derive(Parser)]
#[command(
    name = "attokit",
    version,
    about = "Tunneling-time, barrier-geometry, and laser wave-packet calculator",
    propagate_version = true,
    after_help = "Exit codes: 0 success (including partial results with warnings), \
                  1 config error, 2 data error.\n\
                  Output is undecorated plain text; ATTOKIT_NO_COLOR is honored.\n\
                  Options may also come from --config (flat key=value; flags win)."
)]
pub struct Cli {
    #[command(subcommand)]
    pub command: Command,
}

#[derive(Subcommand)]
pub enum Command {
    /// Tunneling-time curves over a field or intensity grid
    Scan(ScanArgs),
    /// Wave-packet statistics table over intensity multipliers
    Table1(Table1Args),
    /// Barrier geometry at a single field strength
    Barrier(BarrierArgs),
    /// Keldysh parameter and ionization regime over a grid
    Regimes(RegimesArgs),
    /// Compare a model curve against an experimental dataset (JSON report)
    Compare(CompareArgs),
}

/// Flags shared by every subcommand; unset values fall back to the config
/// file, then to built-in defaults.
#[derive(Args, Clone)]
pub struct CommonArgs {
    /// Flat key=value config file; command-line flags win
    #[arg(long, value_name = "PATH", global = false)]
    pub config: Option<PathBuf>,
    /// Atom selection
    #[arg(long, value_enum)]
    pub atom: Option<AtomKind>,
    /// Ionization potential in au (requires --atom custom)
    #[arg(long)]
    pub ip: Option<f64>,
    /// Effective nuclear charge (requires --atom custom)
    #[arg(long)]
    pub zeff: Option<f64>,
    /// Laser central circular frequency in au
    #[arg(long)]
    pub omega0: Option<f64>,
    /// Laser ellipticity in [0, 1]
    #[arg(long)]
    pub ellipticity: Option<f64>,
    /// Output format
    #[arg(long, value_enum)]
    pub format: Option<FormatKind>,
    /// Write output to PATH instead of stdout
    #[arg(long, value_name = "PATH")]
    pub output: Option<PathBuf>,
}

#[derive(Args)]
pub struct ScanArgs {
    #[command(flatten)]
    pub common: CommonArgs,
    /// Field grid in au: lo:hi:step, a single value, or a comma list
    #[arg(long, value_name = "GRID")]
    pub field_grid: Option<String>,
    /// Intensity grid in au: lo:hi:step, a single value, or a comma list
    #[arg(long, value_name = "GRID")]
    pub intensity_grid: Option<String>,
    /// Half-width of the intermediate regime band around gamma_K = 1
    #[arg(long)]
    pub band: Option<f64>,
    /// Compute tau_num by its series route with this many terms instead of
    /// the closed form
    #[arg(long, value_name = "N")]
    pub series_order: Option<usize>,
}

#[derive(Args)]
pub struct Table1Args {
    #[command(flatten)]
    pub common: CommonArgs,
    /// Intensity multipliers (units of 1e14 W/cm²), comma separated
    #[arg(long, value_name = "LIST")]
    pub multipliers: Option<String>,
    /// Wave-packet coupling eta
    #[arg(long)]
    pub eta: Option<f64>,
    /// Append the computed-vs-published diff table
    #[arg(long)]
    pub golden: bool,
}

#[derive(Args)]
pub struct BarrierArgs {
    #[command(flatten)]
    pub common: CommonArgs,
    /// Field strength in au
    #[arg(long)]
    pub field: Option<f64>,
    /// Also sample the potential profile with N points over
    /// [0.5 x_entry, 1.5 x_exit]
    #[arg(long, value_name = "N")]
    pub profile: Option<usize>,
}

#[derive(Args)]
pub struct RegimesArgs {
    #[command(flatten)]
    pub common: CommonArgs,
    /// Field grid in au: lo:hi:step, a single value, or a comma list
    #[arg(long, value_name = "GRID")]
    pub field_grid: Option<String>,
    /// Intensity grid in au: lo:hi:step, a single value, or a comma list
    #[arg(long, value_name = "GRID")]
    pub intensity_grid: Option<String>,
    /// Half-width of the intermediate regime band around gamma_K = 1
    #[arg(long)]
    pub band: Option<f64>,
}

#[derive(Args)]
pub struct CompareArgs {
    #[command(flatten)]
    pub common: CommonArgs,
    /// Experimental dataset (delimited text; see README for the schema)
    #[arg(value_name = "DATA")]
    pub data: PathBuf,
    /// Model curve to compare against
    #[arg(long, value_enum)]
    pub model: Option<ModelKind>,
    /// Reference shift added to the model curve
    #[arg(long, value_enum)]
    pub shift: Option<ShiftKind>,
}

#[derive(ValueEnum, Clone, Copy, Debug, PartialEq, Eq)]
pub enum AtomKind {
    HeClementi,
    HeKullie,
    Custom,
}

#[derive(ValueEnum, Clone, Copy, Debug, PartialEq, Eq)]
pub enum FormatKind {
    Csv,
    Json,
}

#[derive(ValueEnum, Clone, Copy, Debug, PartialEq, Eq)]
pub enum ModelKind {
    Taud,
    Taunum,
    Tausym,
}

#[derive(ValueEnum, Clone, Copy, Debug, PartialEq, Eq)]
pub enum ShiftKind {
    None,
    HalfInverseIp,
    TauI,
}

/// Errors mapped onto the exit-code contract.
#[derive(Debug)]
pub enum AppError {
    Config(String),
    Data(String),
}

impl AppError {
    fn code(&self) -> u8 {
        match self {
            AppError::Config(_) => 1,
            AppError::Data(_) => 2,
        }
    }
}

impl std::fmt::Display for AppError {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        match self {
            AppError::Config(msg) => write!(f, "{msg}"),
            AppError::Data(msg) => write!(f, "{msg}"),
        }
    }
}

fn main() -> ExitCode {
    let cli = match Cli::try_parse() {
        Ok(cli) => cli,
        Err(e) if matches!(e.kind(), ErrorKind::DisplayHelp | ErrorKind::DisplayVersion) => {
            print!("{e}");
            return ExitCode::SUCCESS;
        }
        Err(e) => {
            eprint!("{e}");
            return ExitCode::from(1);
        }
    };
    match commands::run(cli) {
        Ok(()) => ExitCode::SUCCESS,
        Err(e) => {
            eprintln!("error: {e}");
            ExitCode::from(e.code())
        }
    }
}

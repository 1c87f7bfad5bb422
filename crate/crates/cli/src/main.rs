//! `segmental`: numerical experiments on polynomial interpolation from
//! segment integrals. Every command writes CSV files into `--out`; `--svg`
//! adds a polyline plot of the same series.

mod commands;
mod presets;
mod svg;

use std::path::PathBuf;
use std::process::ExitCode;

use clap::{Args, Parser, Subcommand, ValueEnum};

#[derive(Debug, Parser)]
#[command(name = "segmental", version, about = "Interpolation from segment averages: experiments and plots")]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Debug, Subcommand)]
enum Command {
    /// Interpolate a function (or external data) and sample the result.
    Interp(InterpArgs),
    /// Lebesgue constants, operator norms and bounds over a range of r.
    LebesgueSweep(SweepArgs),
    /// Lebesgue constants of arc-uniform sets for several arc ratios.
    C2Sweep(C2Args),
    /// Gap between Lebesgue constant and operator norm for overlapping CL segments.
    CloGap(RangeArgs),
    /// Runge function on equidistant and CL segments against nodal interpolation.
    RungeDemo(RungeArgs),
    /// Sample segmental Lagrange basis polynomials.
    Basis(BasisArgs),
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum FamilyArg {
    Eq,
    Cl,
    Clo,
    Arc,
}

#[derive(Debug, Args)]
pub struct Common {
    /// Output directory (created if missing).
    #[arg(long, default_value = "out")]
    pub out: PathBuf,
    /// Also write an SVG plot.
    #[arg(long)]
    pub svg: bool,
    /// Number of evaluation points.
    #[arg(long, default_value_t = 1001)]
    pub grid: usize,
}

#[derive(Debug, Args)]
pub struct RangeArgs {
    #[arg(long, default_value_t = 1)]
    pub r_min: usize,
    #[arg(long, default_value_t = 20)]
    pub r_max: usize,
    #[command(flatten)]
    pub common: Common,
}

#[derive(Debug, Args)]
pub struct InterpArgs {
    #[arg(long, value_enum, default_value = "cl")]
    pub family: FamilyArg,
    #[arg(long, default_value_t = 5)]
    pub r: usize,
    /// Arc ratio for `--family arc` (radius lambda*pi/r).
    #[arg(long, default_value_t = 0.5)]
    pub lambda: f64,
    /// runge10, cospi, sinpi, abs, step or poly:c0,c1,...
    #[arg(long = "fn", default_value = "runge10")]
    pub function: String,
    /// Segments as `i,alpha,beta` rows; overrides --family and --r.
    #[arg(long)]
    pub segments_file: Option<PathBuf>,
    /// Measurements as `i,mu` rows; replaces quadrature of --fn.
    #[arg(long)]
    pub mu_file: Option<PathBuf>,
    #[arg(long)]
    pub quad_n: Option<usize>,
    #[arg(long)]
    pub quad_panels: Option<usize>,
    #[command(flatten)]
    pub common: Common,
}

#[derive(Debug, Args)]
pub struct SweepArgs {
    #[arg(long, value_enum, default_value = "eq")]
    pub family: FamilyArg,
    #[arg(long, default_value_t = 0.5)]
    pub lambda: f64,
    #[command(flatten)]
    pub range: RangeArgs,
}

#[derive(Debug, Args)]
pub struct C2Args {
    /// Comma-separated arc ratios in (0, 1).
    #[arg(long, value_delimiter = ',', default_value = "0.3,0.5,0.7,0.9")]
    pub lambda: Vec<f64>,
    #[command(flatten)]
    pub range: RangeArgs,
}

#[derive(Debug, Args)]
pub struct RungeArgs {
    #[arg(long, default_value_t = 10)]
    pub r: usize,
    #[command(flatten)]
    pub common: Common,
}

#[derive(Debug, Args)]
pub struct BasisArgs {
    #[arg(long, value_enum, default_value = "eq")]
    pub family: FamilyArg,
    #[arg(long, default_value_t = 5)]
    pub r: usize,
    #[arg(long, default_value_t = 0.5)]
    pub lambda: f64,
    /// 1-based basis indices; all when omitted.
    #[arg(long, value_delimiter = ',')]
    pub index: Vec<usize>,
    #[command(flatten)]
    pub common: Common,
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    let result = match &cli.command {
        Command::Interp(a) => commands::interp(a),
        Command::LebesgueSweep(a) => commands::lebesgue_sweep(a),
        Command::C2Sweep(a) => commands::c2_sweep(a),
        Command::CloGap(a) => commands::clo_gap(a),
        Command::RungeDemo(a) => commands::runge_demo(a),
        Command::Basis(a) => commands::basis(a),
    };
    match result {
        Ok(commands::Outcome::Complete) => ExitCode::SUCCESS,
        Ok(commands::Outcome::Partial(n)) => {
            eprintln!("{n} row(s) failed; see the status column");
            ExitCode::from(1)
        }
        Err(commands::Failure::Usage(msg)) => {
            eprintln!("error: {msg}");
            ExitCode::from(2)
        }
        Err(commands::Failure::Run(msg)) => {
            eprintln!("error: {msg}");
            ExitCode::from(1)
        }
    }
}

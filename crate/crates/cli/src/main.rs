//! `bilin`: Gröbner bases, Hilbert bi-series and structure checks for
//! bilinear systems over GF(p).

mod commands;
mod input;

use std::fs;
use std::path::PathBuf;
use std::process::ExitCode;

use anyhow::{Context, Result};
use bilin_core::f5::Mode;
use bilin_core::{Field, DEFAULT_PRIME};
use clap::{Args, Parser, Subcommand, ValueEnum};

#[derive(Debug, Parser)]
#[command(name = "bilin", version, about = "Gröbner bases of bilinear systems over GF(p)")]
struct Cli {
    /// Field characteristic.
    #[arg(long, global = true, env = "BILIN_PRIME", default_value_t = DEFAULT_PRIME)]
    prime: u32,
    /// Size of the rayon pool (defaults to the number of CPUs).
    #[arg(long, global = true)]
    threads: Option<usize>,
    /// Print JSON instead of the human-readable report.
    #[arg(long, global = true)]
    json: bool,
    /// Write the report to this file instead of stdout.
    #[arg(long, global = true)]
    out: Option<PathBuf>,
    #[command(subcommand)]
    command: Command,
}

#[derive(Debug, Subcommand)]
enum Command {
    /// Compute a Gröbner basis up to a degree bound.
    Gb(GbArgs),
    /// Hilbert bi-series: closed form, recurrence and direct computation.
    Hilbert(HilbertArgs),
    /// Predicted reductions to zero and the speed-up model.
    Stats(StatsArgs),
    /// Run the structural checks on seeded random instances.
    Verify(VerifyArgs),
    /// Compare the field operations of the two matrix engines.
    Bench(BenchArgs),
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum ModeArg {
    Classical,
    Extended,
}

impl From<ModeArg> for Mode {
    fn from(m: ModeArg) -> Mode {
        match m {
            ModeArg::Classical => Mode::Classical,
            ModeArg::Extended => Mode::Extended,
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum EngineArg {
    Hom,
    Multihom,
    Buchberger,
}

/// Where the system comes from: a seeded random instance or a text file.
#[derive(Debug, Clone, Args)]
pub struct InstanceArgs {
    /// Last x index (the x block is x0..x{nx}).
    #[arg(long)]
    pub nx: Option<usize>,
    /// Last y index.
    #[arg(long)]
    pub ny: Option<usize>,
    /// Number of polynomials.
    #[arg(long)]
    pub m: Option<usize>,
    #[arg(long, default_value_t = 1)]
    pub seed: u64,
    /// Bidegree of the random polynomials, e.g. `1,1`.
    #[arg(long, value_parser = input::parse_bidegree, default_value = "1,1")]
    pub bidegree: (u32, u32),
    /// Read the system from a file, one polynomial per line.
    #[arg(long)]
    pub input: Option<PathBuf>,
    /// Treat the input (or the random system) as affine.
    #[arg(long)]
    pub affine: bool,
}

#[derive(Debug, Args)]
pub struct GbArgs {
    #[command(flatten)]
    pub instance: InstanceArgs,
    /// Degree bound; without it the smallest bound giving a full basis is searched.
    #[arg(long = "D")]
    pub d: Option<u32>,
    #[arg(long, value_enum, default_value_t = ModeArg::Classical)]
    pub mode: ModeArg,
    #[arg(long, value_enum, default_value_t = EngineArg::Hom)]
    pub engine: EngineArg,
    /// Cross-check the reduced basis against Buchberger's algorithm.
    #[arg(long)]
    pub check: bool,
}

#[derive(Debug, Args)]
pub struct ShapeArgs {
    #[arg(long)]
    pub nx: usize,
    #[arg(long)]
    pub ny: usize,
    #[arg(long)]
    pub m: usize,
}

#[derive(Debug, Args)]
pub struct HilbertArgs {
    #[command(flatten)]
    pub shape: ShapeArgs,
    #[arg(long, num_args = 2, value_names = ["A", "B"], default_values_t = [6, 6])]
    pub trunc: Vec<u32>,
    #[arg(long, default_value_t = 1)]
    pub seed: u64,
    /// Per-cell cost budget of the direct computation; 0 skips it.
    #[arg(long, default_value_t = 10_000_000_000)]
    pub budget: u64,
}

#[derive(Debug, Args)]
pub struct StatsArgs {
    #[command(flatten)]
    pub shape: ShapeArgs,
    /// Also run Matrix F5 up to this degree and report what it observes.
    #[arg(long = "D")]
    pub d: Option<u32>,
    #[arg(long, default_value_t = 1)]
    pub seed: u64,
}

#[derive(Debug, Args)]
pub struct VerifyArgs {
    #[arg(long)]
    pub nx: usize,
    #[arg(long)]
    pub ny: usize,
    /// Number of polynomials; defaults to nx + ny.
    #[arg(long)]
    pub m: Option<usize>,
    #[arg(long, default_value_t = 1)]
    pub seed: u64,
    /// Number of consecutive seeds to check.
    #[arg(long, default_value_t = 3)]
    pub seeds: u64,
}

#[derive(Debug, Args)]
pub struct BenchArgs {
    #[command(flatten)]
    pub shape: ShapeArgs,
    #[arg(long = "D")]
    pub d: u32,
    #[arg(long, default_value_t = 1)]
    pub seed: u64,
    #[arg(long, value_enum, default_value_t = ModeArg::Classical)]
    pub mode: ModeArg,
}

/// A finished command: what to print and whether every check held.
pub struct Report {
    pub human: String,
    pub json: serde_json::Value,
    pub consistent: bool,
}

fn run(cli: &Cli) -> Result<Report> {
    let field = Field::new(cli.prime)?;
    if let Some(n) = cli.threads {
        rayon::ThreadPoolBuilder::new()
            .num_threads(n)
            .build_global()
            .context("configuring the thread pool")?;
    }
    match &cli.command {
        Command::Gb(a) => commands::gb(a, &field),
        Command::Hilbert(a) => commands::hilbert(a, &field),
        Command::Stats(a) => commands::stats(a, &field),
        Command::Verify(a) => commands::verify(a, &field),
        Command::Bench(a) => commands::bench(a, &field),
    }
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    let report = match run(&cli) {
        Ok(r) => r,
        Err(e) => {
            eprintln!("error: {e:#}");
            return ExitCode::from(1);
        }
    };
    let mut text = if cli.json {
        serde_json::to_string_pretty(&report.json).expect("json values serialize")
    } else {
        report.human
    };
    if !text.ends_with('\n') {
        text.push('\n');
    }
    match &cli.out {
        Some(path) => {
            if let Err(e) = fs::write(path, &text) {
                eprintln!("error: writing {}: {e}", path.display());
                return ExitCode::from(1);
            }
        }
        None => print!("{text}"),
    }
    if report.consistent {
        ExitCode::SUCCESS
    } else {
        eprintln!("consistency check failed");
        ExitCode::from(2)
    }
}

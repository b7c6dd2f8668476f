//! `radix-census`: exact radix expansions, digit censuses, Stoneham digit
//! dumps and FC1/FC2 verification from the command line.
//!
//! Exit codes: 0 when every check passes, 1 on a verification failure, 2 on
//! usage or precondition errors.

mod commands;
mod json;

use std::fs::File;
use std::io::{self, BufWriter, Write};
use std::path::PathBuf;
use std::process::ExitCode;

use clap::{Args, Parser, Subcommand, ValueEnum};
use num_bigint::BigUint;

#[derive(Debug, Parser)]
#[command(
    name = "radix-census",
    version,
    about = "Exact radix expansions and Stoneham digit identities"
)]
struct Cli {
    #[command(subcommand)]
    command: Command,

    #[arg(long, value_enum, default_value_t = Format::Text, global = true)]
    format: Format,

    /// Write output here instead of stdout.
    #[arg(long, global = true)]
    out: Option<PathBuf>,

    /// Print timing and path metadata to stderr.
    #[arg(short, long, action = clap::ArgAction::Count, global = true)]
    verbose: u8,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum Format {
    Text,
    Json,
    Csv,
}

#[derive(Debug, Subcommand)]
enum Command {
    /// Preperiod and minimal period of num/den in a base.
    Expand(ExpandArgs),
    /// Digit census of the period of 1/p^m.
    Census(CensusArgs),
    /// Digit dump of a Stoneham number.
    Stoneham(StonehamArgs),
    /// Verify FC1 or FC2 for n = 0..=max-n.
    Verify(VerifyArgs),
    /// Check F_c(x^c) = c·F_c(x) − x^c through a degree bound.
    Mahler(MahlerArgs),
}

#[derive(Debug, Args)]
pub struct ExpandArgs {
    #[arg(long)]
    pub num: BigUint,
    #[arg(long)]
    pub den: BigUint,
    #[arg(long)]
    pub base: u32,
    /// Render at most this many digits (lengths are still exact).
    #[arg(long)]
    pub max_digits: Option<u64>,
}

#[derive(Debug, Args)]
pub struct CensusArgs {
    #[arg(long)]
    pub p: u64,
    #[arg(long)]
    pub m: u32,
    #[arg(long)]
    pub base: u32,
    /// Count digits of the long-division expansion instead of the closed form.
    #[arg(long)]
    pub brute: bool,
    /// Compute both and compare.
    #[arg(long, conflicts_with = "brute")]
    pub check: bool,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum Radix {
    B,
    B2,
}

#[derive(Debug, Args)]
pub struct StonehamArgs {
    #[arg(long)]
    pub b: u32,
    #[arg(long)]
    pub c: u32,
    #[arg(long)]
    pub digits: u64,
    #[arg(long, value_enum, default_value_t = Radix::B)]
    pub radix: Radix,
    /// Force the long-division path.
    #[arg(long)]
    pub oracle: bool,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum Which {
    Fc1,
    Fc2,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum ModeArg {
    Literal,
    Corrected,
    Both,
}

#[derive(Debug, Args)]
pub struct VerifyArgs {
    #[arg(value_enum)]
    pub which: Which,
    #[arg(long)]
    pub max_n: u32,
    /// FC2 reading (default corrected); FC1 has only the literal one.
    #[arg(long, value_enum)]
    pub mode: Option<ModeArg>,
}

#[derive(Debug, Args)]
pub struct MahlerArgs {
    #[arg(long)]
    pub c: u64,
    #[arg(long)]
    pub degree: u64,
    /// Also print the nonzero coefficients of F_c.
    #[arg(long)]
    pub show_series: bool,
}

#[derive(Debug)]
pub enum Failure {
    /// Exit 1.
    Verification(String),
    /// Exit 2.
    Usage(String),
}

impl From<radix_census::Error> for Failure {
    fn from(e: radix_census::Error) -> Self {
        Failure::Usage(e.to_string())
    }
}

impl From<io::Error> for Failure {
    fn from(e: io::Error) -> Self {
        Failure::Usage(format!("i/o error: {e}"))
    }
}

pub struct Context {
    pub format: Format,
    pub verbose: u8,
}

impl Context {
    pub fn note(&self, msg: impl AsRef<str>) {
        if self.verbose > 0 {
            eprintln!("{}", msg.as_ref());
        }
    }
}

fn run(cli: Cli) -> Result<(), Failure> {
    let sink: Box<dyn Write> = match &cli.out {
        Some(path) => Box::new(File::create(path)?),
        None => Box::new(io::stdout().lock()),
    };
    let mut out = BufWriter::new(sink);
    let ctx = Context {
        format: cli.format,
        verbose: cli.verbose,
    };
    let result = match &cli.command {
        Command::Expand(args) => commands::expand(&ctx, args, &mut out),
        Command::Census(args) => commands::census(&ctx, args, &mut out),
        Command::Stoneham(args) => commands::stoneham(&ctx, args, &mut out),
        Command::Verify(args) => commands::verify(&ctx, args, &mut out),
        Command::Mahler(args) => commands::mahler(&ctx, args, &mut out),
    };
    out.flush()?;
    result
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    match run(cli) {
        Ok(()) => ExitCode::SUCCESS,
        Err(Failure::Verification(msg)) => {
            eprintln!("verification failed: {msg}");
            ExitCode::from(1)
        }
        Err(Failure::Usage(msg)) => {
            eprintln!("error: {msg}");
            ExitCode::from(2)
        }
    }
}

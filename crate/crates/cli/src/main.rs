use std::path::PathBuf;
use std::process::ExitCode;

use clap::{Args, Parser, Subcommand, ValueEnum};

mod commands;
mod svg;
mod verify;

/// Siegel-family polynomials, coefficient curves and trace-bound checks.
#[derive(Debug, Parser)]
#[command(name = "trace-atlas", version)]
struct Cli {
    #[command(flatten)]
    tol: Tolerances,

    #[command(subcommand)]
    command: Command,
}

#[derive(Debug, Clone, Copy, Args)]
pub struct Tolerances {
    /// Absolute tolerance for adaptive Simpson quadrature.
    #[arg(
        long,
        global = true,
        env = "TRACE_ATLAS_TOL_QUAD",
        default_value_t = 1e-7
    )]
    pub tol_quad: f64,

    /// Relative width of certified root enclosures.
    #[arg(
        long,
        global = true,
        env = "TRACE_ATLAS_TOL_ROOT",
        default_value_t = 1e-15
    )]
    pub tol_root: f64,
}

#[derive(Debug, Subcommand)]
enum Command {
    /// Build g_p for a list of primes; print traces, write corpus and points.
    Gen(GenArgs),
    /// Sample L and/or ell on [0, 1] as CSV or SVG.
    Curves(CurvesArgs),
    /// Check a corpus or a tuples file; one JSON report per line.
    Verify(VerifyArgs),
    /// Reference constants as JSON.
    Constants,
    /// Area between two curves on a subinterval of [0, 1] as JSON.
    Area(AreaArgs),
}

#[derive(Debug, Args)]
pub struct GenArgs {
    /// Comma-separated primes.
    #[arg(long, value_delimiter = ',', num_args = 0.., conflicts_with = "upto")]
    pub primes: Option<Vec<u64>>,

    /// Every odd prime up to this bound.
    #[arg(long)]
    pub upto: Option<u64>,

    /// Corpus output, one polynomial per line.
    #[arg(long)]
    pub corpus: Option<PathBuf>,

    /// Points CSV output (`p,n,d,c,value`).
    #[arg(long)]
    pub points: Option<PathBuf>,

    /// Largest prime accepted.
    #[arg(long, default_value_t = trace_atlas::siegel::DEFAULT_PRIME_CAP)]
    pub cap: u64,

    /// Skip the Sturm total-positivity certificate.
    #[arg(long)]
    pub no_certify: bool,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum Kind {
    #[value(name = "L")]
    L,
    #[value(name = "ell")]
    Ell,
    #[value(name = "both")]
    Both,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum Format {
    Csv,
    Svg,
}

#[derive(Debug, Args)]
pub struct CurvesArgs {
    #[arg(long, value_enum, default_value = "both")]
    pub kind: Kind,

    /// Number of samples, endpoints included.
    #[arg(long, default_value_t = 201)]
    pub grid: usize,

    /// Defaults to the extension of --out, else csv.
    #[arg(long, value_enum)]
    pub format: Option<Format>,

    /// Output file; stdout when absent.
    #[arg(long)]
    pub out: Option<PathBuf>,

    /// Points CSV drawn over the curves (SVG only).
    #[arg(long)]
    pub overlay: Option<PathBuf>,
}

#[derive(Debug, Args)]
#[group(required = true, multiple = false)]
pub struct VerifyInput {
    /// Corpus file: integer coefficients, constant term first.
    #[arg(long)]
    pub corpus: Option<PathBuf>,

    /// Tuples file: whitespace-separated positive reals, one tuple per line.
    #[arg(long)]
    pub tuples: Option<PathBuf>,
}

#[derive(Debug, Args)]
pub struct VerifyArgs {
    #[command(flatten)]
    pub input: VerifyInput,

    /// Report output; stdout when absent.
    #[arg(long)]
    pub out: Option<PathBuf>,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum AreaCurve {
    #[value(name = "L")]
    L,
    #[value(name = "ell")]
    Ell,
    #[value(name = "one")]
    One,
}

#[derive(Debug, Args)]
pub struct AreaArgs {
    #[arg(long, value_enum, default_value = "L")]
    pub upper: AreaCurve,

    #[arg(long, value_enum, default_value = "one")]
    pub lower: AreaCurve,

    #[arg(long, default_value_t = 0.0)]
    pub lo: f64,

    #[arg(long, default_value_t = 1.0)]
    pub hi: f64,
}

/// How a command ended, mapped onto the stable exit codes.
#[derive(Debug)]
pub enum Outcome {
    Ok,
    VerificationFailed,
}

/// Errors that stop a command: bad flags, unparsable input, IO.
pub type Failure = anyhow::Error;

fn main() -> ExitCode {
    let cli = Cli::parse();
    let result = check_tolerances(&cli.tol).and_then(|()| match cli.command {
        Command::Gen(a) => commands::gen(&a),
        Command::Curves(a) => commands::curves(&a),
        Command::Verify(a) => verify::run(&a, &cli.tol),
        Command::Constants => commands::constants(&cli.tol),
        Command::Area(a) => commands::area(&a, &cli.tol),
    });
    match result {
        Ok(Outcome::Ok) => ExitCode::SUCCESS,
        Ok(Outcome::VerificationFailed) => ExitCode::from(1),
        Err(e) => {
            eprintln!("error: {e:#}");
            ExitCode::from(2)
        }
    }
}

fn check_tolerances(tol: &Tolerances) -> Result<(), Failure> {
    for (name, v) in [("--tol-quad", tol.tol_quad), ("--tol-root", tol.tol_root)] {
        if !(v > 0.0 && v.is_finite()) {
            anyhow::bail!("{name} must be positive, got {v}");
        }
    }
    Ok(())
}

use std::path::PathBuf;
use std::process::ExitCode;

use clap::{Args, Parser, Subcommand};

mod commands;

use commands::Failure;

/// Dynamical degrees, spectral gaps and mixing experiments for automorphisms
/// with exactly known cohomology.
#[derive(Debug, Parser)]
#[command(name = "mixlab", version)]
struct Cli {
    /// Catalog file (JSON); the built-in catalog when absent.
    #[arg(long, global = true, env = "MIXLAB_CATALOG")]
    catalog: Option<PathBuf>,

    /// Directory receiving the report files; stdout only when absent.
    #[arg(long, global = true, env = "MIXLAB_OUT")]
    out: Option<PathBuf>,

    #[command(subcommand)]
    command: Command,
}

#[derive(Debug, Subcommand)]
enum Command {
    /// Dynamical degrees, hypothesis checks and the admissible δ interval.
    Degrees(DegreesArgs),
    /// Block radii of the product action `(f⁻¹, f)` on middle cohomology.
    Kunneth(KunnethArgs),
    /// Convergence rate of `λ⁻ⁿ Mⁿ` on the dominant block.
    Rate(RateArgs),
    /// Exact and Monte Carlo correlations checked against the mixing bound.
    Mix(MixArgs),
    /// Parse the catalog and echo the derived invariants of every instance.
    ValidateCatalog,
}

#[derive(Debug, Args)]
struct InstanceArg {
    #[arg(long, env = "MIXLAB_INSTANCE")]
    instance: String,
}

#[derive(Debug, Args)]
pub struct DegreesArgs {
    #[command(flatten)]
    instance: InstanceArg,
    /// Candidate rate δ to test against the interval and the refined threshold.
    #[arg(long, env = "MIXLAB_DELTA")]
    delta: Option<f64>,
    #[arg(long, env = "MIXLAB_MARGIN_DELTA0", default_value_t = mixlab::cohomology::DEFAULT_DELTA0_MARGIN)]
    margin_delta0: f64,
}

#[derive(Debug, Args)]
pub struct KunnethArgs {
    #[command(flatten)]
    instance: InstanceArg,
    /// Relative tolerance for the dominant radius against `d_p²`.
    #[arg(long, env = "MIXLAB_TOLERANCE", default_value_t = 1e-6)]
    tolerance: f64,
    #[arg(long, env = "MIXLAB_MARGIN_DELTA0", default_value_t = mixlab::cohomology::DEFAULT_DELTA0_MARGIN)]
    margin_delta0: f64,
}

#[derive(Debug, Args)]
pub struct RateArgs {
    #[command(flatten)]
    instance: InstanceArg,
    #[arg(long, env = "MIXLAB_N_MAX", default_value_t = 60)]
    n_max: usize,
    /// Relative tolerance for the fitted slope against `−ln(d_p/ρ₂)`.
    #[arg(long, env = "MIXLAB_TOLERANCE", default_value_t = 0.05)]
    tolerance: f64,
    #[arg(long, env = "MIXLAB_MARGIN_DELTA0", default_value_t = mixlab::cohomology::DEFAULT_DELTA0_MARGIN)]
    margin_delta0: f64,
}

#[derive(Debug, Args)]
pub struct MixArgs {
    #[command(flatten)]
    instance: InstanceArg,
    #[arg(long, env = "MIXLAB_N_MAX", default_value_t = 30)]
    n_max: usize,
    /// Monte Carlo sample count; 0 skips the Monte Carlo run.
    #[arg(long, env = "MIXLAB_SAMPLES", default_value_t = 100_000)]
    samples: usize,
    #[arg(long, env = "MIXLAB_SEED", default_value_t = 1)]
    seed: u64,
    /// Mixing rate parameter; the geometric midpoint of the interval when absent.
    #[arg(long, env = "MIXLAB_DELTA")]
    delta: Option<f64>,
    #[arg(long, env = "MIXLAB_BETA", default_value_t = 2.0)]
    beta: f64,
    #[arg(long, env = "MIXLAB_BETA_PRIME", default_value_t = 2.0)]
    beta_prime: f64,
    /// Frequency radius of random Hölder test functions; `cos 2πx₁` for both when absent.
    #[arg(long, env = "MIXLAB_RADIUS")]
    radius: Option<i64>,
    /// Also write an SVG plot into the output directory.
    #[arg(long, env = "MIXLAB_SVG")]
    svg: bool,
}

fn main() -> ExitCode {
    let cli = match Cli::try_parse() {
        Ok(c) => c,
        Err(e) => {
            let code = if e.use_stderr() { 1 } else { 0 };
            let _ = e.print();
            return ExitCode::from(code);
        }
    };
    match commands::run(&cli) {
        Ok(()) => ExitCode::SUCCESS,
        Err(Failure::Input(e)) => {
            eprintln!("error: {e:#}");
            ExitCode::from(1)
        }
        Err(Failure::Hypothesis(msg)) => {
            eprintln!("error: {msg}");
            ExitCode::from(2)
        }
    }
}

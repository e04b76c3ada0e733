//! Command-line front end for the cfas library.

mod commands;
mod config;
mod csvout;

use clap::{Args, Parser, Subcommand};
use commands::{
    cmd_analytic, cmd_optimize, cmd_reproduce, cmd_scale, cmd_simulate, Constraints, CurveParams,
    Figure, OptimizeParams, ReproduceParams, SimulateParams,
};
use config::{expand_range, parse_list, CliError, Settings};
use std::path::PathBuf;
use std::process::ExitCode;

const DEFAULT_U0_START: f64 = 3.0;
const DEFAULT_U0_STOP: f64 = 16.0;
const DEFAULT_U0_STEP: f64 = 0.5;
const DEFAULT_REPLICATES: u64 = 100_000;
const DEFAULT_SEED: u64 = 1;
const DEFAULT_SPACING: f64 = 0.01;
const DEFAULT_STEPS: usize = 4000;
const DEFAULT_U0: f64 = 6.4;

#[derive(Parser)]
#[command(
    name = "cfas",
    version,
    about = "High-SNR probability of a continuous fluid antenna over correlated Rayleigh fading"
)]
struct Cli {
    /// Key=value config file; command-line flags override its entries
    #[arg(long, global = true, value_name = "PATH")]
    config: Option<PathBuf>,

    #[command(subcommand)]
    command: Cmd,
}

#[derive(Subcommand)]
enum Cmd {
    /// Closed-form, EEC and scaling-law HSP curves as CSV
    Analytic(CurveArgs),
    /// Scaling-law view of the HSP curve (gain over a fixed antenna)
    Scale(CurveArgs),
    /// Optimal box shape under a measure budget and side limits
    Optimize(OptimizeArgs),
    /// Monte Carlo estimate of the HSP curve as CSV
    Simulate(SimulateArgs),
    /// Figure datasets (fig2: dimension sweep, fig3: shape sweep)
    Reproduce(ReproduceArgs),
}

#[derive(Args)]
struct CurveArgs {
    /// Comma-separated side lengths in wavelengths; empty for a fixed antenna
    #[arg(long)]
    sides: Option<String>,
    /// Second spectral moment of the correlation (default: Jakes, 2 pi^2)
    #[arg(long)]
    lambda2: Option<f64>,
    /// First threshold of the u0 sweep
    #[arg(long)]
    u0_start: Option<f64>,
    /// Last threshold of the u0 sweep (inclusive)
    #[arg(long)]
    u0_stop: Option<f64>,
    /// Threshold increment
    #[arg(long)]
    u0_step: Option<f64>,
    /// Channel gain; with --es and --sigma2, thresholds are physical SNR
    #[arg(long)]
    beta: Option<f64>,
    /// Symbol energy
    #[arg(long)]
    es: Option<f64>,
    /// Noise power
    #[arg(long)]
    sigma2: Option<f64>,
    /// Output CSV path (stdout when omitted)
    #[arg(long)]
    output: Option<PathBuf>,
}

#[derive(Args)]
struct OptimizeArgs {
    /// Area budget for a 2D search (exclusive with --volume)
    #[arg(long)]
    area: Option<f64>,
    /// Volume budget for a 3D search (exclusive with --area)
    #[arg(long)]
    volume: Option<f64>,
    /// Comma-separated side limits (two for --area, three for --volume)
    #[arg(long)]
    limits: Option<String>,
    /// Second spectral moment of the correlation (default: Jakes, 2 pi^2)
    #[arg(long)]
    lambda2: Option<f64>,
    /// Threshold at which the HSP is maximized
    #[arg(long)]
    u0: Option<f64>,
    /// Grid steps per axis for the brute-force oracle
    #[arg(long)]
    steps: Option<usize>,
    /// Output CSV path (stdout when omitted)
    #[arg(long)]
    output: Option<PathBuf>,
}

#[derive(Args)]
struct SimulateArgs {
    /// Comma-separated side lengths in wavelengths; empty for a fixed antenna
    #[arg(long)]
    sides: Option<String>,
    /// Grid spacing in wavelengths
    #[arg(long)]
    spacing: Option<f64>,
    /// Comma-separated ascending thresholds; overrides the u0 sweep flags
    #[arg(long)]
    thresholds: Option<String>,
    /// First threshold of the u0 sweep
    #[arg(long)]
    u0_start: Option<f64>,
    /// Last threshold of the u0 sweep (inclusive)
    #[arg(long)]
    u0_stop: Option<f64>,
    /// Threshold increment
    #[arg(long)]
    u0_step: Option<f64>,
    /// Replicate count
    #[arg(long)]
    replicates: Option<u64>,
    /// Master seed; replicate i draws from stream i
    #[arg(long)]
    seed: Option<u64>,
    /// Worker threads for the replicate loop (default: all cores)
    #[arg(long)]
    workers: Option<usize>,
    /// Cap on the total number of grid points
    #[arg(long)]
    cap: Option<usize>,
    /// Ceiling on the spectral mass removed by eigenvalue clamping
    #[arg(long)]
    clamp_tol: Option<f64>,
    /// Second spectral moment for the reference closed form
    #[arg(long)]
    lambda2: Option<f64>,
    /// Channel gain; with --es and --sigma2, thresholds are physical SNR
    #[arg(long)]
    beta: Option<f64>,
    /// Symbol energy
    #[arg(long)]
    es: Option<f64>,
    /// Noise power
    #[arg(long)]
    sigma2: Option<f64>,
    /// Output CSV path (stdout when omitted)
    #[arg(long)]
    output: Option<PathBuf>,
}

#[derive(Args)]
struct ReproduceArgs {
    /// Which dataset to emit: fig2 or fig3
    #[arg(long)]
    figure: Option<String>,
    /// Directory for the CSV files
    #[arg(long)]
    outdir: Option<PathBuf>,
    /// Replicate count for the simulated curves
    #[arg(long)]
    replicates: Option<u64>,
    /// Master seed for the simulated curves
    #[arg(long)]
    seed: Option<u64>,
    /// Worker threads for the replicate loop (default: all cores)
    #[arg(long)]
    workers: Option<usize>,
}

fn main() -> ExitCode {
    match run() {
        Ok(()) => ExitCode::SUCCESS,
        Err(e) => {
            eprintln!("error: {e}");
            ExitCode::from(e.exit_code())
        }
    }
}

fn run() -> Result<(), CliError> {
    let cli = Cli::parse();
    let settings = Settings::load(cli.config.as_deref())?;
    match cli.command {
        Cmd::Analytic(args) => cmd_analytic(&resolve_curve(&args, &settings)?),
        Cmd::Scale(args) => cmd_scale(&resolve_curve(&args, &settings)?),
        Cmd::Optimize(args) => cmd_optimize(&resolve_optimize(&args, &settings)?),
        Cmd::Simulate(args) => {
            let (params, workers) = resolve_simulate(&args, &settings)?;
            with_workers(workers, || cmd_simulate(&params))
        }
        Cmd::Reproduce(args) => {
            let (params, workers) = resolve_reproduce(&args, &settings)?;
            with_workers(workers, || cmd_reproduce(&params))
        }
    }
}

#[cfg(feature = "parallel")]
fn with_workers<T: Send>(workers: Option<usize>, f: impl FnOnce() -> T + Send) -> T {
    match workers {
        Some(w) => rayon::ThreadPoolBuilder::new()
            .num_threads(w)
            .build()
            .expect("worker pool")
            .install(f),
        None => f(),
    }
}

#[cfg(not(feature = "parallel"))]
fn with_workers<T>(_workers: Option<usize>, f: impl FnOnce() -> T) -> T {
    f()
}

fn pick<T: Clone + std::str::FromStr>(
    flag: &Option<T>,
    settings: &Settings,
    key: &str,
) -> Result<Option<T>, CliError>
where
    T::Err: std::fmt::Display,
{
    if let Some(v) = flag {
        return Ok(Some(v.clone()));
    }
    settings.get(key)
}

fn pick_string(flag: &Option<String>, settings: &Settings, key: &str) -> Option<String> {
    flag.clone()
        .or_else(|| settings.get_str(key).map(str::to_string))
}

fn pick_path(flag: &Option<PathBuf>, settings: &Settings, key: &str) -> Option<PathBuf> {
    flag.clone()
        .or_else(|| settings.get_str(key).map(PathBuf::from))
}

/// Converts physical SNR thresholds to u0 when all channel parameters are
/// present; rejects an incomplete channel parameter set.
fn apply_channel(
    thresholds: Vec<f64>,
    beta: Option<f64>,
    es: Option<f64>,
    sigma2: Option<f64>,
) -> Result<Vec<f64>, CliError> {
    match (beta, es, sigma2) {
        (None, None, None) => Ok(thresholds),
        (Some(beta), Some(es), Some(sigma2)) => {
            let cfg = cfas::ChannelConfig::new(beta, es, sigma2)?;
            thresholds
                .into_iter()
                .map(|u| cfg.threshold_u0(u).map_err(CliError::from))
                .collect()
        }
        _ => Err(CliError::Usage(
            "channel conversion needs all of beta, es and sigma2".into(),
        )),
    }
}

fn resolve_domain(
    sides: &Option<String>,
    settings: &Settings,
) -> Result<cfas::DomainBox, CliError> {
    let raw = pick_string(sides, settings, "sides").unwrap_or_default();
    Ok(cfas::DomainBox::new(parse_list(&raw, "sides")?)?)
}

fn ensure_lambda2(lambda2: f64) -> Result<f64, CliError> {
    if lambda2.is_finite() && lambda2 > 0.0 {
        Ok(lambda2)
    } else {
        Err(CliError::Usage(format!(
            "lambda2 must be positive, got {lambda2}"
        )))
    }
}

fn ensure_positive_thresholds(thresholds: &[f64]) -> Result<(), CliError> {
    if !thresholds.iter().all(|&u| u > 0.0) {
        return Err(CliError::Usage(
            "thresholds must be strictly positive".into(),
        ));
    }
    Ok(())
}

fn resolve_curve(args: &CurveArgs, settings: &Settings) -> Result<CurveParams, CliError> {
    let domain = resolve_domain(&args.sides, settings)?;
    let lambda2 = pick(&args.lambda2, settings, "lambda2")?.unwrap_or(cfas::JAKES_LAMBDA2);
    let start = pick(&args.u0_start, settings, "u0-start")?.unwrap_or(DEFAULT_U0_START);
    let stop = pick(&args.u0_stop, settings, "u0-stop")?.unwrap_or(DEFAULT_U0_STOP);
    let step = pick(&args.u0_step, settings, "u0-step")?.unwrap_or(DEFAULT_U0_STEP);
    let thresholds = apply_channel(
        expand_range(start, stop, step)?,
        pick(&args.beta, settings, "beta")?,
        pick(&args.es, settings, "es")?,
        pick(&args.sigma2, settings, "sigma2")?,
    )?;
    ensure_positive_thresholds(&thresholds)?;
    Ok(CurveParams {
        domain,
        lambda2: ensure_lambda2(lambda2)?,
        thresholds,
        output: pick_path(&args.output, settings, "output"),
    })
}

fn resolve_optimize(args: &OptimizeArgs, settings: &Settings) -> Result<OptimizeParams, CliError> {
    let area = pick(&args.area, settings, "area")?;
    let volume = pick(&args.volume, settings, "volume")?;
    let limits_raw = pick_string(&args.limits, settings, "limits")
        .ok_or_else(|| CliError::Usage("optimize needs --limits".into()))?;
    let limits = parse_list(&limits_raw, "limits")?;
    let constraints = match (area, volume) {
        (Some(s), None) => {
            if limits.len() != 2 {
                return Err(CliError::Usage(format!(
                    "--area needs exactly two limits, got {}",
                    limits.len()
                )));
            }
            Constraints::Rect(cfas::shapeopt::ShapeConstraints2D::new(
                s, limits[0], limits[1],
            )?)
        }
        (None, Some(v)) => {
            if limits.len() != 3 {
                return Err(CliError::Usage(format!(
                    "--volume needs exactly three limits, got {}",
                    limits.len()
                )));
            }
            Constraints::Cuboid(cfas::shapeopt::ShapeConstraints3D::new(
                v, limits[0], limits[1], limits[2],
            )?)
        }
        _ => {
            return Err(CliError::Usage(
                "optimize needs exactly one of --area or --volume".into(),
            ))
        }
    };
    let u0 = pick(&args.u0, settings, "u0")?.unwrap_or(DEFAULT_U0);
    if !(u0.is_finite() && u0 > 0.0) {
        return Err(CliError::Usage(format!("u0 must be positive, got {u0}")));
    }
    let steps = pick(&args.steps, settings, "steps")?.unwrap_or(DEFAULT_STEPS);
    if steps < 100 {
        return Err(CliError::Usage(format!(
            "oracle needs at least 100 steps, got {steps}"
        )));
    }
    Ok(OptimizeParams {
        constraints,
        lambda2: ensure_lambda2(
            pick(&args.lambda2, settings, "lambda2")?.unwrap_or(cfas::JAKES_LAMBDA2),
        )?,
        u0,
        steps,
        output: pick_path(&args.output, settings, "output"),
    })
}

fn resolve_simulate(
    args: &SimulateArgs,
    settings: &Settings,
) -> Result<(SimulateParams, Option<usize>), CliError> {
    let domain = resolve_domain(&args.sides, settings)?;
    let thresholds = match pick_string(&args.thresholds, settings, "thresholds") {
        Some(raw) => parse_list(&raw, "thresholds")?,
        None => {
            let start = pick(&args.u0_start, settings, "u0-start")?.unwrap_or(DEFAULT_U0_START);
            let stop = pick(&args.u0_stop, settings, "u0-stop")?.unwrap_or(DEFAULT_U0_STOP);
            let step = pick(&args.u0_step, settings, "u0-step")?.unwrap_or(DEFAULT_U0_STEP);
            expand_range(start, stop, step)?
        }
    };
    let thresholds = apply_channel(
        thresholds,
        pick(&args.beta, settings, "beta")?,
        pick(&args.es, settings, "es")?,
        pick(&args.sigma2, settings, "sigma2")?,
    )?;
    ensure_positive_thresholds(&thresholds)?;
    let params = SimulateParams {
        domain,
        lambda2: ensure_lambda2(
            pick(&args.lambda2, settings, "lambda2")?.unwrap_or(cfas::JAKES_LAMBDA2),
        )?,
        spacing: pick(&args.spacing, settings, "spacing")?.unwrap_or(DEFAULT_SPACING),
        thresholds,
        replicates: pick(&args.replicates, settings, "replicates")?.unwrap_or(DEFAULT_REPLICATES),
        seed: pick(&args.seed, settings, "seed")?.unwrap_or(DEFAULT_SEED),
        cap: pick(&args.cap, settings, "cap")?.unwrap_or(cfas::montecarlo::DEFAULT_POINT_CAP),
        clamp_tol: pick(&args.clamp_tol, settings, "clamp-tol")?
            .unwrap_or(cfas::montecarlo::DEFAULT_CLAMP_TOL),
        output: pick_path(&args.output, settings, "output"),
    };
    let workers = pick(&args.workers, settings, "workers")?;
    Ok((params, workers))
}

fn resolve_reproduce(
    args: &ReproduceArgs,
    settings: &Settings,
) -> Result<(ReproduceParams, Option<usize>), CliError> {
    let figure = match pick_string(&args.figure, settings, "figure").as_deref() {
        Some("fig2") => Figure::Fig2,
        Some("fig3") => Figure::Fig3,
        Some(other) => {
            return Err(CliError::Usage(format!(
                "figure must be fig2 or fig3, got {other:?}"
            )))
        }
        None => return Err(CliError::Usage("reproduce needs --figure".into())),
    };
    let outdir = pick_path(&args.outdir, settings, "outdir")
        .ok_or_else(|| CliError::Usage("reproduce needs --outdir".into()))?;
    let params = ReproduceParams {
        figure,
        outdir,
        replicates: pick(&args.replicates, settings, "replicates")?.unwrap_or(DEFAULT_REPLICATES),
        seed: pick(&args.seed, settings, "seed")?.unwrap_or(DEFAULT_SEED),
    };
    let workers = pick(&args.workers, settings, "workers")?;
    Ok((params, workers))
}

//! Command-line surface: argument parsing and dispatch.

use std::io::Write;
use std::path::{Path, PathBuf};

use anyhow::{bail, Context};
use clap::{Parser, Subcommand, ValueEnum};

use talbot_core::fresnel::{detuning_curve, pattern_samples};
use talbot_core::grating::{reduce_even, GratingConfig};
use talbot_core::stats::Model;

use crate::emit;
use crate::parallel;

/// Grating period used for wavelength read-outs, in metres.
const DEFAULT_PERIOD: f64 = 0.01;
/// Screen distance used for wavelength read-outs, in metres.
const DEFAULT_DISTANCE: f64 = 10.0;

#[derive(Debug, Parser)]
#[command(
    name = "talbot",
    version,
    about = "Factor odd integers by the spike uniformity of a simulated N-slit interferometer"
)]
pub struct Cli {
    #[command(subcommand)]
    pub command: Command,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum ModelArg {
    /// Point slits; divisor orders give exact zeros.
    Delta,
    /// Finite slits; requires a small fill ratio for detection.
    Fresnel,
}

#[derive(Debug, Subcommand)]
pub enum Command {
    /// Sample the diffraction pattern over a screen window (CSV: chi,intensity)
    Pattern {
        /// Slit count (odd)
        #[arg(long = "N")]
        slit_count: u64,
        /// Resonance order (odd)
        #[arg(long = "n")]
        order: u64,
        /// Fill ratio s/a; 0 means point slits
        #[arg(long, default_value_t = 0.0)]
        fill: f64,
        /// Screen window in period units, as lo:hi
        #[arg(long, default_value = "-8:8", allow_hyphen_values = true)]
        window: String,
        /// Samples per period
        #[arg(long = "spp", default_value_t = 201)]
        samples_per_period: u32,
        /// Output path (stdout if omitted)
        #[arg(long)]
        out: Option<PathBuf>,
    },
    /// Scan all odd orders in [3, N-2] and report sigma at each (CSV: n,sigma)
    Scan {
        #[arg(long = "N")]
        slit_count: u64,
        #[arg(long, value_enum, default_value_t = ModelArg::Delta)]
        model: ModelArg,
        /// Fill ratio for the fresnel model; defaults to min(1/(2N), 1e-3)
        #[arg(long)]
        fill: Option<f64>,
        /// Worker threads; 0 picks the available parallelism
        #[arg(long, default_value_t = 0)]
        threads: usize,
        #[arg(long)]
        out: Option<PathBuf>,
    },
    /// Sweep the slit-averaged sigma over fill ratios for a divisor pair
    /// (CSV: fill,rescaled,sigma_s)
    Sweep {
        #[arg(long = "N")]
        slit_count: u64,
        #[arg(long = "n")]
        order: u64,
        /// Upper end of the fill grid
        #[arg(long, default_value_t = 0.15)]
        fill: f64,
        /// Number of nonzero grid points
        #[arg(long, default_value_t = 30)]
        steps: u32,
        #[arg(long, default_value_t = 0)]
        threads: usize,
        #[arg(long)]
        out: Option<PathBuf>,
    },
    /// Factor an integer end to end and report the divisors
    Factor {
        #[arg(long = "N")]
        input: u64,
        #[arg(long, value_enum, default_value_t = ModelArg::Delta)]
        model: ModelArg,
        /// Fill ratio for the fresnel model; defaults to min(1/(2N), 1e-3)
        #[arg(long)]
        fill: Option<f64>,
        /// Detection threshold on sigma; defaults to 1e-9 (delta) or 1e-4 (fresnel)
        #[arg(long)]
        threshold: Option<f64>,
        #[arg(long, default_value_t = 0)]
        threads: usize,
        /// Print the JSON report to stdout instead of a summary
        #[arg(long)]
        json: bool,
        /// Also write the JSON report to this path
        #[arg(long)]
        out: Option<PathBuf>,
    },
    /// Trace mean spike intensity against tuning error (CSV: delta,mean_intensity)
    Calibrate {
        #[arg(long = "N")]
        slit_count: u64,
        #[arg(long = "n")]
        order: u64,
        #[arg(long, default_value_t = 1e-3)]
        fill: f64,
        /// Half-width of the detuning grid
        #[arg(long = "detune-max", default_value_t = 1e-3)]
        detune_max: f64,
        /// Grid points (odd, so the exact resonance is sampled)
        #[arg(long, default_value_t = 101)]
        steps: u32,
        #[arg(long)]
        out: Option<PathBuf>,
    },
}

fn parse_window(text: &str) -> anyhow::Result<(f64, f64)> {
    let (lo, hi) = text
        .split_once(':')
        .with_context(|| format!("window must be lo:hi, got `{text}`"))?;
    let lo: f64 = lo.trim().parse().with_context(|| format!("bad window bound `{lo}`"))?;
    let hi: f64 = hi.trim().parse().with_context(|| format!("bad window bound `{hi}`"))?;
    Ok((lo, hi))
}

fn write_output(out: Option<&Path>, bytes: &[u8]) -> anyhow::Result<()> {
    match out {
        Some(path) => std::fs::write(path, bytes)
            .with_context(|| format!("cannot write output file `{}`", path.display())),
        None => {
            std::io::stdout()
                .write_all(bytes)
                .context("cannot write to stdout")?;
            Ok(())
        }
    }
}

/// Default detection fill for the fresnel model: small enough that the
/// divisor dips stay far below the threshold.
fn detection_fill(odd_core: u64) -> f64 {
    (0.5 / odd_core as f64).min(1e-3)
}

fn resolve_model(model: ModelArg, fill: Option<f64>, odd_core: u64) -> anyhow::Result<Model> {
    match model {
        ModelArg::Delta => {
            if let Some(f) = fill {
                if f != 0.0 {
                    bail!("--fill {f} only applies to the fresnel model");
                }
            }
            Ok(Model::Delta)
        }
        ModelArg::Fresnel => Ok(Model::Fresnel {
            fill: fill.unwrap_or_else(|| detection_fill(odd_core)),
        }),
    }
}

/// Wavelength read-out for a resonance on the reference geometry
/// (1 cm period, 10 m screen distance); informational only.
fn resonance_note(slit_count: u64, order: u64, fill: f64) -> Option<String> {
    let config =
        GratingConfig::new(slit_count, DEFAULT_PERIOD, fill * DEFAULT_PERIOD, DEFAULT_DISTANCE)
            .ok()?;
    let resonance = config.resonance(order).ok()?;
    Some(format!(
        "n = {order}: lambda_n = {:.6e} m (a = {} m, R = {} m)",
        resonance.wavelength(),
        DEFAULT_PERIOD,
        DEFAULT_DISTANCE
    ))
}

pub fn run(cli: Cli) -> anyhow::Result<()> {
    match cli.command {
        Command::Pattern { slit_count, order, fill, window, samples_per_period, out } => {
            let window = parse_window(&window)?;
            let samples =
                pattern_samples(slit_count, order, 0.0, fill, window, samples_per_period)?;
            if let Some(note) = resonance_note(slit_count, order, fill) {
                eprintln!("{note}");
            }
            let mut buf = Vec::new();
            emit::write_pattern_csv(&mut buf, &samples)?;
            write_output(out.as_deref(), &buf)
        }
        Command::Scan { slit_count, model, fill, threads, out } => {
            let model = resolve_model(model, fill, slit_count)?;
            let pool = parallel::thread_pool(threads)?;
            let curve = parallel::scan(&pool, slit_count, model)?;
            let mut buf = Vec::new();
            emit::write_scan_csv(&mut buf, &curve)?;
            write_output(out.as_deref(), &buf)
        }
        Command::Sweep { slit_count, order, fill, steps, threads, out } => {
            let pool = parallel::thread_pool(threads)?;
            let curve = parallel::slit_width_sweep(&pool, slit_count, order, fill, steps)?;
            let mut buf = Vec::new();
            emit::write_sweep_csv(&mut buf, &curve)?;
            write_output(out.as_deref(), &buf)
        }
        Command::Factor { input, model, fill, threshold, threads, json, out } => {
            let odd_core = reduce_even(input)?.odd_core();
            let model = resolve_model(model, fill, odd_core)?;
            let threshold = threshold.unwrap_or(match model {
                Model::Delta => 1e-9,
                Model::Fresnel { .. } => 1e-4,
            });
            let pool = parallel::thread_pool(threads)?;
            let report = parallel::factorize(&pool, input, threshold, model)?;
            let doc = emit::factor_report_json(&report);
            if let Some(path) = out.as_deref() {
                write_output(Some(path), doc.as_bytes())?;
            }
            if json {
                print!("{doc}");
            } else {
                let divisors: Vec<String> =
                    report.divisors().iter().map(|d| d.to_string()).collect();
                if divisors.is_empty() {
                    println!("{} has no divisors greater than 1", report.input());
                } else {
                    println!("{} = {}", report.input(), divisors.join(" x "));
                }
                println!(
                    "model: {}, threshold: {:e}, oracle agrees: {}",
                    report.model().name(),
                    report.threshold(),
                    report.oracle_agrees()
                );
            }
            if !report.oracle_agrees() {
                bail!("interferometric divisors disagree with the trial-division oracle");
            }
            Ok(())
        }
        Command::Calibrate { slit_count, order, fill, detune_max, steps, out } => {
            let curve = detuning_curve(slit_count, order, fill, detune_max, steps)?;
            let best = curve
                .iter()
                .max_by(|a, b| a.1.total_cmp(&b.1))
                .expect("detuning grid is never empty");
            if let Some(note) = resonance_note(slit_count, order, fill) {
                eprintln!("{note}");
            }
            eprintln!("mean spike intensity peaks at delta = {:e}", best.0);
            let mut buf = Vec::new();
            emit::write_detuning_csv(&mut buf, &curve)?;
            write_output(out.as_deref(), &buf)
        }
    }
}

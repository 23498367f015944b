//! Command-line front end.
//!
//! Exit codes: 0 success, 2 configuration or usage error, 3 I/O error.

use std::ffi::OsString;
use std::fs;
use std::path::{Path, PathBuf};

use clap::{Args, Parser, Subcommand, ValueEnum};
use serde::de::DeserializeOwned;
use serde_json::json;

use crate::error::Error;
use crate::estimators::{default_exclusion, multi_peak, objective, Estimator};
use crate::harness::{run_experiment, ErrorMetric, ExperimentConfig};
use crate::presets;
use crate::report::{self, write_cube_csv, write_experiment_artifacts, write_spectrum_csv};
use crate::scene::SceneConfig;
use crate::spectral::{
    check_positivity, covariances_fft, periodogram_on_grid, windowed_periodogram, Entry,
    WindowKind, WindowSpec,
};

pub const EXIT_OK: i32 = 0;
pub const EXIT_CONFIG: i32 = 2;
pub const EXIT_IO: i32 = 3;

#[derive(Debug, Parser)]
#[command(
    name = "radar-fusion",
    version,
    about = "Two-channel radar spectral fusion estimators"
)]
pub struct Cli {
    #[command(subcommand)]
    pub command: Command,
}

#[derive(Debug, Subcommand)]
pub enum Command {
    /// Synthesize a scene and dump the raw data cube as CSV.
    Synth(SceneArgs),
    /// Dump one entry of a scene's spectrum on the N-grid as CSV.
    Spectrum(SpectrumArgs),
    /// Print frequency estimates for every window and estimator of a scene.
    Estimate(EstimateArgs),
    /// Run a Monte Carlo experiment and write results.csv / summary.json.
    Montecarlo(MonteCarloArgs),
}

#[derive(Debug, Args)]
pub struct SceneArgs {
    /// Scene configuration (JSON).
    #[arg(long)]
    pub config: PathBuf,
    /// Output directory.
    #[arg(long)]
    pub out: PathBuf,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum WindowChoice {
    /// Unwindowed periodogram.
    None,
    Rectangular,
    Bartlett,
}

#[derive(Debug, Args)]
pub struct SpectrumArgs {
    #[arg(long)]
    pub config: PathBuf,
    #[arg(long)]
    pub out: PathBuf,
    #[arg(long, value_enum, default_value = "bartlett")]
    pub window: WindowChoice,
    /// Window half-widths `n1,n2,n3`; defaults to the scene's window of that kind.
    #[arg(long, value_delimiter = ',')]
    pub widths: Option<Vec<usize>>,
    /// Matrix entry: 11, 22 or 12.
    #[arg(long, default_value = "11")]
    pub entry: String,
}

#[derive(Debug, Args)]
pub struct EstimateArgs {
    #[arg(long)]
    pub config: PathBuf,
    /// Number of peaks to extract (defaults to the number of scene targets).
    #[arg(long)]
    pub targets: Option<usize>,
    /// Also write estimates.json here.
    #[arg(long)]
    pub out: Option<PathBuf>,
}

#[derive(Debug, Args)]
pub struct MonteCarloArgs {
    /// Experiment configuration (JSON). Mutually exclusive with --preset.
    #[arg(long, conflicts_with = "preset")]
    pub config: Option<PathBuf>,
    /// Built-in configuration: fig2, fig3 or fig4.
    #[arg(long)]
    pub preset: Option<String>,
    #[arg(long)]
    pub out: PathBuf,
    #[arg(long)]
    pub trials: Option<usize>,
    /// Overrides the base seed.
    #[arg(long)]
    pub seed: Option<u64>,
    /// Worker threads (0 = all cores).
    #[arg(long, default_value_t = 0)]
    pub threads: usize,
    #[arg(long, value_enum)]
    pub metric: Option<MetricChoice>,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum MetricChoice {
    Wrapped,
    Euclidean,
}

/// Error carrying the process exit code.
#[derive(Debug)]
pub struct CliError {
    pub code: i32,
    pub message: String,
}

impl CliError {
    fn config(message: impl Into<String>) -> Self {
        Self {
            code: EXIT_CONFIG,
            message: message.into(),
        }
    }
}

impl From<Error> for CliError {
    fn from(e: Error) -> Self {
        let code = match e {
            Error::Io(_) => EXIT_IO,
            _ => EXIT_CONFIG,
        };
        Self {
            code,
            message: e.to_string(),
        }
    }
}

impl From<std::io::Error> for CliError {
    fn from(e: std::io::Error) -> Self {
        Self {
            code: EXIT_IO,
            message: format!("I/O error: {e}"),
        }
    }
}

type CliResult<T> = std::result::Result<T, CliError>;

/// Parses `args` (including the program name), runs the command and returns
/// the exit code.
pub fn run<I, T>(args: I) -> i32
where
    I: IntoIterator<Item = T>,
    T: Into<OsString> + Clone,
{
    let cli = match Cli::try_parse_from(args) {
        Ok(cli) => cli,
        Err(e) => {
            let _ = e.print();
            return if e.use_stderr() { EXIT_CONFIG } else { EXIT_OK };
        }
    };
    let result = match cli.command {
        Command::Synth(a) => cmd_synth(&a),
        Command::Spectrum(a) => cmd_spectrum(&a),
        Command::Estimate(a) => cmd_estimate(&a),
        Command::Montecarlo(a) => cmd_montecarlo(&a),
    };
    match result {
        Ok(()) => EXIT_OK,
        Err(e) => {
            eprintln!("error: {}", e.message);
            e.code
        }
    }
}

/// Reads and parses a JSON file. Missing or malformed files are
/// configuration errors; serde reports the line and column.
fn load_json<T: DeserializeOwned>(path: &Path) -> CliResult<T> {
    let text = fs::read_to_string(path)
        .map_err(|e| CliError::config(format!("cannot read config {}: {e}", path.display())))?;
    serde_json::from_str(&text).map_err(|e| CliError::config(format!("{}: {e}", path.display())))
}

fn load_scene(path: &Path) -> CliResult<SceneConfig> {
    let scene: SceneConfig = load_json(path)?;
    scene.validate()?;
    Ok(scene)
}

fn parse_entry(s: &str) -> CliResult<Entry> {
    match s {
        "11" => Ok(Entry::E11),
        "22" => Ok(Entry::E22),
        "12" => Ok(Entry::E12),
        other => Err(CliError::config(format!(
            "--entry: expected 11, 22 or 12, got `{other}`"
        ))),
    }
}

pub fn cmd_synth(args: &SceneArgs) -> CliResult<()> {
    let scene = load_scene(&args.config)?;
    let (targets, cube) = scene.realize()?;
    fs::create_dir_all(&args.out)?;
    let mut buf = Vec::new();
    let provenance = json!({ "scene": scene, "resolved_targets": targets });
    write_cube_csv(&mut buf, &cube, &provenance)?;
    fs::write(args.out.join("cube.csv"), buf)?;
    Ok(())
}

pub fn cmd_spectrum(args: &SpectrumArgs) -> CliResult<()> {
    let entry = parse_entry(&args.entry)?;
    let scene = load_scene(&args.config)?;
    let widths = match args.widths.as_deref() {
        Some(&[a, b, c]) => Some([a, b, c]),
        Some(w) => {
            return Err(CliError::config(format!(
                "--widths: expected 3 values, got {}",
                w.len()
            )))
        }
        None => None,
    };
    let window = match args.window {
        WindowChoice::None => None,
        choice => {
            let kind = if choice == WindowChoice::Rectangular {
                WindowKind::Rectangular
            } else {
                WindowKind::Bartlett
            };
            let widths = widths
                .or_else(|| {
                    scene
                        .windows
                        .iter()
                        .find(|w| w.kind == kind)
                        .map(|w| w.widths)
                })
                .or_else(|| {
                    [presets::rectangular_window(), presets::bartlett_window()]
                        .into_iter()
                        .find(|w| w.kind == kind)
                        .map(|w| w.widths)
                })
                .expect("both kinds have a preset width");
            Some(WindowSpec { kind, widths })
        }
    };

    let (targets, cube) = scene.realize()?;
    let spectrum = match &window {
        None => periodogram_on_grid(&cube, scene.dims)?,
        Some(w) => windowed_periodogram(&covariances_fft(&cube), w, scene.dims)?,
    };
    let positivity = check_positivity(&spectrum);
    let window_desc = match &window {
        None => "none".to_string(),
        Some(w) => report::config_line(w),
    };
    let provenance = json!({ "scene": scene, "resolved_targets": targets, "window": window });

    fs::create_dir_all(&args.out)?;
    let mut buf = Vec::new();
    write_spectrum_csv(
        &mut buf,
        &spectrum,
        entry,
        &window_desc,
        &positivity,
        &provenance,
    )?;
    let name = format!(
        "spectrum_{}_{}.csv",
        args.window.to_possible_value().unwrap().get_name(),
        args.entry
    );
    fs::write(args.out.join(name), buf)?;
    println!(
        "positivity: min_eigenvalue={} positive={}",
        positivity.min_eigenvalue, positivity.positive
    );
    Ok(())
}

pub fn cmd_estimate(args: &EstimateArgs) -> CliResult<()> {
    let scene = load_scene(&args.config)?;
    if scene.windows.is_empty() {
        return Err(CliError::config("windows: at least one window is required"));
    }
    let (targets, cube) = scene.realize()?;
    let n = args.targets.unwrap_or(targets.len().max(1));
    if n == 0 {
        return Err(CliError::config("--targets must be >= 1"));
    }
    let cov = covariances_fft(&cube);

    println!(
        "scene seed={} dims={:?} m={} noise_std={} targets={}",
        scene.seed,
        scene.dims,
        scene.m,
        scene.noise_std,
        targets.len()
    );
    let mut rows = Vec::new();
    for w in &scene.windows {
        let spectrum = windowed_periodogram(&cov, w, scene.dims)?;
        let exclusion = default_exclusion(scene.dims, w);
        println!(
            "window {} n={:?} grid={:?} exclusion={:?}",
            w.kind.tag(),
            w.widths,
            scene.dims,
            exclusion
        );
        for e in Estimator::ALL {
            let found = multi_peak(&objective(&spectrum, e, scene.m), n, exclusion)?;
            let thetas: Vec<[f64; 3]> =
                found.peaks.iter().map(|p| p.theta_hat.as_array()).collect();
            let label = crate::harness::variant_label(w.kind, e);
            println!(
                "  {label:<4} theta_hat={thetas:?}{}",
                if found.exhausted {
                    " (grid exhausted)"
                } else {
                    ""
                }
            );
            rows.push(json!({
                "variant": label,
                "window": w,
                "estimator": e,
                "peaks": found.peaks,
                "exhausted": found.exhausted,
            }));
        }
    }
    if let Some(dir) = &args.out {
        fs::create_dir_all(dir)?;
        let doc = json!({ "scene": scene, "resolved_targets": targets, "estimates": rows });
        fs::write(
            dir.join("estimates.json"),
            serde_json::to_string_pretty(&doc).unwrap(),
        )?;
    }
    Ok(())
}

/// Loads the config or preset and applies the command-line overrides.
pub fn resolve_experiment(args: &MonteCarloArgs) -> CliResult<ExperimentConfig> {
    let mut cfg = match (&args.config, &args.preset) {
        (Some(path), None) => load_json::<ExperimentConfig>(path)?,
        (None, Some(name)) => presets::preset(name)?,
        _ => {
            return Err(CliError::config(
                "exactly one of --config or --preset is required",
            ))
        }
    };
    if let Some(t) = args.trials {
        cfg.trials = t;
    }
    if let Some(s) = args.seed {
        cfg.base_seed = s;
    }
    if let Some(m) = args.metric {
        cfg.metric = match m {
            MetricChoice::Wrapped => ErrorMetric::Wrapped,
            MetricChoice::Euclidean => ErrorMetric::Euclidean,
        };
    }
    cfg.validate()?;
    Ok(cfg)
}

pub fn cmd_montecarlo(args: &MonteCarloArgs) -> CliResult<()> {
    let cfg = resolve_experiment(args)?;
    let outcome = run_experiment(&cfg, args.threads)?;
    write_experiment_artifacts(&args.out, &cfg, &outcome)?;
    print!("{}", report::median_table(&cfg, &outcome));
    println!(
        "trials={} mean_trial_ms={:.3}",
        outcome.records.len(),
        outcome.mean_trial_micros() / 1e3
    );
    Ok(())
}

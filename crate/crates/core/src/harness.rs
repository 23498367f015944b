//! Seeded Monte Carlo comparison of the window × estimator variants.
//!
//! Every trial owns an independent ChaCha8 substream: the generator is keyed
//! with `seed_from_u64(base_seed)` and its stream id is set to the trial
//! index. Trials therefore produce the same record no matter which worker
//! runs them or in what order.

use std::f64::consts::PI;
use std::time::Instant;

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use rayon::prelude::*;
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::estimators::{objective, peak_search, Estimator};
use crate::grid::{grid_point, wrap_difference, Dims};
use crate::signal::{draw_random_scene_with, synthesize_with, FrequencyVector, TargetSpec};
use crate::spectral::{covariances_fft, windowed_periodogram, WindowKind, WindowSpec};
use crate::stats::{boxplot_summary, BoxplotSummary};

pub const EXPERIMENT_SCHEMA: &str = "radar-fusion/experiment/v1";

#[derive(Debug, Clone, Copy, Default, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum ErrorMetric {
    /// Componentwise differences wrapped into `(-π, π]` before the norm.
    #[default]
    Wrapped,
    /// Plain Euclidean norm of `θ̂ - θ`.
    Euclidean,
}

impl std::str::FromStr for ErrorMetric {
    type Err = Error;
    fn from_str(s: &str) -> Result<Self> {
        match s {
            "wrapped" => Ok(ErrorMetric::Wrapped),
            "euclidean" => Ok(ErrorMetric::Euclidean),
            other => Err(Error::Config(format!(
                "unknown metric `{other}` (wrapped|euclidean)"
            ))),
        }
    }
}

/// How the true frequency is drawn in each trial.
#[derive(Debug, Clone, Copy, Default, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum ThetaDraw {
    /// Each component uniform on `[-π, π)`.
    #[default]
    Uniform,
    /// Uniformly chosen point of the `N`-grid (exact-recovery checks).
    OnGrid,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct ExperimentConfig {
    pub schema: String,
    /// Data dims `N`; spectra are evaluated on the same grid.
    pub dims: Dims,
    pub trials: usize,
    pub amplitude: f64,
    pub noise_std: f64,
    /// Channel shift `M`.
    pub m: f64,
    pub windows: Vec<WindowSpec>,
    pub estimators: Vec<Estimator>,
    pub base_seed: u64,
    #[serde(default)]
    pub metric: ErrorMetric,
    #[serde(default)]
    pub theta_draw: ThetaDraw,
}

impl ExperimentConfig {
    pub fn validate(&self) -> Result<()> {
        let bad = |msg: String| Err(Error::Config(msg));
        if self.schema != EXPERIMENT_SCHEMA {
            return bad(format!(
                "schema: expected `{EXPERIMENT_SCHEMA}`, got `{}`",
                self.schema
            ));
        }
        if self.dims.contains(&0) {
            return bad(format!(
                "dims: every entry must be >= 1, got {:?}",
                self.dims
            ));
        }
        if self.trials == 0 {
            return bad("trials: must be >= 1".into());
        }
        if !(self.amplitude.is_finite() && self.amplitude >= 0.0) {
            return bad(format!(
                "amplitude: must be finite and >= 0, got {}",
                self.amplitude
            ));
        }
        if !(self.noise_std.is_finite() && self.noise_std >= 0.0) {
            return bad(format!(
                "noise_std: must be finite and >= 0, got {}",
                self.noise_std
            ));
        }
        if !self.m.is_finite() {
            return bad("m: must be finite".into());
        }
        if self.windows.is_empty() {
            return bad("windows: at least one window is required".into());
        }
        for (i, w) in self.windows.iter().enumerate() {
            if self.windows[..i].iter().any(|o| o.kind == w.kind) {
                return bad(format!("windows[{i}]: duplicate window kind {:?}", w.kind));
            }
        }
        if self.estimators.is_empty() {
            return bad("estimators: at least one estimator is required".into());
        }
        for (i, e) in self.estimators.iter().enumerate() {
            if self.estimators[..i].contains(e) {
                return bad(format!("estimators[{i}]: duplicate estimator {e}"));
            }
        }
        Ok(())
    }

    /// `(window, estimator)` pairs in report order.
    pub fn variants(&self) -> Vec<(WindowSpec, Estimator)> {
        self.windows
            .iter()
            .flat_map(|w| self.estimators.iter().map(move |e| (*w, *e)))
            .collect()
    }
}

/// `R-I`, `B-F`, ...
pub fn variant_label(window: WindowKind, estimator: Estimator) -> String {
    format!("{}-{}", window.tag(), estimator.tag())
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct VariantResult {
    pub window: WindowKind,
    pub estimator: Estimator,
    pub theta_hat: FrequencyVector,
    pub grid_index: [usize; 3],
    pub error: f64,
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct TrialRecord {
    pub trial: usize,
    pub theta: FrequencyVector,
    pub results: Vec<VariantResult>,
    /// Wall-clock time of the whole trial.
    pub micros: u64,
}

impl TrialRecord {
    /// Equality ignoring the wall-clock field.
    pub fn same_outcome(&self, other: &TrialRecord) -> bool {
        self.trial == other.trial && self.theta == other.theta && self.results == other.results
    }
}

pub fn error_norm(
    theta_hat: &FrequencyVector,
    theta: &FrequencyVector,
    metric: ErrorMetric,
) -> f64 {
    let (a, b) = (theta_hat.as_array(), theta.as_array());
    (0..3)
        .map(|j| {
            let d = a[j] - b[j];
            match metric {
                ErrorMetric::Wrapped => wrap_difference(d),
                ErrorMetric::Euclidean => d,
            }
        })
        .map(|d| d * d)
        .sum::<f64>()
        .sqrt()
}

pub fn trial_rng(base_seed: u64, trial: usize) -> ChaCha8Rng {
    let mut rng = ChaCha8Rng::seed_from_u64(base_seed);
    rng.set_stream(trial as u64);
    rng
}

fn draw_target(cfg: &ExperimentConfig, rng: &mut ChaCha8Rng) -> Result<TargetSpec> {
    match cfg.theta_draw {
        ThetaDraw::Uniform => Ok(draw_random_scene_with(1, cfg.amplitude, rng)?[0]),
        ThetaDraw::OnGrid => {
            let g = cfg.dims.map(|n| rng.random_range(0..n));
            let phase = rng.random_range(-PI..PI);
            TargetSpec::new(cfg.amplitude, phase, grid_point(g, &cfg.dims).into())
        }
    }
}

/// One paired trial: a single cube feeds every window and estimator.
pub fn run_trial(cfg: &ExperimentConfig, trial: usize) -> Result<TrialRecord> {
    let start = Instant::now();
    let mut rng = trial_rng(cfg.base_seed, trial);
    let target = draw_target(cfg, &mut rng)?;
    let cube = synthesize_with(&[target], cfg.dims, cfg.m, cfg.noise_std, &mut rng)?;
    let cov = covariances_fft(&cube);

    let mut results = Vec::with_capacity(cfg.windows.len() * cfg.estimators.len());
    for window in &cfg.windows {
        let spectrum = windowed_periodogram(&cov, window, cfg.dims)?;
        for &estimator in &cfg.estimators {
            let peak = peak_search(&objective(&spectrum, estimator, cfg.m));
            results.push(VariantResult {
                window: window.kind,
                estimator,
                theta_hat: peak.theta_hat,
                grid_index: peak.grid_index,
                error: error_norm(&peak.theta_hat, &target.theta(), cfg.metric),
            });
        }
    }
    Ok(TrialRecord {
        trial,
        theta: target.theta(),
        results,
        micros: start.elapsed().as_micros() as u64,
    })
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct VariantSummary {
    pub variant: String,
    pub window: WindowKind,
    pub estimator: Estimator,
    pub summary: BoxplotSummary,
}

#[derive(Debug, Clone)]
pub struct ExperimentOutcome {
    pub records: Vec<TrialRecord>,
    pub summaries: Vec<VariantSummary>,
}

impl ExperimentOutcome {
    pub fn summary(&self, window: WindowKind, estimator: Estimator) -> Option<&BoxplotSummary> {
        self.summaries
            .iter()
            .find(|s| s.window == window && s.estimator == estimator)
            .map(|s| &s.summary)
    }

    pub fn median(&self, window: WindowKind, estimator: Estimator) -> Option<f64> {
        self.summary(window, estimator).map(|s| s.median)
    }

    pub fn mean_trial_micros(&self) -> f64 {
        self.records.iter().map(|r| r.micros as f64).sum::<f64>() / self.records.len() as f64
    }
}

/// Runs every trial on `threads` workers (0 = rayon default) and aggregates
/// per-variant boxplot summaries. Records come back ordered by trial index.
pub fn run_experiment(cfg: &ExperimentConfig, threads: usize) -> Result<ExperimentOutcome> {
    cfg.validate()?;
    let pool = rayon::ThreadPoolBuilder::new()
        .num_threads(threads)
        .build()
        .map_err(|e| Error::Argument(format!("cannot build worker pool: {e}")))?;
    let records = pool.install(|| {
        (0..cfg.trials)
            .into_par_iter()
            .map(|i| run_trial(cfg, i))
            .collect::<Result<Vec<_>>>()
    })?;

    let summaries = cfg
        .variants()
        .into_iter()
        .enumerate()
        .map(|(slot, (window, estimator))| {
            let errors: Vec<f64> = records.iter().map(|r| r.results[slot].error).collect();
            Ok(VariantSummary {
                variant: variant_label(window.kind, estimator),
                window: window.kind,
                estimator,
                summary: boxplot_summary(&errors)?,
            })
        })
        .collect::<Result<Vec<_>>>()?;
    Ok(ExperimentOutcome { records, summaries })
}

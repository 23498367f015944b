//! Named experiment configurations for the three published grid sizes.

use crate::error::{Error, Result};
use crate::estimators::Estimator;
use crate::harness::{ErrorMetric, ExperimentConfig, ThetaDraw, EXPERIMENT_SCHEMA};
use crate::spectral::WindowSpec;

pub const NAMES: [&str; 3] = ["fig2", "fig3", "fig4"];

pub const PRESET_SEED: u64 = 2019;

pub fn rectangular_window() -> WindowSpec {
    WindowSpec::rectangular([8, 8, 2])
}

pub fn bartlett_window() -> WindowSpec {
    WindowSpec::bartlett([12, 12, 3])
}

/// 1000 trials, `a = 1`, `σ̃ = 20`, `M = 20`, both windows, all estimators.
pub fn preset(name: &str) -> Result<ExperimentConfig> {
    let dims = match name {
        "fig2" => [40, 40, 7],
        "fig3" => [60, 60, 4],
        "fig4" => [70, 70, 3],
        other => {
            return Err(Error::Config(format!(
                "unknown preset `{other}` (expected one of {})",
                NAMES.join(", ")
            )))
        }
    };
    Ok(ExperimentConfig {
        schema: EXPERIMENT_SCHEMA.into(),
        dims,
        trials: 1000,
        amplitude: 1.0,
        noise_std: 20.0,
        m: 20.0,
        windows: vec![rectangular_window(), bartlett_window()],
        estimators: Estimator::ALL.to_vec(),
        base_seed: PRESET_SEED,
        metric: ErrorMetric::Wrapped,
        theta_draw: ThetaDraw::Uniform,
    })
}

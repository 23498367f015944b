//! Single-scene configuration used by the `synth`, `spectrum` and `estimate`
//! commands.

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::grid::Dims;
use crate::presets::{bartlett_window, rectangular_window};
use crate::signal::{draw_random_scene_with, seeded_rng, synthesize_with, DataCube, TargetSpec};
use crate::spectral::WindowSpec;

pub const SCENE_SCHEMA: &str = "radar-fusion/scene/v1";

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct RandomTargets {
    pub count: usize,
    pub amplitude: f64,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct SceneConfig {
    pub schema: String,
    pub dims: Dims,
    pub m: f64,
    pub noise_std: f64,
    pub seed: u64,
    #[serde(default)]
    pub targets: Vec<TargetSpec>,
    /// Extra targets drawn uniformly from the scene seed.
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub random_targets: Option<RandomTargets>,
    #[serde(default = "default_windows")]
    pub windows: Vec<WindowSpec>,
}

fn default_windows() -> Vec<WindowSpec> {
    vec![rectangular_window(), bartlett_window()]
}

impl SceneConfig {
    pub fn validate(&self) -> Result<()> {
        let bad = |msg: String| Err(Error::Config(msg));
        if self.schema != SCENE_SCHEMA {
            return bad(format!(
                "schema: expected `{SCENE_SCHEMA}`, got `{}`",
                self.schema
            ));
        }
        if self.dims.contains(&0) {
            return bad(format!(
                "dims: every entry must be >= 1, got {:?}",
                self.dims
            ));
        }
        if !self.m.is_finite() {
            return bad("m: must be finite".into());
        }
        if !(self.noise_std.is_finite() && self.noise_std >= 0.0) {
            return bad(format!(
                "noise_std: must be finite and >= 0, got {}",
                self.noise_std
            ));
        }
        if let Some(r) = &self.random_targets {
            if r.count == 0 {
                return bad("random_targets.count: must be >= 1".into());
            }
            if !(r.amplitude.is_finite() && r.amplitude >= 0.0) {
                return bad(format!(
                    "random_targets.amplitude: must be >= 0, got {}",
                    r.amplitude
                ));
            }
        }
        Ok(())
    }

    /// Resolves random targets and synthesizes the cube. Random targets are
    /// drawn first from the scene seed, then the noise from the same stream.
    pub fn realize(&self) -> Result<(Vec<TargetSpec>, DataCube)> {
        self.validate()?;
        let mut rng = seeded_rng(self.seed);
        let mut targets = self.targets.clone();
        if let Some(r) = &self.random_targets {
            targets.extend(draw_random_scene_with(r.count, r.amplitude, &mut rng)?);
        }
        let cube = synthesize_with(&targets, self.dims, self.m, self.noise_std, &mut rng)?;
        Ok((targets, cube))
    }
}

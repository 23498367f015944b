//! Two-channel ULA measurement model.
//!
//! Each channel observes the same superposition of 3-D complex sinusoids; the
//! second ULA sits `M` antenna spacings further along the array axis, which in
//! the far field only adds the phase `M·θ₃` per target. Frequencies live on
//! the torus `[-π, π)³` and map to range, radial velocity and azimuth through
//! three hardware constants.

use std::f64::consts::{FRAC_PI_2, PI};

use num_complex::Complex64;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use rand_distr::StandardNormal;
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::grid::{indices, linear, volume, wrap_angle, Dims};

/// Hardware constants linking target parameters to frequencies.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
#[serde(try_from = "RawConstants")]
pub struct RadarConstants {
    c1: f64,
    c2: f64,
    c3: f64,
    delta_s: f64,
    d: f64,
}

#[derive(Deserialize)]
struct RawConstants {
    c1: f64,
    c2: f64,
    c3: f64,
    delta_s: f64,
    d: f64,
}

impl TryFrom<RawConstants> for RadarConstants {
    type Error = Error;
    fn try_from(r: RawConstants) -> Result<Self> {
        Self::new(r.c1, r.c2, r.c3, r.delta_s, r.d)
    }
}

impl RadarConstants {
    /// `c1` [rad/m], `c2` [rad/(m/s)], `c3` [rad], antenna spacing and
    /// inter-ULA distance [m]. All must be finite and strictly positive.
    pub fn new(c1: f64, c2: f64, c3: f64, delta_s: f64, d: f64) -> Result<Self> {
        for (name, v) in [
            ("c1", c1),
            ("c2", c2),
            ("c3", c3),
            ("delta_s", delta_s),
            ("d", d),
        ] {
            if !(v.is_finite() && v > 0.0) {
                return Err(Error::Domain(format!(
                    "{name} must be finite and > 0, got {v}"
                )));
            }
        }
        Ok(Self {
            c1,
            c2,
            c3,
            delta_s,
            d,
        })
    }

    /// Constants with unit inter-ULA geometry (`M = 1`); handy when only the
    /// frequency/parameter map matters.
    pub fn scaling(c1: f64, c2: f64, c3: f64) -> Result<Self> {
        Self::new(c1, c2, c3, 1.0, 1.0)
    }

    pub fn c1(&self) -> f64 {
        self.c1
    }
    pub fn c2(&self) -> f64 {
        self.c2
    }
    pub fn c3(&self) -> f64 {
        self.c3
    }

    pub fn r_max(&self) -> f64 {
        2.0 * PI / self.c1
    }

    pub fn v_max(&self) -> f64 {
        PI / self.c2
    }

    /// Channel shift `M = d / Δs`.
    pub fn shift(&self) -> f64 {
        self.d / self.delta_s
    }

    /// `M` as an integer when it is one exactly.
    pub fn integral_shift(&self) -> Option<i64> {
        let m = self.shift();
        (m.fract() == 0.0 && m.abs() < i64::MAX as f64).then_some(m as i64)
    }
}

/// Range [m], radial velocity [m/s] and azimuth [rad] of one target.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct TargetParams {
    pub r: f64,
    pub v: f64,
    pub alpha: f64,
}

/// Normalized angular frequencies, canonicalized to `[-π, π)`.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
#[serde(from = "[f64; 3]", into = "[f64; 3]")]
pub struct FrequencyVector([f64; 3]);

impl FrequencyVector {
    pub fn new(theta1: f64, theta2: f64, theta3: f64) -> Self {
        Self([wrap_angle(theta1), wrap_angle(theta2), wrap_angle(theta3)])
    }

    pub fn as_array(&self) -> [f64; 3] {
        self.0
    }

    pub fn theta1(&self) -> f64 {
        self.0[0]
    }
    pub fn theta2(&self) -> f64 {
        self.0[1]
    }
    pub fn theta3(&self) -> f64 {
        self.0[2]
    }
}

impl From<[f64; 3]> for FrequencyVector {
    fn from(t: [f64; 3]) -> Self {
        Self::new(t[0], t[1], t[2])
    }
}

impl From<FrequencyVector> for [f64; 3] {
    fn from(f: FrequencyVector) -> Self {
        f.0
    }
}

/// One sinusoid: real amplitude, initial phase and frequency.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
#[serde(try_from = "RawTarget")]
pub struct TargetSpec {
    amplitude: f64,
    phase: f64,
    theta: FrequencyVector,
}

#[derive(Deserialize)]
struct RawTarget {
    amplitude: f64,
    #[serde(default)]
    phase: f64,
    theta: FrequencyVector,
}

impl TryFrom<RawTarget> for TargetSpec {
    type Error = Error;
    fn try_from(r: RawTarget) -> Result<Self> {
        Self::new(r.amplitude, r.phase, r.theta)
    }
}

impl TargetSpec {
    /// The phase is wrapped into `[-π, π)`; the amplitude must be `>= 0`.
    pub fn new(amplitude: f64, phase: f64, theta: FrequencyVector) -> Result<Self> {
        if !(amplitude.is_finite() && amplitude >= 0.0) {
            return Err(Error::Domain(format!(
                "amplitude must be >= 0, got {amplitude}"
            )));
        }
        if !phase.is_finite() {
            return Err(Error::Domain("phase must be finite".into()));
        }
        Ok(Self {
            amplitude,
            phase: wrap_angle(phase),
            theta,
        })
    }

    pub fn amplitude(&self) -> f64 {
        self.amplitude
    }
    pub fn phase(&self) -> f64 {
        self.phase
    }
    pub fn theta(&self) -> FrequencyVector {
        self.theta
    }
}

/// Complex measurements of both channels over `t ∈ [0, N)³`, row-major.
#[derive(Debug, Clone, PartialEq)]
pub struct DataCube {
    dims: Dims,
    channels: [Vec<Complex64>; 2],
}

impl DataCube {
    pub fn new(dims: Dims, channel1: Vec<Complex64>, channel2: Vec<Complex64>) -> Result<Self> {
        if dims.contains(&0) {
            return Err(Error::Size(format!("cube dims must be >= 1, got {dims:?}")));
        }
        let n = volume(&dims);
        if channel1.len() != n || channel2.len() != n {
            return Err(Error::Size(format!(
                "expected {n} samples per channel, got {} and {}",
                channel1.len(),
                channel2.len()
            )));
        }
        Ok(Self {
            dims,
            channels: [channel1, channel2],
        })
    }

    pub fn dims(&self) -> Dims {
        self.dims
    }

    pub fn len(&self) -> usize {
        volume(&self.dims)
    }

    pub fn is_empty(&self) -> bool {
        self.len() == 0
    }

    /// `channel` is 0 or 1.
    pub fn channel(&self, channel: usize) -> &[Complex64] {
        &self.channels[channel]
    }

    pub fn sample(&self, t: [usize; 3]) -> [Complex64; 2] {
        let i = linear(t, &self.dims);
        [self.channels[0][i], self.channels[1][i]]
    }
}

/// Maps target parameters to frequencies.
pub fn params_to_freq(p: &TargetParams, c: &RadarConstants) -> Result<FrequencyVector> {
    if !(0.0..=c.r_max()).contains(&p.r) {
        return Err(Error::Domain(format!(
            "range r={} outside [0, r_max={}]",
            p.r,
            c.r_max()
        )));
    }
    if !(-c.v_max()..=c.v_max()).contains(&p.v) {
        return Err(Error::Domain(format!(
            "velocity v={} outside [-v_max, v_max] with v_max={}",
            p.v,
            c.v_max()
        )));
    }
    if !(-FRAC_PI_2..=FRAC_PI_2).contains(&p.alpha) {
        return Err(Error::Domain(format!(
            "azimuth alpha={} outside [-π/2, π/2]",
            p.alpha
        )));
    }
    Ok(FrequencyVector::new(
        c.c1 * p.r - PI,
        c.c2 * p.v,
        c.c3 * p.alpha.sin(),
    ))
}

/// Inverse of [`params_to_freq`]. The range comes back in `[0, r_max)`.
pub fn freq_to_params(theta: &FrequencyVector, c: &RadarConstants) -> Result<TargetParams> {
    let s = theta.theta3() / c.c3;
    if !(-1.0..=1.0).contains(&s) {
        return Err(Error::Domain(format!(
            "|theta3|={} exceeds c3={}, azimuth unrecoverable",
            theta.theta3().abs(),
            c.c3
        )));
    }
    Ok(TargetParams {
        r: (theta.theta1() + PI) / c.c1,
        v: theta.theta2() / c.c2,
        alpha: s.asin(),
    })
}

/// Deterministic generator for a seed.
pub fn seeded_rng(seed: u64) -> ChaCha8Rng {
    ChaCha8Rng::seed_from_u64(seed)
}

/// Synthesizes both channels from `targets` with noise drawn from `seed`.
pub fn synthesize(
    targets: &[TargetSpec],
    dims: Dims,
    m: f64,
    noise_std: f64,
    seed: u64,
) -> Result<DataCube> {
    synthesize_with(targets, dims, m, noise_std, &mut seeded_rng(seed))
}

/// Like [`synthesize`] but draws noise from the supplied generator.
///
/// Noise is circular complex Gaussian with `E|w|² = noise_std²`: real and
/// imaginary parts are independent `N(0, noise_std²/2)`. Channel 1 noise is
/// drawn for every sample first, then channel 2.
pub fn synthesize_with<R: Rng + ?Sized>(
    targets: &[TargetSpec],
    dims: Dims,
    m: f64,
    noise_std: f64,
    rng: &mut R,
) -> Result<DataCube> {
    if dims.contains(&0) {
        return Err(Error::Size(format!("cube dims must be >= 1, got {dims:?}")));
    }
    if !(noise_std.is_finite() && noise_std >= 0.0) {
        return Err(Error::Argument(format!(
            "noise_std must be >= 0, got {noise_std}"
        )));
    }
    if !m.is_finite() {
        return Err(Error::Argument("channel shift M must be finite".into()));
    }

    let n = volume(&dims);
    let shifts: Vec<Complex64> = targets
        .iter()
        .map(|tg| Complex64::from_polar(1.0, m * tg.theta.theta3()))
        .collect();
    let mut ch1 = Vec::with_capacity(n);
    let mut ch2 = Vec::with_capacity(n);
    for t in indices(dims) {
        let mut y1 = Complex64::default();
        let mut y2 = Complex64::default();
        for (tg, shift) in targets.iter().zip(&shifts) {
            let th = tg.theta.as_array();
            let ph = th[0] * t[0] as f64 + th[1] * t[1] as f64 + th[2] * t[2] as f64 + tg.phase;
            let s = Complex64::from_polar(tg.amplitude, ph);
            y1 += s;
            y2 += s * shift;
        }
        ch1.push(y1);
        ch2.push(y2);
    }

    let scale = noise_std / 2f64.sqrt();
    for ch in [&mut ch1, &mut ch2] {
        for y in ch.iter_mut() {
            let re: f64 = rng.sample(StandardNormal);
            let im: f64 = rng.sample(StandardNormal);
            *y += Complex64::new(scale * re, scale * im);
        }
    }
    DataCube::new(dims, ch1, ch2)
}

/// Draws `n_targets` independent targets with uniform frequencies and phases.
pub fn draw_random_scene(n_targets: usize, amplitude: f64, seed: u64) -> Result<Vec<TargetSpec>> {
    draw_random_scene_with(n_targets, amplitude, &mut seeded_rng(seed))
}

pub fn draw_random_scene_with<R: Rng + ?Sized>(
    n_targets: usize,
    amplitude: f64,
    rng: &mut R,
) -> Result<Vec<TargetSpec>> {
    if n_targets == 0 {
        return Err(Error::Argument("n_targets must be >= 1".into()));
    }
    (0..n_targets)
        .map(|_| {
            let theta = FrequencyVector::new(
                rng.random_range(-PI..PI),
                rng.random_range(-PI..PI),
                rng.random_range(-PI..PI),
            );
            let phase = rng.random_range(-PI..PI);
            TargetSpec::new(amplitude, phase, theta)
        })
        .collect()
}

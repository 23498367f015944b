//! Peak-search estimators that fuse the two-channel spectrum.
//!
//! * `I` uses only the auto-spectra: `|Φ₁₁|² + |Φ₂₂|²`.
//! * `S` adds the cross-spectrum after undoing the channel phase shift at
//!   the evaluated frequency: `|Φ₁₁|² + 2[Re(e^{iMω₃}Φ₁₂)]² + |Φ₂₂|²`.
//! * `F` uses the squared Frobenius norm `|Φ₁₁|² + |Φ₂₂|² + 2|Φ₁₂|²`.

use std::fmt;
use std::str::FromStr;

use num_complex::Complex64;
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::grid::{grid_point, indices, linear, unravel, volume, Dims};
use crate::signal::FrequencyVector;
use crate::spectral::{SpectrumField, WindowSpec};

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
pub enum Estimator {
    /// Independent channels.
    I,
    /// Phase-shifted cross term.
    S,
    /// Frobenius norm.
    F,
}

impl Estimator {
    pub const ALL: [Estimator; 3] = [Estimator::I, Estimator::S, Estimator::F];

    pub fn tag(&self) -> &'static str {
        match self {
            Estimator::I => "I",
            Estimator::S => "S",
            Estimator::F => "F",
        }
    }
}

impl fmt::Display for Estimator {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.tag())
    }
}

impl FromStr for Estimator {
    type Err = Error;
    fn from_str(s: &str) -> Result<Self> {
        match s {
            "I" | "i" | "independent" => Ok(Estimator::I),
            "S" | "s" | "shifted" => Ok(Estimator::S),
            "F" | "f" | "frobenius" => Ok(Estimator::F),
            other => Err(Error::Argument(format!("unknown estimator `{other}`"))),
        }
    }
}

/// Real objective values over a spectrum grid.
#[derive(Debug, Clone, PartialEq)]
pub struct ObjectiveField {
    grid: Dims,
    values: Vec<f64>,
    estimator: Estimator,
}

impl ObjectiveField {
    pub fn new(grid: Dims, values: Vec<f64>, estimator: Estimator) -> Result<Self> {
        if values.len() != volume(&grid) || values.is_empty() {
            return Err(Error::Size(format!(
                "objective needs {} values for grid {grid:?}, got {}",
                volume(&grid),
                values.len()
            )));
        }
        Ok(Self {
            grid,
            values,
            estimator,
        })
    }

    pub fn grid(&self) -> Dims {
        self.grid
    }

    pub fn values(&self) -> &[f64] {
        &self.values
    }

    pub fn estimator(&self) -> Estimator {
        self.estimator
    }

    pub fn get(&self, g: [usize; 3]) -> f64 {
        self.values[linear(g, &self.grid)]
    }
}

/// A grid peak and the frequency it stands for.
#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct PeakEstimate {
    pub theta_hat: FrequencyVector,
    pub grid_index: [usize; 3],
    pub value: f64,
    pub estimator: Estimator,
}

fn build(
    spectrum: &SpectrumField,
    estimator: Estimator,
    f: impl Fn([usize; 3], &crate::Mat2) -> f64,
) -> ObjectiveField {
    let values = spectrum
        .indices()
        .zip(spectrum.values())
        .map(|(g, m)| f(g, m))
        .collect();
    ObjectiveField {
        grid: spectrum.grid(),
        values,
        estimator,
    }
}

pub fn objective_independent(spectrum: &SpectrumField) -> ObjectiveField {
    build(spectrum, Estimator::I, |_, m| {
        m.m11.norm_sqr() + m.m22.norm_sqr()
    })
}

pub fn objective_shifted(spectrum: &SpectrumField, shift: f64) -> ObjectiveField {
    let grid = spectrum.grid();
    build(spectrum, Estimator::S, |g, m| {
        let w3 = grid_point(g, &grid)[2];
        let cross = (Complex64::from_polar(1.0, shift * w3) * m.m12).re;
        m.m11.norm_sqr() + 2.0 * cross * cross + m.m22.norm_sqr()
    })
}

pub fn objective_frobenius(spectrum: &SpectrumField) -> ObjectiveField {
    build(spectrum, Estimator::F, |_, m| {
        m.m11.norm_sqr() + m.m22.norm_sqr() + 2.0 * m.m12.norm_sqr()
    })
}

/// Dispatches on the estimator tag; `shift` is only used by `S`.
pub fn objective(spectrum: &SpectrumField, estimator: Estimator, shift: f64) -> ObjectiveField {
    match estimator {
        Estimator::I => objective_independent(spectrum),
        Estimator::S => objective_shifted(spectrum, shift),
        Estimator::F => objective_frobenius(spectrum),
    }
}

/// First index holding the largest value; NaN never wins.
fn argmax(values: &[f64]) -> Option<usize> {
    let mut best: Option<(usize, f64)> = None;
    for (i, &v) in values.iter().enumerate() {
        if v.is_nan() {
            continue;
        }
        match best {
            Some((_, b)) if v <= b => {}
            _ => best = Some((i, v)),
        }
    }
    best.map(|(i, _)| i)
}

fn estimate_at(obj: &ObjectiveField, i: usize, value: f64) -> PeakEstimate {
    let g = unravel(i, &obj.grid);
    PeakEstimate {
        theta_hat: FrequencyVector::from(grid_point(g, &obj.grid)),
        grid_index: g,
        value,
        estimator: obj.estimator,
    }
}

/// Global argmax; ties go to the lexicographically smallest grid index.
pub fn peak_search(obj: &ObjectiveField) -> PeakEstimate {
    let i = argmax(&obj.values).unwrap_or(0);
    estimate_at(obj, i, obj.values[i])
}

/// Result of a greedy multi-peak search.
#[derive(Debug, Clone, PartialEq)]
pub struct MultiPeak {
    pub peaks: Vec<PeakEstimate>,
    /// Set when the grid ran out before `n` peaks were found.
    pub exhausted: bool,
}

/// Main-lobe half-width in grid cells for a window: `ceil(G_j / (2(n_j+1)))`.
pub fn default_exclusion(grid: Dims, window: &WindowSpec) -> [usize; 3] {
    [0, 1, 2].map(|j| grid[j].div_ceil(2 * (window.widths[j] + 1)).max(1))
}

/// Greedy search for `n` peaks, suppressing a toroidal box of the given
/// per-axis radius around each accepted peak.
pub fn multi_peak(obj: &ObjectiveField, n: usize, exclusion: [usize; 3]) -> Result<MultiPeak> {
    if n == 0 {
        return Err(Error::Argument("number of peaks must be >= 1".into()));
    }
    if exclusion.contains(&0) {
        return Err(Error::Argument(format!(
            "exclusion radii must be >= 1, got {exclusion:?}"
        )));
    }
    let grid = obj.grid;
    let mut work = obj.values.clone();
    let mut peaks = Vec::with_capacity(n);
    while peaks.len() < n {
        let Some(i) = argmax(&work).filter(|&i| work[i] > f64::NEG_INFINITY) else {
            break;
        };
        peaks.push(estimate_at(obj, i, obj.values[i]));
        let center = unravel(i, &grid);
        let radius = [0, 1, 2].map(|j| exclusion[j].min(grid[j] / 2));
        let box_dims = radius.map(|r| 2 * r + 1);
        for off in indices(box_dims) {
            let idx = [0, 1, 2].map(|j| {
                let g = grid[j] as isize;
                (center[j] as isize + off[j] as isize - radius[j] as isize).rem_euclid(g) as usize
            });
            work[linear(idx, &grid)] = f64::NEG_INFINITY;
        }
    }
    Ok(MultiPeak {
        exhausted: peaks.len() < n,
        peaks,
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::mat2::Mat2;
    use std::f64::consts::PI;

    fn c(re: f64, im: f64) -> Complex64 {
        Complex64::new(re, im)
    }

    fn field(grid: Dims, m: Mat2) -> SpectrumField {
        SpectrumField::constant(grid, m).unwrap()
    }

    #[test]
    fn identity_gives_two() {
        let s = field([2, 3, 2], Mat2::identity());
        assert!(objective_independent(&s).values().iter().all(|&v| v == 2.0));
        assert!(objective_frobenius(&s).values().iter().all(|&v| v == 2.0));
    }

    #[test]
    fn independent_ignores_cross_term() {
        let m = Mat2 {
            m11: c(3.0, 0.0),
            m22: c(4.0, 0.0),
            m12: c(7.0, -2.0),
            m21: c(7.0, 2.0),
        };
        assert_eq!(
            objective_independent(&field([1, 1, 1], m)).values(),
            &[25.0]
        );
    }

    #[test]
    fn frobenius_is_phase_invariant() {
        for psi in [0.0, 0.3, 2.0, -3.0] {
            let m = Mat2 {
                m11: c(1.0, 0.0),
                m22: c(1.0, 0.0),
                m12: Complex64::from_polar(1.0, psi),
                m21: Complex64::from_polar(1.0, -psi),
            };
            assert!((objective_frobenius(&field([1, 1, 1], m)).values()[0] - 4.0).abs() < 1e-14);
        }
    }

    #[test]
    fn shifted_examples() {
        let s = field([3, 3, 4], Mat2::diag(2.0, 0.5));
        assert_eq!(
            objective_shifted(&s, 20.0).values(),
            objective_independent(&s).values()
        );

        // Full cancellation at ω₃ = θ₃ with Φ₁₂ = a² e^{-iMθ₃}.
        let (a, m_shift) = (1.5_f64, 20.0);
        let grid = [1, 1, 8];
        let g3 = 5;
        let theta3 = grid_point([0, 0, g3], &grid)[2];
        let cross = Complex64::from_polar(a * a, -m_shift * theta3);
        let s = field(
            grid,
            Mat2 {
                m12: cross,
                m21: cross.conj(),
                ..Mat2::ZERO
            },
        );
        let v = objective_shifted(&s, m_shift).get([0, 0, g3]);
        assert!((v - 2.0 * a.powi(4)).abs() < 1e-12);

        let mixed = Mat2 {
            m12: c(0.6, 0.8),
            m21: c(0.6, -0.8),
            ..Mat2::ZERO
        };
        let obj = objective_shifted(&field([2, 2, 3], mixed), 0.0);
        assert!(obj.values().iter().all(|&v| (v - 2.0 * 0.36).abs() < 1e-14));
    }

    #[test]
    fn peak_search_tie_break_and_single_max() {
        let flat = ObjectiveField::new([3, 2, 2], vec![1.0; 12], Estimator::F).unwrap();
        let p = peak_search(&flat);
        assert_eq!(p.grid_index, [0, 0, 0]);
        assert_eq!(p.theta_hat.as_array(), [-PI, -PI, -PI]);

        let mut v = vec![0.0; 12];
        v[7] = 5.0;
        let obj = ObjectiveField::new([3, 2, 2], v, Estimator::I).unwrap();
        let p = peak_search(&obj);
        assert_eq!(p.grid_index, [1, 1, 1]);
        assert_eq!(p.theta_hat.as_array(), grid_point([1, 1, 1], &[3, 2, 2]));
        assert_eq!(p.value, 5.0);
    }

    #[test]
    fn multi_peak_single_matches_peak_search() {
        let v: Vec<f64> = (0..60).map(|i| ((i * 37) % 23) as f64).collect();
        let obj = ObjectiveField::new([5, 4, 3], v, Estimator::S).unwrap();
        let mp = multi_peak(&obj, 1, [1, 1, 1]).unwrap();
        assert_eq!(mp.peaks, vec![peak_search(&obj)]);
        assert!(!mp.exhausted);
    }

    #[test]
    fn multi_peak_reports_exhaustion() {
        let obj = ObjectiveField::new([3, 3, 3], vec![1.0; 27], Estimator::I).unwrap();
        let mp = multi_peak(&obj, 3, [1, 1, 1]).unwrap();
        assert_eq!(mp.peaks.len(), 1);
        assert!(mp.exhausted);
        assert!(multi_peak(&obj, 0, [1, 1, 1]).is_err());
        assert!(multi_peak(&obj, 1, [0, 1, 1]).is_err());
    }

    #[test]
    fn multi_peak_wraps_around_the_torus() {
        let grid = [8, 1, 1];
        let mut v = vec![0.0; 8];
        v[0] = 10.0;
        v[7] = 9.0; // neighbour of index 0 across the seam
        v[4] = 5.0;
        let obj = ObjectiveField::new(grid, v, Estimator::F).unwrap();
        let mp = multi_peak(&obj, 2, [1, 1, 1]).unwrap();
        let got: Vec<usize> = mp.peaks.iter().map(|p| p.grid_index[0]).collect();
        assert_eq!(got, vec![0, 4]);
    }

    #[test]
    fn default_exclusion_matches_main_lobe() {
        let w = WindowSpec::bartlett([12, 12, 3]);
        assert_eq!(default_exclusion([40, 40, 7], &w), [2, 2, 1]);
        let r = WindowSpec::rectangular([8, 8, 2]);
        assert_eq!(default_exclusion([40, 40, 7], &r), [3, 3, 2]);
    }
}

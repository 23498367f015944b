//! Biased covariance fields and (windowed) matrix periodograms on 3-D grids.
//!
//! All public spectra live on the centered grid `ω_j = -π + 2πg_j/G_j`. A
//! sequence `x_m` is transformed onto that grid by modulating with
//! `(-1)^{m1+m2+m3}` before a standard DFT, which handles odd grid sizes
//! (where the centered points fall between native FFT bins) exactly.
//! Sequences longer than the grid are folded modulo `G` after modulation, so
//! the result is the exact Fourier sum at every grid point.

use std::f64::consts::TAU;

use num_complex::Complex64;
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::fft::Fft3;
use crate::grid::{grid_point, indices, lags, linear, volume, Dims, Lag};
use crate::mat2::Mat2;
use crate::signal::DataCube;

/// Relative tolerance used by [`check_positivity`] to absorb roundoff in
/// rank-deficient matrices.
pub const POSITIVITY_RTOL: f64 = 1e-9;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum WindowKind {
    Rectangular,
    Bartlett,
}

impl WindowKind {
    /// One-letter tag used in variant labels (`R`, `B`).
    pub fn tag(&self) -> &'static str {
        match self {
            WindowKind::Rectangular => "R",
            WindowKind::Bartlett => "B",
        }
    }
}

/// Lag window: kind and half-widths `n`, supported on `|k_j| <= n_j`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
pub struct WindowSpec {
    pub kind: WindowKind,
    pub widths: [usize; 3],
}

impl WindowSpec {
    pub fn rectangular(widths: [usize; 3]) -> Self {
        Self {
            kind: WindowKind::Rectangular,
            widths,
        }
    }

    pub fn bartlett(widths: [usize; 3]) -> Self {
        Self {
            kind: WindowKind::Bartlett,
            widths,
        }
    }

    /// `w(k)`; zero outside the support.
    pub fn weight(&self, k: Lag) -> f64 {
        let mut w = 1.0;
        for (j, &kj) in k.iter().enumerate() {
            let n = self.widths[j];
            let a = kj.unsigned_abs();
            if a > n {
                return 0.0;
            }
            if self.kind == WindowKind::Bartlett {
                w *= (n + 1 - a) as f64 / (n + 1) as f64;
            }
        }
        w
    }
}

/// Window values on the support, indexed by `k + n`.
#[derive(Debug, Clone, PartialEq)]
pub struct Window {
    widths: [usize; 3],
    values: Vec<f64>,
}

impl Window {
    pub fn widths(&self) -> [usize; 3] {
        self.widths
    }

    pub fn values(&self) -> &[f64] {
        &self.values
    }

    pub fn get(&self, k: Lag) -> Option<f64> {
        let idx = lag_slot(k, self.widths)?;
        Some(self.values[linear(idx, &span(self.widths))])
    }
}

pub fn make_window(spec: &WindowSpec) -> Window {
    Window {
        widths: spec.widths,
        values: lags(spec.widths).map(|k| spec.weight(k)).collect(),
    }
}

fn span(half: [usize; 3]) -> Dims {
    half.map(|h| 2 * h + 1)
}

fn lag_slot(k: Lag, half: [usize; 3]) -> Option<[usize; 3]> {
    let mut idx = [0; 3];
    for j in 0..3 {
        if k[j].unsigned_abs() > half[j] {
            return None;
        }
        idx[j] = (k[j] + half[j] as isize) as usize;
    }
    Some(idx)
}

/// Per-channel finite Fourier transform on a centered grid.
#[derive(Debug, Clone, PartialEq)]
pub struct FourierField {
    grid: Dims,
    channels: [Vec<Complex64>; 2],
}

impl FourierField {
    pub fn grid(&self) -> Dims {
        self.grid
    }

    pub fn channel(&self, c: usize) -> &[Complex64] {
        &self.channels[c]
    }

    pub fn at(&self, g: [usize; 3]) -> [Complex64; 2] {
        let i = linear(g, &self.grid);
        [self.channels[0][i], self.channels[1][i]]
    }
}

/// `Σ_m x_m e^{-i⟨m, ω_g⟩}` at every centered grid point; `x` has shape `seq`.
fn centered_dft(x: &[Complex64], seq: Dims, grid: Dims, fft: &Fft3) -> Vec<Complex64> {
    let mut buf = vec![Complex64::default(); volume(&grid)];
    for (i, m) in indices(seq).enumerate() {
        let v = x[i];
        if v == Complex64::default() {
            continue;
        }
        let folded = [m[0] % grid[0], m[1] % grid[1], m[2] % grid[2]];
        let slot = &mut buf[linear(folded, &grid)];
        if (m[0] + m[1] + m[2]) % 2 == 0 {
            *slot += v;
        } else {
            *slot -= v;
        }
    }
    fft.process(&mut buf);
    buf
}

fn check_grid(grid: Dims) -> Result<()> {
    if grid.contains(&0) {
        return Err(Error::Size(format!("grid dims must be >= 1, got {grid:?}")));
    }
    Ok(())
}

/// Zero-padded transform `ŷ(ω) = Σ_t y(t) e^{-i⟨t, ω⟩}` of both channels.
pub fn finite_fourier_transform(cube: &DataCube, grid: Dims) -> Result<FourierField> {
    let dims = cube.dims();
    check_grid(grid)?;
    if (0..3).any(|j| grid[j] < dims[j]) {
        return Err(Error::Size(format!(
            "grid {grid:?} smaller than data dims {dims:?}"
        )));
    }
    let fft = Fft3::forward(grid);
    let channels = [0, 1].map(|c| centered_dft(cube.channel(c), dims, grid, &fft));
    Ok(FourierField { grid, channels })
}

/// Field of 2×2 spectral matrices on a centered grid.
#[derive(Debug, Clone, PartialEq)]
pub struct SpectrumField {
    grid: Dims,
    values: Vec<Mat2>,
}

/// Selects one entry of the spectral matrix.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Entry {
    E11,
    E22,
    E12,
}

impl SpectrumField {
    pub fn new(grid: Dims, values: Vec<Mat2>) -> Result<Self> {
        check_grid(grid)?;
        if values.len() != volume(&grid) {
            return Err(Error::Size(format!(
                "expected {} spectrum values for grid {grid:?}, got {}",
                volume(&grid),
                values.len()
            )));
        }
        Ok(Self { grid, values })
    }

    /// Same value at every grid point.
    pub fn constant(grid: Dims, value: Mat2) -> Result<Self> {
        Self::new(grid, vec![value; volume(&grid)])
    }

    pub fn grid(&self) -> Dims {
        self.grid
    }

    pub fn values(&self) -> &[Mat2] {
        &self.values
    }

    pub fn get(&self, g: [usize; 3]) -> &Mat2 {
        &self.values[linear(g, &self.grid)]
    }

    pub fn frequency(&self, g: [usize; 3]) -> [f64; 3] {
        grid_point(g, &self.grid)
    }

    /// Grid multi-indices in storage order.
    pub fn indices(&self) -> impl Iterator<Item = [usize; 3]> {
        indices(self.grid)
    }

    pub fn entry(&self, e: Entry) -> Vec<Complex64> {
        self.values
            .iter()
            .map(|m| match e {
                Entry::E11 => m.m11,
                Entry::E22 => m.m22,
                Entry::E12 => m.m12,
            })
            .collect()
    }

    /// Replaces every value by its Hermitian part.
    pub fn hermitize(&mut self) {
        for v in &mut self.values {
            *v = v.hermitian_part();
        }
    }

    pub fn scaled(&self, s: f64) -> Self {
        Self {
            grid: self.grid,
            values: self.values.iter().map(|m| *m * s).collect(),
        }
    }

    /// Applies `f` to every off-diagonal pair, keeping `m21 = conj(m12)`.
    pub fn map_cross(&self, mut f: impl FnMut([usize; 3], Complex64) -> Complex64) -> Self {
        let values = self
            .indices()
            .zip(&self.values)
            .map(|(g, m)| {
                let c = f(g, m.m12);
                Mat2 {
                    m12: c,
                    m21: c.conj(),
                    ..*m
                }
            })
            .collect();
        Self {
            grid: self.grid,
            values,
        }
    }
}

/// Unwindowed periodogram `ŷ ŷ^* / |N|` on the `(2N-1)`-grid.
pub fn periodogram(cube: &DataCube) -> SpectrumField {
    let grid = cube.dims().map(|n| 2 * n - 1);
    periodogram_on_grid(cube, grid).expect("(2N-1)-grid always covers the data")
}

/// Unwindowed periodogram on an arbitrary centered grid with `G >= N`.
pub fn periodogram_on_grid(cube: &DataCube, grid: Dims) -> Result<SpectrumField> {
    let ft = finite_fourier_transform(cube, grid)?;
    let norm = 1.0 / cube.len() as f64;
    let values = (0..volume(&grid))
        .map(|i| {
            let y = [ft.channels[0][i], ft.channels[1][i]];
            Mat2::outer(y, y) * norm
        })
        .collect();
    SpectrumField::new(grid, values)
}

/// Biased sample covariances `Σ̂_k` for `|k_j| <= half_j`.
#[derive(Debug, Clone, PartialEq)]
pub struct CovarianceField {
    dims: Dims,
    half: [usize; 3],
    values: Vec<Mat2>,
}

impl CovarianceField {
    /// Data dims `N` the covariances were estimated from.
    pub fn dims(&self) -> Dims {
        self.dims
    }

    /// Largest stored `|k_j|` per axis.
    pub fn half_widths(&self) -> [usize; 3] {
        self.half
    }

    pub fn get(&self, k: Lag) -> Result<&Mat2> {
        let idx = lag_slot(k, self.half).ok_or_else(|| {
            Error::Index(format!("lag {k:?} outside stored bounds {:?}", self.half))
        })?;
        Ok(&self.values[linear(idx, &span(self.half))])
    }

    /// Stored lags with their matrices, in row-major order of `k + half`.
    pub fn iter(&self) -> impl Iterator<Item = (Lag, &Mat2)> {
        lags(self.half).zip(&self.values)
    }

    /// Copy restricted to `|k_j| <= half_j`.
    pub fn restrict(&self, half: [usize; 3]) -> Result<Self> {
        if (0..3).any(|j| half[j] > self.half[j]) {
            return Err(Error::Index(format!(
                "cannot restrict lags {:?} to wider bounds {half:?}",
                self.half
            )));
        }
        let values = lags(half)
            .map(|k| *self.get(k).expect("inside bounds"))
            .collect();
        Ok(Self {
            dims: self.dims,
            half,
            values,
        })
    }

    /// Lag value where lags beyond the data support (`|k_j| >= N_j`) are zero.
    fn lag_or_zero(&self, k: Lag) -> Result<Mat2> {
        if (0..3).any(|j| k[j].unsigned_abs() >= self.dims[j]) {
            return Ok(Mat2::ZERO);
        }
        self.get(k).copied()
    }
}

fn check_lag_bounds(dims: Dims, half: [usize; 3]) -> Result<()> {
    if (0..3).any(|j| half[j] + 1 > dims[j]) {
        return Err(Error::Index(format!(
            "lag bounds {half:?} exceed the lag set of data dims {dims:?}"
        )));
    }
    Ok(())
}

/// Reference covariance estimator by explicit summation over the overlap set.
pub fn covariances_direct(cube: &DataCube, half: [usize; 3]) -> Result<CovarianceField> {
    let dims = cube.dims();
    check_lag_bounds(dims, half)?;
    let norm = 1.0 / cube.len() as f64;
    let values = lags(half)
        .map(|k| {
            let range = |j: usize| {
                let n = dims[j] as isize;
                if k[j] >= 0 {
                    0..n - k[j]
                } else {
                    -k[j]..n
                }
            };
            let mut acc = Mat2::ZERO;
            for s0 in range(0) {
                for s1 in range(1) {
                    for s2 in range(2) {
                        let s = [s0 as usize, s1 as usize, s2 as usize];
                        let sk = [
                            (s0 + k[0]) as usize,
                            (s1 + k[1]) as usize,
                            (s2 + k[2]) as usize,
                        ];
                        acc += Mat2::outer(cube.sample(sk), cube.sample(s));
                    }
                }
            }
            acc * norm
        })
        .collect();
    Ok(CovarianceField { dims, half, values })
}

/// All covariances over `|k_j| <= N_j - 1` via FFT.
///
/// 1. zero-pad to `L = 2N - 1` and FFT each channel;
/// 2. form the periodogram at the native bins `ω = 2πm/L`;
/// 3. inverse FFT of `e^{-i⟨N-1, ω⟩} Φ̂_p(ω)`, which yields `Σ̂_{k'-(N-1)}` at index `k'`.
pub fn covariances_fft(cube: &DataCube) -> CovarianceField {
    let dims = cube.dims();
    let len = dims.map(|n| 2 * n - 1);
    let total = volume(&len);

    let forward = Fft3::forward(len);
    let spectra = [0, 1].map(|c| {
        let mut buf = vec![Complex64::default(); total];
        for (i, t) in indices(dims).enumerate() {
            buf[linear(t, &len)] = cube.channel(c)[i];
        }
        forward.process(&mut buf);
        buf
    });

    let norm = 1.0 / cube.len() as f64;
    let phase_step = [0, 1, 2].map(|j| -TAU * (dims[j] - 1) as f64 / len[j] as f64);
    let mut entries = [(); 4].map(|_| Vec::with_capacity(total));
    for (i, m) in indices(len).enumerate() {
        let arg: f64 = (0..3).map(|j| phase_step[j] * m[j] as f64).sum();
        let shift = Complex64::from_polar(norm, arg);
        let (y1, y2) = (spectra[0][i], spectra[1][i]);
        entries[0].push(y1 * y1.conj() * shift);
        entries[1].push(y1 * y2.conj() * shift);
        entries[2].push(y2 * y1.conj() * shift);
        entries[3].push(y2 * y2.conj() * shift);
    }

    let inverse = Fft3::inverse(len);
    for e in entries.iter_mut() {
        inverse.process(e);
    }
    let scale = 1.0 / total as f64;
    let values = (0..total)
        .map(|i| Mat2 {
            m11: entries[0][i] * scale,
            m12: entries[1][i] * scale,
            m21: entries[2][i] * scale,
            m22: entries[3][i] * scale,
        })
        .collect();
    CovarianceField {
        dims,
        half: dims.map(|n| n - 1),
        values,
    }
}

/// Windowed estimate `Σ_{k∈Λ} w(k) Σ̂_k e^{-i⟨k, ω⟩}` without Hermitization.
///
/// The relabeled sequence `w(k)Σ̂_k` at `m = k + n` is transformed onto the
/// grid and multiplied by `e^{i⟨n, ω⟩}`. Lags with `|k_j| >= N_j` contribute
/// zero, so windows wider than the data are allowed.
pub fn windowed_periodogram_raw(
    cov: &CovarianceField,
    spec: &WindowSpec,
    grid: Dims,
) -> Result<SpectrumField> {
    check_grid(grid)?;
    let n = spec.widths;
    let dims = cov.dims();
    for j in 0..3 {
        let needed = n[j].min(dims[j] - 1);
        if cov.half[j] < needed {
            return Err(Error::Index(format!(
                "window {n:?} needs lags up to {needed} on axis {j}, covariance field stores {:?}",
                cov.half
            )));
        }
    }

    let seq = span(n);
    let mut parts = [(); 4].map(|_| Vec::with_capacity(volume(&seq)));
    for k in lags(n) {
        let s = cov.lag_or_zero(k)? * spec.weight(k);
        parts[0].push(s.m11);
        parts[1].push(s.m12);
        parts[2].push(s.m21);
        parts[3].push(s.m22);
    }

    let fft = Fft3::forward(grid);
    let [p11, p12, p21, p22] = parts.map(|p| centered_dft(&p, seq, grid, &fft));
    let values = indices(grid)
        .enumerate()
        .map(|(i, g)| {
            let w = grid_point(g, &grid);
            let arg: f64 = (0..3).map(|j| n[j] as f64 * w[j]).sum();
            let shift = Complex64::from_polar(1.0, arg);
            Mat2 {
                m11: p11[i] * shift,
                m12: p12[i] * shift,
                m21: p21[i] * shift,
                m22: p22[i] * shift,
            }
        })
        .collect();
    SpectrumField::new(grid, values)
}

/// Hermitized windowed periodogram on the given grid (the `N`-grid by default
/// in the experiments).
pub fn windowed_periodogram(
    cov: &CovarianceField,
    spec: &WindowSpec,
    grid: Dims,
) -> Result<SpectrumField> {
    let mut s = windowed_periodogram_raw(cov, spec, grid)?;
    s.hermitize();
    Ok(s)
}

/// Outcome of a positivity scan over a spectrum field.
#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct Positivity {
    /// Smallest eigenvalue over all grid points.
    pub min_eigenvalue: f64,
    /// Whether every point satisfies `λ_min >= -POSITIVITY_RTOL·|λ_max|`.
    pub positive: bool,
}

pub fn check_positivity(spectrum: &SpectrumField) -> Positivity {
    let mut min_eigenvalue = f64::INFINITY;
    let mut positive = true;
    for m in spectrum.values() {
        let (lo, hi) = m.hermitian_eigenvalues();
        min_eigenvalue = min_eigenvalue.min(lo);
        if lo < -POSITIVITY_RTOL * hi.abs() {
            positive = false;
        }
    }
    Positivity {
        min_eigenvalue,
        positive,
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::signal::{seeded_rng, synthesize, FrequencyVector, TargetSpec};
    use rand::Rng;

    fn random_cube(dims: Dims, seed: u64) -> DataCube {
        let mut rng = seeded_rng(seed);
        let mut ch = || -> Vec<Complex64> {
            (0..volume(&dims))
                .map(|_| Complex64::new(rng.random_range(-1.0..1.0), rng.random_range(-1.0..1.0)))
                .collect()
        };
        let a = ch();
        let b = ch();
        DataCube::new(dims, a, b).unwrap()
    }

    fn c(re: f64, im: f64) -> Complex64 {
        Complex64::new(re, im)
    }

    #[test]
    fn single_sample_transform_is_constant() {
        let cube = DataCube::new([1, 1, 1], vec![c(2.0, -1.0)], vec![c(0.5, 3.0)]).unwrap();
        let ft = finite_fourier_transform(&cube, [3, 2, 4]).unwrap();
        assert!(ft
            .channel(0)
            .iter()
            .all(|z| (*z - c(2.0, -1.0)).norm() < 1e-14));
        assert!(ft
            .channel(1)
            .iter()
            .all(|z| (*z - c(0.5, 3.0)).norm() < 1e-14));
    }

    #[test]
    fn on_grid_sinusoid_peaks_at_volume() {
        let dims = [5, 4, 3];
        let grid = [10, 8, 7];
        let g = [7, 1, 5];
        let theta = FrequencyVector::from(grid_point(g, &grid));
        let cube = synthesize(
            &[TargetSpec::new(1.0, 0.0, theta).unwrap()],
            dims,
            3.0,
            0.0,
            0,
        )
        .unwrap();
        let ft = finite_fourier_transform(&cube, grid).unwrap();
        assert!((ft.at(g)[0].norm() - volume(&dims) as f64).abs() < 1e-9);
    }

    #[test]
    fn dc_bin_is_plain_sum() {
        let cube = random_cube([4, 3, 2], 3);
        // Even grid sizes put ω = 0 at g = G/2.
        let grid = [8, 6, 4];
        let ft = finite_fourier_transform(&cube, grid).unwrap();
        for ch in 0..2 {
            let sum: Complex64 = cube.channel(ch).iter().sum();
            assert!((ft.at([4, 3, 2])[ch] - sum).norm() < 1e-12);
        }
    }

    #[test]
    fn transform_rejects_small_grid() {
        let cube = random_cube([4, 3, 2], 3);
        assert!(matches!(
            finite_fourier_transform(&cube, [3, 3, 2]),
            Err(Error::Size(_))
        ));
    }

    #[test]
    fn periodogram_of_single_sample() {
        let cube = DataCube::new([1, 1, 1], vec![c(1.0, 0.0)], vec![c(0.0, 1.0)]).unwrap();
        let p = periodogram(&cube);
        assert_eq!(p.grid(), [1, 1, 1]);
        let m = p.get([0, 0, 0]);
        assert!((m.m11 - c(1.0, 0.0)).norm() < 1e-15);
        assert!((m.m12 - c(0.0, -1.0)).norm() < 1e-15);
        assert!((m.m21 - c(0.0, 1.0)).norm() < 1e-15);
        assert!((m.m22 - c(1.0, 0.0)).norm() < 1e-15);
    }

    #[test]
    fn direct_covariance_corner_and_zero_lag() {
        let dims = [3, 2, 2];
        let cube = random_cube(dims, 8);
        let cov = covariances_direct(&cube, [2, 1, 1]).unwrap();
        let n = cube.len() as f64;
        let corner = Mat2::outer(cube.sample([2, 1, 1]), cube.sample([0, 0, 0])) * (1.0 / n);
        assert!(cov.get([2, 1, 1]).unwrap().max_abs_diff(&corner) < 1e-15);

        let zero = cov.get([0, 0, 0]).unwrap();
        assert!(zero.max_abs_diff(&zero.adjoint()) < 1e-15);
        assert!(zero.m11.re >= 0.0 && zero.m22.re >= 0.0);
        assert!(zero.hermitian_eigenvalues().0 >= -1e-12);
    }

    #[test]
    fn lag_bounds_are_enforced() {
        let cube = random_cube([3, 2, 2], 1);
        assert!(matches!(
            covariances_direct(&cube, [3, 1, 1]),
            Err(Error::Index(_))
        ));
        let cov = covariances_direct(&cube, [1, 1, 1]).unwrap();
        assert!(matches!(cov.get([2, 0, 0]), Err(Error::Index(_))));
        assert!(cov.restrict([2, 0, 0]).is_err());
        let narrow = cov.restrict([1, 0, 1]).unwrap();
        assert_eq!(
            narrow.get([1, 0, -1]).unwrap(),
            cov.get([1, 0, -1]).unwrap()
        );
        // A window reaching lags the field does not hold is an error.
        assert!(
            windowed_periodogram(&narrow, &WindowSpec::rectangular([1, 1, 1]), [3, 3, 3]).is_err()
        );
    }

    #[test]
    fn fft_covariances_are_conjugate_symmetric() {
        let cube = random_cube([4, 4, 3], 11);
        let cov = covariances_fft(&cube);
        for (k, m) in cov.iter() {
            let neg = cov.get([-k[0], -k[1], -k[2]]).unwrap();
            assert!(neg.max_abs_diff(&m.adjoint()) < 1e-12);
        }
    }

    #[test]
    fn window_values() {
        let rect = make_window(&WindowSpec::rectangular([8, 8, 2]));
        assert_eq!(rect.values().len(), 17 * 17 * 5);
        assert!(rect.values().iter().all(|&w| w == 1.0));

        let b3 = make_window(&WindowSpec::bartlett([3, 3, 3]));
        assert_eq!(b3.get([0, 0, 0]), Some(1.0));

        let b = make_window(&WindowSpec::bartlett([12, 12, 3]));
        let want = (1.0 / 13.0) * 1.0 * (1.0 / 4.0);
        assert!((b.get([12, 0, 3]).unwrap() - want).abs() < 1e-15);
        assert!((b.get([-12, 0, -3]).unwrap() - want).abs() < 1e-15);
        assert_eq!(b.get([13, 0, 0]), None);
        assert!(b.values().iter().all(|&w| w > 0.0 && w <= 1.0));
    }

    #[test]
    fn zero_width_window_gives_constant_field() {
        let cube = random_cube([4, 3, 3], 2);
        let cov = covariances_fft(&cube);
        let s = windowed_periodogram(&cov, &WindowSpec::rectangular([0, 0, 0]), [4, 3, 3]).unwrap();
        let s0 = cov.get([0, 0, 0]).unwrap().hermitian_part();
        assert!(s.values().iter().all(|m| m.max_abs_diff(&s0) < 1e-12));
    }

    #[test]
    fn positivity_examples() {
        let cube = random_cube([5, 4, 3], 21);
        let p = check_positivity(&periodogram(&cube));
        assert!(p.positive);
        assert!(p.min_eigenvalue >= -1e-9);

        let id = SpectrumField::constant([2, 2, 2], Mat2::identity()).unwrap();
        let p = check_positivity(&id);
        assert_eq!(p.min_eigenvalue, 1.0);
        assert!(p.positive);

        let neg = SpectrumField::constant([1, 1, 1], Mat2::diag(1.0, -0.5)).unwrap();
        assert!(!check_positivity(&neg).positive);
    }

    #[test]
    fn rectangular_estimate_can_lose_positivity() {
        // The Dirichlet kernel has negative lobes, so noise-only rectangular
        // estimates dip below zero somewhere on the grid.
        let found = (0..20).any(|seed| {
            let cube = synthesize(&[], [12, 12, 4], 20.0, 1.0, seed).unwrap();
            let cov = covariances_fft(&cube);
            let s = windowed_periodogram(&cov, &WindowSpec::rectangular([5, 5, 1]), [12, 12, 4])
                .unwrap();
            !check_positivity(&s).positive
        });
        assert!(found);
    }

    #[test]
    fn bartlett_estimate_of_biased_covariances_stays_positive() {
        // Fejér kernel >= 0 smoothing a PSD periodogram.
        for seed in 0..10 {
            let cube = synthesize(&[], [12, 12, 4], 20.0, 1.0, seed).unwrap();
            let cov = covariances_fft(&cube);
            let s =
                windowed_periodogram(&cov, &WindowSpec::bartlett([5, 5, 1]), [12, 12, 4]).unwrap();
            assert!(check_positivity(&s).positive, "seed {seed}");
        }
    }

    #[test]
    fn noise_periodogram_mean_is_noise_floor() {
        let sigma = 2.0;
        let g = [3, 9, 1];
        let samples: Vec<f64> = (0..500)
            .map(|seed| {
                let cube = synthesize(&[], [4, 5, 2], 0.0, sigma, 1000 + seed).unwrap();
                periodogram(&cube).get(g).m11.re
            })
            .collect();
        let n = samples.len() as f64;
        let mean = samples.iter().sum::<f64>() / n;
        let var = samples.iter().map(|x| (x - mean).powi(2)).sum::<f64>() / (n - 1.0);
        assert!(
            (mean - sigma * sigma).abs() < 5.0 * (var / n).sqrt(),
            "mean {mean}"
        );
    }
}

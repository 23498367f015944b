//! Separable 3-D FFT over row-major buffers, backed by `rustfft`.

use std::sync::Arc;

use num_complex::Complex64;
use rustfft::{Fft, FftDirection, FftPlanner};

use crate::grid::{volume, Dims};

pub(crate) struct Fft3 {
    dims: Dims,
    plans: [Arc<dyn Fft<f64>>; 3],
}

impl Fft3 {
    pub(crate) fn new(dims: Dims, direction: FftDirection) -> Self {
        let mut planner = FftPlanner::new();
        let plans = dims.map(|n| planner.plan_fft(n, direction));
        Self { dims, plans }
    }

    pub(crate) fn forward(dims: Dims) -> Self {
        Self::new(dims, FftDirection::Forward)
    }

    pub(crate) fn inverse(dims: Dims) -> Self {
        Self::new(dims, FftDirection::Inverse)
    }

    /// Unnormalized in-place transform.
    pub(crate) fn process(&self, data: &mut [Complex64]) {
        let [d0, d1, d2] = self.dims;
        assert_eq!(data.len(), volume(&self.dims));
        if data.is_empty() {
            return;
        }

        // Last axis is contiguous.
        if d2 > 1 {
            self.plans[2].process(data);
        }

        let mut lines = vec![Complex64::default(); data.len()];

        // Axis 1: lines of length d1 at stride d2 inside each i0 slab.
        if d1 > 1 {
            for i0 in 0..d0 {
                let slab = &mut data[i0 * d1 * d2..(i0 + 1) * d1 * d2];
                let out = &mut lines[i0 * d1 * d2..(i0 + 1) * d1 * d2];
                for i2 in 0..d2 {
                    for i1 in 0..d1 {
                        out[i2 * d1 + i1] = slab[i1 * d2 + i2];
                    }
                }
            }
            self.plans[1].process(&mut lines);
            for i0 in 0..d0 {
                let slab = &mut data[i0 * d1 * d2..(i0 + 1) * d1 * d2];
                let src = &lines[i0 * d1 * d2..(i0 + 1) * d1 * d2];
                for i2 in 0..d2 {
                    for i1 in 0..d1 {
                        slab[i1 * d2 + i2] = src[i2 * d1 + i1];
                    }
                }
            }
        }

        // Axis 0: lines of length d0 at stride d1*d2.
        if d0 > 1 {
            let plane = d1 * d2;
            for p in 0..plane {
                for i0 in 0..d0 {
                    lines[p * d0 + i0] = data[i0 * plane + p];
                }
            }
            self.plans[0].process(&mut lines);
            for p in 0..plane {
                for i0 in 0..d0 {
                    data[i0 * plane + p] = lines[p * d0 + i0];
                }
            }
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::grid::{indices, linear};
    use std::f64::consts::TAU;

    fn naive_dft(x: &[Complex64], dims: Dims) -> Vec<Complex64> {
        indices(dims)
            .map(|f| {
                indices(dims)
                    .map(|t| {
                        let ph: f64 = (0..3).map(|j| (f[j] * t[j]) as f64 / dims[j] as f64).sum();
                        x[linear(t, &dims)] * Complex64::from_polar(1.0, -TAU * ph)
                    })
                    .sum()
            })
            .collect()
    }

    #[test]
    fn matches_naive_dft() {
        for dims in [[3, 4, 5], [1, 6, 2], [5, 1, 1], [2, 3, 1]] {
            let x: Vec<Complex64> = (0..volume(&dims))
                .map(|i| Complex64::new((i as f64 * 0.37).sin(), (i as f64 * 1.3).cos()))
                .collect();
            let mut y = x.clone();
            Fft3::forward(dims).process(&mut y);
            let z = naive_dft(&x, dims);
            for (a, b) in y.iter().zip(&z) {
                assert!((a - b).norm() < 1e-10, "{dims:?}");
            }
        }
    }
}

//! 2×2 complex matrices for the two-channel spectral quantities.

use std::ops::{Add, AddAssign, Mul};

use num_complex::Complex64;

/// A 2×2 complex matrix `[[m11, m12], [m21, m22]]`.
#[derive(Debug, Clone, Copy, Default, PartialEq)]
pub struct Mat2 {
    pub m11: Complex64,
    pub m12: Complex64,
    pub m21: Complex64,
    pub m22: Complex64,
}

impl Mat2 {
    pub const ZERO: Mat2 = Mat2 {
        m11: Complex64::new(0.0, 0.0),
        m12: Complex64::new(0.0, 0.0),
        m21: Complex64::new(0.0, 0.0),
        m22: Complex64::new(0.0, 0.0),
    };

    pub fn identity() -> Self {
        Self::diag(1.0, 1.0)
    }

    pub fn diag(a: f64, d: f64) -> Self {
        Self {
            m11: a.into(),
            m22: d.into(),
            ..Self::ZERO
        }
    }

    /// `x y^*` for two 2-vectors.
    pub fn outer(x: [Complex64; 2], y: [Complex64; 2]) -> Self {
        Self {
            m11: x[0] * y[0].conj(),
            m12: x[0] * y[1].conj(),
            m21: x[1] * y[0].conj(),
            m22: x[1] * y[1].conj(),
        }
    }

    pub fn adjoint(&self) -> Self {
        Self {
            m11: self.m11.conj(),
            m12: self.m21.conj(),
            m21: self.m12.conj(),
            m22: self.m22.conj(),
        }
    }

    /// `(A + A^*) / 2`.
    pub fn hermitian_part(&self) -> Self {
        let a = self.adjoint();
        Self {
            m11: 0.5 * (self.m11 + a.m11),
            m12: 0.5 * (self.m12 + a.m12),
            m21: 0.5 * (self.m21 + a.m21),
            m22: 0.5 * (self.m22 + a.m22),
        }
    }

    pub fn det(&self) -> Complex64 {
        self.m11 * self.m22 - self.m12 * self.m21
    }

    pub fn frobenius_sq(&self) -> f64 {
        self.m11.norm_sqr() + self.m12.norm_sqr() + self.m21.norm_sqr() + self.m22.norm_sqr()
    }

    pub fn max_abs_diff(&self, other: &Mat2) -> f64 {
        [
            (self.m11 - other.m11).norm(),
            (self.m12 - other.m12).norm(),
            (self.m21 - other.m21).norm(),
            (self.m22 - other.m22).norm(),
        ]
        .into_iter()
        .fold(0.0, f64::max)
    }

    /// Closed-form eigenvalues `(min, max)` of the Hermitian part.
    pub fn hermitian_eigenvalues(&self) -> (f64, f64) {
        let h = self.hermitian_part();
        let mean = 0.5 * (h.m11.re + h.m22.re);
        let half_gap = 0.5 * (h.m11.re - h.m22.re);
        let radius = half_gap.hypot(h.m12.norm());
        (mean - radius, mean + radius)
    }
}

impl Add for Mat2 {
    type Output = Mat2;
    fn add(self, o: Mat2) -> Mat2 {
        Mat2 {
            m11: self.m11 + o.m11,
            m12: self.m12 + o.m12,
            m21: self.m21 + o.m21,
            m22: self.m22 + o.m22,
        }
    }
}

impl AddAssign for Mat2 {
    fn add_assign(&mut self, o: Mat2) {
        *self = *self + o;
    }
}

impl Mul<Complex64> for Mat2 {
    type Output = Mat2;
    fn mul(self, s: Complex64) -> Mat2 {
        Mat2 {
            m11: self.m11 * s,
            m12: self.m12 * s,
            m21: self.m21 * s,
            m22: self.m22 * s,
        }
    }
}

impl Mul<f64> for Mat2 {
    type Output = Mat2;
    fn mul(self, s: f64) -> Mat2 {
        self * Complex64::new(s, 0.0)
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn eigenvalues_of_known_matrices() {
        assert_eq!(Mat2::identity().hermitian_eigenvalues(), (1.0, 1.0));
        // [[2, 1], [1, 2]] has eigenvalues 1 and 3.
        let m = Mat2 {
            m11: 2.0.into(),
            m12: 1.0.into(),
            m21: 1.0.into(),
            m22: 2.0.into(),
        };
        let (lo, hi) = m.hermitian_eigenvalues();
        assert!((lo - 1.0).abs() < 1e-15 && (hi - 3.0).abs() < 1e-15);
    }

    #[test]
    fn outer_product_is_singular() {
        let x = [Complex64::new(1.0, 2.0), Complex64::new(-0.5, 0.25)];
        let m = Mat2::outer(x, x);
        assert!(m.det().norm() < 1e-14);
        assert_eq!(m, m.adjoint());
    }
}

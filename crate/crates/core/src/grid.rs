//! Index lattices and the centered frequency grid on the 3-torus.
//!
//! Arrays are stored row-major with the last axis fastest. A frequency grid
//! of size `G` along one axis has points `-π + 2πg/G` for `g = 0..G`, so the
//! first point is always `-π` and the grid is symmetric about zero when `G`
//! is even.

use std::f64::consts::{PI, TAU};

/// Sizes along the three axes (fast time, slow time, antenna).
pub type Dims = [usize; 3];

/// Integer lag vector.
pub type Lag = [isize; 3];

pub fn volume(dims: &Dims) -> usize {
    dims[0] * dims[1] * dims[2]
}

#[inline]
pub(crate) fn linear(idx: [usize; 3], dims: &Dims) -> usize {
    (idx[0] * dims[1] + idx[1]) * dims[2] + idx[2]
}

#[inline]
pub(crate) fn unravel(mut i: usize, dims: &Dims) -> [usize; 3] {
    let i2 = i % dims[2];
    i /= dims[2];
    let i1 = i % dims[1];
    [i / dims[1], i1, i2]
}

/// Iterates all multi-indices of `dims` in row-major order.
pub(crate) fn indices(dims: Dims) -> impl Iterator<Item = [usize; 3]> {
    (0..dims[0])
        .flat_map(move |a| (0..dims[1]).flat_map(move |b| (0..dims[2]).map(move |c| [a, b, c])))
}

/// Iterates all lags `k` with `|k_j| <= half[j]` in row-major order of `k + half`.
pub(crate) fn lags(half: [usize; 3]) -> impl Iterator<Item = Lag> {
    let span = [2 * half[0] + 1, 2 * half[1] + 1, 2 * half[2] + 1];
    indices(span).map(move |m| {
        [
            m[0] as isize - half[0] as isize,
            m[1] as isize - half[1] as isize,
            m[2] as isize - half[2] as isize,
        ]
    })
}

/// Frequency of grid point `g` on an axis with `size` points.
#[inline]
pub fn grid_frequency(g: usize, size: usize) -> f64 {
    -PI + TAU * g as f64 / size as f64
}

/// Nearest grid point to `omega` (any real value, taken modulo 2π).
pub fn grid_index(omega: f64, size: usize) -> usize {
    let pos = ((omega + PI) * size as f64 / TAU).round() as i64;
    pos.rem_euclid(size as i64) as usize
}

pub fn grid_point(idx: [usize; 3], grid: &Dims) -> [f64; 3] {
    [
        grid_frequency(idx[0], grid[0]),
        grid_frequency(idx[1], grid[1]),
        grid_frequency(idx[2], grid[2]),
    ]
}

/// Wraps an angle into the half-open interval `[-π, π)`.
pub fn wrap_angle(x: f64) -> f64 {
    let y = (x + PI).rem_euclid(TAU) - PI;
    if y >= PI {
        y - TAU
    } else {
        y
    }
}

/// Wraps an angular difference into `(-π, π]`.
pub fn wrap_difference(x: f64) -> f64 {
    let y = -wrap_angle(-x);
    if y <= -PI {
        y + TAU
    } else {
        y
    }
}

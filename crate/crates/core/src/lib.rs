//! Multi-sensor radar target frequency estimation from two-channel
//! multidimensional windowed periodograms.
//!
//! The pipeline is: [`signal::synthesize`] a two-channel data cube,
//! estimate covariances with [`spectral::covariances_fft`], smooth them into
//! a matrix spectrum with [`spectral::windowed_periodogram`], and pick peaks
//! of one of the fusion objectives in [`estimators`]. [`harness`] runs the
//! whole chain as a seeded Monte Carlo experiment.

pub mod cli;
pub mod error;
pub mod estimators;
mod fft;
pub mod grid;
pub mod harness;
pub mod mat2;
pub mod presets;
pub mod report;
pub mod scene;
pub mod signal;
pub mod spectral;
pub mod stats;

pub use error::{Error, Result};
pub use mat2::Mat2;

//! Robust constrained signal detection in the Gaussian sequence model.
//!
//! The library detects a mean signal constrained to a balanced set `K`
//! from `N` noisy observations, up to `floor(eps*N)` of which an adaptive
//! adversary may have replaced. The pipeline:
//!
//! * [`geometry`] — constraint sets, Minkowski gauges, and the constrained
//!   quadratic maximization oracles;
//! * [`widths`] — an equality-constrained ellipsoid method that solves the
//!   SDP relaxation behind approximate Kolmogorov widths, yielding width
//!   profiles and approximate projections;
//! * [`filtering`] — spectral outlier filters that enforce weighted
//!   regularity on the projected observations;
//! * [`detect`] — the polynomial-time robust test assembled from the
//!   above, a chi-square-type reference test, and an exponential-time
//!   subset-scan test usable at tiny sample sizes;
//! * [`sim`] — data generation, contamination adversaries, Monte-Carlo
//!   error-rate estimation, and concentration tail checks.

pub mod detect;
pub mod error;
pub mod filtering;
pub mod geometry;
pub mod linalg;
pub mod sim;
pub mod widths;

pub use error::{Error, Result};

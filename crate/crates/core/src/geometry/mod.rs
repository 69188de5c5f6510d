//! Spectral geometry on discretized charts of the reconstructed space.
//!
//! * [`weyl`]: dimension from eigenvalue growth `λ_n ~ n^{N/d}`.
//! * [`chart`], [`distance`]: geodesics on the glued space and the
//!   commutator-constrained distance `sup{|a(x) − a(y)| : (1/N!)‖[a,…[a,H]…]‖ ≤ 1}`
//!   for `N = 1, 2`.
//! * [`operators`]: finite-difference `H` and `D`, nested commutators.
//! * [`roughening`]: convergence of `Σ ω^{2K} |b|²` on truncated expansions.

pub mod chart;
pub mod distance;
pub mod operators;
pub mod roughening;
pub mod weyl;

pub use chart::{Chart, ChartPoint, Distance};
pub use distance::{connes_distance_dirac, connes_distance_laplace, DistanceReport};
pub use operators::{commutator_depth_residuals, DiscretizedOperator, LipschitzFunction};
pub use roughening::{roughening_truncation, RougheningReport};
pub use weyl::{weyl_dimension, WeylFit};

/// Least-squares slope of `ln y` against `ln x`.
pub fn log_log_slope(xs: &[f64], ys: &[f64]) -> f64 {
    let lx: alloc::vec::Vec<f64> = xs.iter().map(|x| libm::log(*x)).collect();
    let ly: alloc::vec::Vec<f64> = ys.iter().map(|y| libm::log(*y)).collect();
    crate::linalg::linear_fit(&lx, &ly).0
}

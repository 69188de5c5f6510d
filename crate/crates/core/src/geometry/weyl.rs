//! Dimension from the growth of eigenvalues.

use alloc::vec::Vec;

#[allow(unused_imports)]
use num_traits::Float;
use serde::{Deserialize, Serialize};

use crate::error::{param, Error, Result};
use crate::linalg::linear_fit;
use crate::spectrum::SpectrumTable;

/// Minimum number of fitted eigenvalues.
pub const MIN_POINTS: usize = 50;
pub const DEFAULT_N_MIN: usize = 10;

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct WeylFit {
    pub d: f64,
    pub slope: f64,
    pub intercept: f64,
    pub r2: f64,
    /// `(n, λ_n, fit residual in ln λ)` for every fitted point.
    pub points: Vec<(usize, f64, f64)>,
}

/// Fits `ln λ_n = s ln n + c` over `n ≥ n_min` and returns `d = N/s`.
///
/// `lambdas` must be sorted and multiplicity-expanded; entries `≤ 1e−12`
/// (zero modes) are dropped before numbering from `n = 1`.
pub fn weyl_dimension_from_values(lambdas: &[f64], order_n: u32, n_min: usize) -> Result<WeylFit> {
    if !(order_n == 1 || order_n == 2) {
        return Err(param("operator order N must be 1 or 2"));
    }
    let positive: Vec<f64> = lambdas.iter().copied().filter(|&l| l > 1e-12).collect();
    let start = n_min.max(1);
    let fitted: Vec<(usize, f64)> = positive
        .iter()
        .enumerate()
        .map(|(i, &l)| (i + 1, l))
        .filter(|(n, _)| *n >= start)
        .collect();
    if fitted.len() < MIN_POINTS {
        return Err(Error::InsufficientData { needed: MIN_POINTS, got: fitted.len() });
    }
    let xs: Vec<f64> = fitted.iter().map(|(n, _)| (*n as f64).ln()).collect();
    let ys: Vec<f64> = fitted.iter().map(|(_, l)| l.ln()).collect();
    let (slope, intercept, r2) = linear_fit(&xs, &ys);
    let points = fitted
        .iter()
        .zip(xs.iter().zip(&ys))
        .map(|(&(n, l), (x, y))| (n, l, y - (slope * x + intercept)))
        .collect();
    Ok(WeylFit { d: order_n as f64 / slope, slope, intercept, r2, points })
}

pub fn weyl_dimension(spec: &SpectrumTable, order_n: u32, n_min: usize) -> Result<WeylFit> {
    weyl_dimension_from_values(&spec.expanded(), order_n, n_min)
}

/// `λ_max` large enough to hold at least `modes` eigenvalues: the counting
/// function on `D_u` is at least `2⌊√λ⌋`.
pub fn lambda_max_for_modes(modes: usize) -> f64 {
    let k = (modes as f64 / 2.0).ceil() + 1.0;
    k * k
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::spectrum::{analytic_spectrum, solve_spectrum_numeric};
    use crate::unitary::Unitary2;

    #[test]
    fn exact_power_law() {
        let l: Vec<f64> = (1..=200).map(|n| n as f64).collect();
        let f = weyl_dimension_from_values(&l, 1, DEFAULT_N_MIN).unwrap();
        assert!((f.d - 1.0).abs() < 1e-6);
        let l: Vec<f64> = (1..=200).map(|n| (n as f64).powi(2)).collect();
        let f = weyl_dimension_from_values(&l, 2, DEFAULT_N_MIN).unwrap();
        assert!((f.d - 1.0).abs() < 1e-6);
    }

    #[test]
    fn circle_and_two_circles() {
        for u in [Unitary2::swap(), Unitary2::identity()] {
            let lm = lambda_max_for_modes(500);
            let t = solve_spectrum_numeric(&u, lm).unwrap();
            let vals: Vec<f64> = t.expanded().into_iter().filter(|&l| l > 1e-12).take(500).collect();
            assert_eq!(vals.len(), 500);
            let f = weyl_dimension_from_values(&vals, 2, DEFAULT_N_MIN).unwrap();
            assert!((f.d - 1.0).abs() <= 0.05, "{}", f.d);
            let a = analytic_spectrum(&u, lm).unwrap();
            let g = weyl_dimension(&a, 2, DEFAULT_N_MIN).unwrap();
            assert!((g.d - 1.0).abs() <= 0.05);
        }
    }

    #[test]
    fn too_few_points() {
        let l: Vec<f64> = (1..=40).map(|n| n as f64).collect();
        assert!(matches!(weyl_dimension_from_values(&l, 1, 1), Err(Error::InsufficientData { .. })));
        assert!(weyl_dimension_from_values(&l, 3, 1).is_err());
    }
}

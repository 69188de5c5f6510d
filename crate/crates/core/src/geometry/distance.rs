//! Commutator-constrained distances.
//!
//! With `D = −i d/dx`, `[D, a] = −i a′`, and with `H = −d²/dx²`,
//! `[a, [a, H]] = −2 (a′)²` (both as multiplication operators). Both
//! constraints therefore reduce to `sup |a′| ≤ 1`, whose optimum
//! `a = d(x, ·)` gives the geodesic distance. The grid routes evaluate the
//! ratio `|a(x) − a(y)| / constraint` for that `a` with the finite-difference
//! operators, as an independent check of the reduction.

#[allow(unused_imports)]
use num_traits::Float;
use serde::{Deserialize, Serialize};

use super::chart::{Chart, ChartPoint, Distance};
use super::operators::{commutator_with_diagonal, DiscretizedOperator, LipschitzFunction};
use crate::error::{param, Result};
use crate::linalg::operator_norm_real;

#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct DistanceReport {
    pub chart: Chart,
    pub x: ChartPoint,
    pub y: ChartPoint,
    /// 1 or 2.
    pub order_n: u32,
    pub points_per_interval: usize,
    /// Production value from the Lipschitz reduction.
    pub geodesic: Distance,
    /// Grid value `|a(x) − a(y)| / ((1/N!)‖N-fold commutator‖)^{1/N}`; absent
    /// for disconnected points.
    pub operator_route: Option<f64>,
    /// `|operator_route − geodesic| / geodesic` when both are finite and nonzero.
    pub relative_error: Option<f64>,
}

fn tent(op: &DiscretizedOperator, x: &ChartPoint) -> LipschitzFunction {
    let chart = op.grid.chart;
    let anchor = op.grid.nodes[op.grid.nearest(x)];
    LipschitzFunction::on_grid(&op.grid, |p| chart.geodesic(&anchor, p).finite().unwrap_or(0.0))
}

fn distance(chart: Chart, x: ChartPoint, y: ChartPoint, p: usize, order_n: u32) -> Result<DistanceReport> {
    if p < 5 {
        return Err(param("at least 5 points per interval"));
    }
    let geodesic = chart.geodesic(&x, &y);
    let mut report =
        DistanceReport { chart, x, y, order_n, points_per_interval: p, geodesic, operator_route: None, relative_error: None };
    let Distance::Finite(g) = geodesic else {
        return Ok(report);
    };
    let op = if order_n == 1 { DiscretizedOperator::momentum(chart, p)? } else { DiscretizedOperator::laplacian(chart, p)? };
    let a = tent(&op, &x);
    let (ix, iy) = (op.grid.nearest(&x), op.grid.nearest(&y));
    let gap = (a.samples[ix] - a.samples[iy]).abs();
    let value = if gap == 0.0 {
        0.0
    } else if order_n == 1 {
        gap / operator_norm_real(&commutator_with_diagonal(&op.real, &a.samples))
    } else {
        let c = commutator_with_diagonal(&commutator_with_diagonal(&op.real, &a.samples), &a.samples);
        gap / (0.5 * operator_norm_real(&c)).sqrt()
    };
    report.operator_route = Some(value);
    if g > 0.0 {
        report.relative_error = Some((value - g).abs() / g);
    }
    Ok(report)
}

/// `N = 1` distance with `D = −i d/dx`.
pub fn connes_distance_dirac(chart: Chart, x: ChartPoint, y: ChartPoint, p: usize) -> Result<DistanceReport> {
    distance(chart, x, y, p, 1)
}

/// `N = 2` distance with `H = −d²/dx²`, constraint `½‖[a,[a,H]]‖ ≤ 1`.
pub fn connes_distance_laplace(chart: Chart, x: ChartPoint, y: ChartPoint, p: usize) -> Result<DistanceReport> {
    distance(chart, x, y, p, 2)
}

#[cfg(test)]
mod tests {
    use super::*;
    use core::f64::consts::{PI, TAU};

    fn pt(i: u8, x: f64) -> ChartPoint {
        ChartPoint::new(i, x).unwrap()
    }

    #[test]
    fn antipodal_on_the_4pi_circle() {
        for f in [connes_distance_dirac, connes_distance_laplace] {
            let r = f(Chart::CircleOf4Pi, pt(1, 0.0), pt(2, 0.0), 512).unwrap();
            assert_eq!(r.geodesic, Distance::Finite(TAU));
            assert!(r.relative_error.unwrap() <= 0.02, "{r:?}");
        }
    }

    #[test]
    fn same_point_is_zero() {
        for f in [connes_distance_dirac, connes_distance_laplace] {
            let r = f(Chart::CircleOf4Pi, pt(1, 1.0), pt(1, 1.0), 64).unwrap();
            assert_eq!(r.geodesic, Distance::Finite(0.0));
            assert_eq!(r.operator_route, Some(0.0));
        }
    }

    #[test]
    fn different_circles_are_infinitely_far() {
        let r = connes_distance_dirac(Chart::TwoCirclesOf2Pi, pt(1, 0.0), pt(2, 0.0), 64).unwrap();
        assert_eq!(r.geodesic, Distance::Infinite);
        assert!(r.operator_route.is_none());
    }

    #[test]
    fn both_orders_agree_on_two_circles() {
        let d1 = connes_distance_dirac(Chart::TwoCirclesOf2Pi, pt(2, 0.5), pt(2, 0.5 + PI), 256).unwrap();
        let d2 = connes_distance_laplace(Chart::TwoCirclesOf2Pi, pt(2, 0.5), pt(2, 0.5 + PI), 256).unwrap();
        let (a, b) = (d1.operator_route.unwrap(), d2.operator_route.unwrap());
        assert!((a - b).abs() / PI <= 0.02 && (a - PI).abs() / PI <= 0.02);
    }

    #[test]
    fn other_lipschitz_functions_do_not_beat_the_tent() {
        let op = DiscretizedOperator::momentum(Chart::CircleOf4Pi, 128).unwrap();
        let (x, y) = (pt(1, 0.0), pt(2, 0.0));
        let (ix, iy) = (op.grid.nearest(&x), op.grid.nearest(&y));
        let mut rng = crate::rng(4);
        use rand::Rng as _;
        for _ in 0..20 {
            let (c1, c2, c3): (f64, f64, f64) = (rng.gen_range(-1.0..1.0), rng.gen_range(-1.0..1.0), rng.gen_range(0.0..TAU));
            let a = LipschitzFunction::on_grid(&op.grid, |p| {
                let s = if p.interval == 1 { p.x } else { TAU + p.x };
                c1 * (s / 2.0 + c3).sin() + c2 * (s + c3).cos()
            });
            let ratio = (a.samples[ix] - a.samples[iy]).abs() / operator_norm_real(&commutator_with_diagonal(&op.real, &a.samples));
            assert!(ratio <= TAU * 1.02, "{ratio}");
        }
    }

    #[test]
    fn refuses_tiny_grids() {
        assert!(connes_distance_dirac(Chart::CircleOf4Pi, pt(1, 0.0), pt(1, 1.0), 4).is_err());
    }
}

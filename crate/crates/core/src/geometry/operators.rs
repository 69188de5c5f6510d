//! Second-order finite-difference `H = −d²/dx²` and `D = −i d/dx` on a chart
//! grid, and nested commutators with multiplication operators.
//!
//! For a diagonal `f`, `[M, f]_ij = M_ij (f_j − f_i)`, so every nested
//! commutator stays inside the band of `M`. With `M = H` one gets entries of
//! size `|Δf|/h²`, `|Δf Δg|/h²`, `|Δf Δg Δk|/h²` at depths 1, 2, 3: the
//! norms scale as `1/h`, `1` and `h`. For `D` the depths 1, 2 scale as `1`, `h`.

use alloc::vec::Vec;

use nalgebra::DMatrix;
#[allow(unused_imports)]
use num_traits::Float;
use serde::{Deserialize, Serialize};

use super::chart::{Chart, ChartGrid};
use crate::error::{param, Error, Result};
use crate::linalg::{operator_norm_real, CMat};
use crate::C64;

/// Real multiple of a fixed complex factor: `matrix = factor · real`.
#[derive(Debug, Clone)]
pub struct DiscretizedOperator {
    pub grid: ChartGrid,
    /// 2 for `H`, 1 for `D`.
    pub order_n: u32,
    pub factor: C64,
    pub real: DMatrix<f64>,
}

/// Real samples of a function on the nodes of a chart grid.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct LipschitzFunction {
    pub samples: Vec<f64>,
}

impl LipschitzFunction {
    pub fn on_grid<F: Fn(&super::ChartPoint) -> f64>(grid: &ChartGrid, f: F) -> Self {
        Self { samples: grid.sample(f) }
    }

    /// `max |a_{j+1} − a_j| / h` over neighbouring nodes, wrapping on circles.
    pub fn lipschitz_constant(&self, grid: &ChartGrid) -> f64 {
        let mut l: f64 = 0.0;
        for_each_edge(grid, |i, j| l = l.max((self.samples[j] - self.samples[i]).abs() / grid.h));
        l
    }
}

fn for_each_edge<F: FnMut(usize, usize)>(grid: &ChartGrid, mut f: F) {
    for c in &grid.components {
        for m in 0..c.nodes - 1 {
            f(c.offset + m, c.offset + m + 1);
        }
        if c.periodic {
            f(c.offset + c.nodes - 1, c.offset);
        }
    }
}

impl DiscretizedOperator {
    /// `−(f_{j+1} − 2f_j + f_{j−1})/h²`; Dirichlet truncation on segments.
    pub fn laplacian(chart: Chart, p: usize) -> Result<Self> {
        let grid = chart.grid(p)?;
        let n = grid.len();
        let h2 = grid.h * grid.h;
        let mut m = DMatrix::<f64>::zeros(n, n);
        for i in 0..n {
            m[(i, i)] = 2.0 / h2;
        }
        for_each_edge(&grid, |i, j| {
            m[(i, j)] -= 1.0 / h2;
            m[(j, i)] -= 1.0 / h2;
        });
        Ok(Self { grid, order_n: 2, factor: C64::new(1.0, 0.0), real: m })
    }

    /// `−i (f_{j+1} − f_{j−1})/2h`.
    pub fn momentum(chart: Chart, p: usize) -> Result<Self> {
        let grid = chart.grid(p)?;
        let n = grid.len();
        let mut m = DMatrix::<f64>::zeros(n, n);
        let c = 0.5 / grid.h;
        for_each_edge(&grid, |i, j| {
            m[(i, j)] += c;
            m[(j, i)] -= c;
        });
        Ok(Self { grid, order_n: 1, factor: C64::new(0.0, -1.0), real: m })
    }

    pub fn dim(&self) -> usize {
        self.real.nrows()
    }

    pub fn to_complex(&self) -> CMat {
        self.real.map(|x| self.factor * x)
    }

    pub fn hermiticity_residual(&self) -> f64 {
        crate::linalg::hermiticity_residual(&self.to_complex())
    }

    /// `‖op‖`.
    pub fn norm(&self) -> f64 {
        self.factor.norm() * operator_norm_real(&self.real)
    }

    /// `max_j |(op e^{ikx})_j − k^N e^{ikx_j}|` on the first grid component,
    /// which must be periodic with `e^{ikx}` single-valued on it.
    pub fn plane_wave_error(&self, k: f64) -> f64 {
        let c = self.grid.components[0];
        let xs: Vec<f64> = (0..c.nodes).map(|m| m as f64 * self.grid.h).collect();
        let wave = |x: f64| C64::from_polar(1.0, k * x);
        let mut worst: f64 = 0.0;
        for r in 0..c.nodes {
            let mut acc = C64::new(0.0, 0.0);
            for s in 0..c.nodes {
                let v = self.real[(c.offset + r, c.offset + s)];
                if v != 0.0 {
                    acc += wave(xs[s]) * v;
                }
            }
            acc *= self.factor;
            let want = wave(xs[r]) * k.powi(self.order_n as i32);
            worst = worst.max((acc - want).norm());
        }
        worst
    }
}

/// `[M, f]` for diagonal `f`.
pub fn commutator_with_diagonal(m: &DMatrix<f64>, f: &[f64]) -> DMatrix<f64> {
    let mut out = m.clone();
    for j in 0..m.ncols() {
        for i in 0..m.nrows() {
            let v = m[(i, j)];
            if v != 0.0 {
                out[(i, j)] = v * (f[j] - f[i]);
            }
        }
    }
    out
}

pub const MAX_DEPTH: usize = 6;

/// `‖[…[[op, f₁], f₂]…, f_κ]‖` for `κ = 1..=K`; `funcs` are reused cyclically.
pub fn commutator_depth_residuals(op: &DiscretizedOperator, funcs: &[LipschitzFunction], depth: usize) -> Result<Vec<f64>> {
    if depth == 0 || depth > MAX_DEPTH {
        return Err(param("commutator depth must lie in 1..=6"));
    }
    if funcs.is_empty() {
        return Err(param("at least one function is required"));
    }
    if funcs.iter().any(|f| f.samples.len() != op.dim()) {
        return Err(Error::Resolution("function samples do not match the operator grid".into()));
    }
    let mut cur = op.real.clone();
    let mut out = Vec::with_capacity(depth);
    for k in 0..depth {
        cur = commutator_with_diagonal(&cur, &funcs[k % funcs.len()].samples);
        out.push(op.factor.norm() * operator_norm_real(&cur));
    }
    Ok(out)
}

/// `(½‖[a,[a,H]]‖, sup|a′|²)` on the grid of `h`, with `sup|a′|` the
/// discrete Lipschitz constant.
pub fn double_commutator_identity(h: &DiscretizedOperator, a: &LipschitzFunction) -> Result<(f64, f64)> {
    if h.order_n != 2 {
        return Err(param("the identity concerns the second-order operator"));
    }
    let c = commutator_with_diagonal(&commutator_with_diagonal(&h.real, &a.samples), &a.samples);
    let l = a.lipschitz_constant(&h.grid);
    Ok((0.5 * operator_norm_real(&c), l * l))
}

//! Truncated Peter–Weyl basis of `L²(U(2))`.
//!
//! `χ_{p j m n}(u) = √(2j+1) e^{ipφ} D^j_{mn}(s)` for `u = e^{iφ} s`. The pair
//! `(φ, s)` is fixed only up to `(φ + π, −s)`, so `p + 2j` must be even.
//! These functions are orthonormal under the normalized Haar measure.

use alloc::collections::BTreeMap;
use alloc::vec::Vec;

#[allow(unused_imports)]
use num_traits::Float;
use serde::{Deserialize, Serialize};

use super::wigner::{m_index, two_m_at, WignerTable};
use crate::error::{param, Result};
use crate::unitary::Unitary2;
use crate::C64;

/// `(p, 2j, 2m, 2n)`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize, Deserialize)]
pub struct Label {
    pub p: i32,
    pub two_j: u32,
    pub two_m: i32,
    pub two_n: i32,
}

impl Label {
    pub fn j(&self) -> f64 {
        self.two_j as f64 / 2.0
    }

    /// `j(j+1) + p²/4`, the eigenvalue of `−Σ L_α²`.
    pub fn casimir(&self) -> f64 {
        casimir(self.p, self.two_j)
    }
}

pub fn casimir(p: i32, two_j: u32) -> f64 {
    let j = two_j as f64 / 2.0;
    j * (j + 1.0) + (p * p) as f64 / 4.0
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct PwBasis {
    pub p_max: u32,
    pub two_j_max: u32,
    pub labels: Vec<Label>,
    #[serde(skip)]
    index: BTreeMap<Label, usize>,
}

pub const MIN_DIMENSION: usize = 4;

/// All labels with `|p| ≤ p_max`, `j ≤ j_max` and `p + 2j` even. `j_max` is
/// given doubled.
pub fn build_basis(p_max: u32, two_j_max: u32) -> Result<PwBasis> {
    if p_max < 1 || two_j_max < 1 {
        return Err(param("cutoffs must satisfy p_max ≥ 1 and j_max ≥ 1/2"));
    }
    let mut labels = Vec::new();
    for two_j in 0..=two_j_max {
        for p in -(p_max as i32)..=p_max as i32 {
            if (p + two_j as i32).rem_euclid(2) != 0 {
                continue;
            }
            for mi in 0..=two_j as usize {
                for ni in 0..=two_j as usize {
                    labels.push(Label { p, two_j, two_m: two_m_at(two_j, mi), two_n: two_m_at(two_j, ni) });
                }
            }
        }
    }
    if labels.len() < MIN_DIMENSION {
        return Err(param("cutoffs too small to hold a packet"));
    }
    let index = labels.iter().enumerate().map(|(i, l)| (*l, i)).collect();
    Ok(PwBasis { p_max, two_j_max, labels, index })
}

impl PwBasis {
    pub fn dim(&self) -> usize {
        self.labels.len()
    }

    pub fn index_of(&self, l: &Label) -> Option<usize> {
        self.index.get(l).copied()
    }

    /// Restores the lookup table after deserialization.
    pub fn reindex(&mut self) {
        self.index = self.labels.iter().enumerate().map(|(i, l)| (*l, i)).collect();
    }

    /// Labels on which one multiplication by `u_{ij}` or its conjugate stays
    /// inside the truncation: `|p| ≤ p_max − 1` and `j ≤ j_max − ½`.
    pub fn is_interior(&self, l: &Label) -> bool {
        l.p.unsigned_abs() < self.p_max && l.two_j < self.two_j_max
    }

    pub fn interior_indices(&self) -> Vec<usize> {
        (0..self.dim()).filter(|&i| self.is_interior(&self.labels[i])).collect()
    }

    /// `χ_ℓ(u)` for every label.
    pub fn eval(&self, u: &Unitary2) -> Vec<C64> {
        let (phi, ds) = WignerTable::new(self.two_j_max).matrices(u);
        self.eval_with(phi, &ds)
    }

    pub(crate) fn eval_with(&self, phi: f64, ds: &[nalgebra::DMatrix<C64>]) -> Vec<C64> {
        self.labels
            .iter()
            .map(|l| {
                let d = &ds[l.two_j as usize];
                let v = d[(m_index(l.two_j, l.two_m), m_index(l.two_j, l.two_n))];
                C64::from_polar(((l.two_j + 1) as f64).sqrt(), l.p as f64 * phi) * v
            })
            .collect()
    }

    /// Flat evaluation plan for `Σ c_ℓ χ_ℓ(u)`: per label, the position of its
    /// `D` entry in the [`WignerTable::fill`] layout and its `p` offset, with
    /// the coefficient premultiplied by `√(2j+1)`.
    pub fn plan(&self, coeffs: &[C64]) -> EvalPlan {
        let pm = self.p_max as i32;
        let n_p = 2 * self.p_max as usize + 1;
        let mut by_p: Vec<Vec<(usize, C64)>> = alloc::vec![Vec::new(); n_p];
        for (l, c) in self.labels.iter().zip(coeffs) {
            let d = l.two_j as usize + 1;
            let pos = WignerTable::offset(l.two_j) + m_index(l.two_j, l.two_m) * d + m_index(l.two_j, l.two_n);
            by_p[(l.p + pm) as usize].push((pos, c * ((l.two_j + 1) as f64).sqrt()));
        }
        EvalPlan { p_max: pm, by_p }
    }

    /// `Σ c_ℓ χ_ℓ(u)`.
    pub fn eval_function(&self, coeffs: &[C64], u: &Unitary2) -> C64 {
        let (phi, ds) = WignerTable::new(self.two_j_max).matrices(u);
        self.eval_function_with(coeffs, phi, &ds)
    }

    pub(crate) fn eval_function_with(&self, coeffs: &[C64], phi: f64, ds: &[nalgebra::DMatrix<C64>]) -> C64 {
        let pm = self.p_max as i32;
        let phases: Vec<C64> = (-pm..=pm).map(|p| C64::from_polar(1.0, p as f64 * phi)).collect();
        let norms: Vec<f64> = (0..=self.two_j_max).map(|tj| ((tj + 1) as f64).sqrt()).collect();
        let mut acc = C64::new(0.0, 0.0);
        for (l, c) in self.labels.iter().zip(coeffs) {
            let d = &ds[l.two_j as usize];
            let v = d[(m_index(l.two_j, l.two_m), m_index(l.two_j, l.two_n))];
            acc += c * v * phases[(l.p + pm) as usize] * norms[l.two_j as usize];
        }
        acc
    }
}

#[derive(Debug, Clone)]
pub struct EvalPlan {
    p_max: i32,
    by_p: Vec<Vec<(usize, C64)>>,
}

impl EvalPlan {
    /// `f(u)` from the flat `D` layout and `φ`.
    pub fn eval(&self, phi: f64, d_flat: &[C64]) -> C64 {
        let step = C64::from_polar(1.0, phi);
        let mut ph = C64::from_polar(1.0, -self.p_max as f64 * phi);
        let mut acc = C64::new(0.0, 0.0);
        for terms in &self.by_p {
            if !terms.is_empty() {
                let mut s = C64::new(0.0, 0.0);
                for &(pos, c) in terms {
                    s += c * d_flat[pos];
                }
                acc += s * ph;
            }
            ph *= step;
        }
        acc
    }
}

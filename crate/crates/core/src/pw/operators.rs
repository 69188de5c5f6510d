//! `û_{ij}`, the generators `L_α` and the kinetic term in the Peter–Weyl basis.
//!
//! Conventions: `T_a = −(i/2)σ_a` for `a = 1, 2, 3` and `T_4 = −(i/2)𝟙`, so
//! `Tr T_α T_β = −½ δ_αβ`. `L_α` is the antihermitian generator of
//! `f(u) ↦ f(e^{−tT_α} u)`, which gives `[L_α, û] = −T_α û`. The kinetic
//! energy is `−(1/2I) Σ L_α²`, diagonal with eigenvalue `C(p, j)/2I`.

use alloc::collections::BTreeMap;
use alloc::vec::Vec;

#[allow(unused_imports)]
use num_traits::Float;

use super::basis::{Label, PwBasis};
use super::wigner::{angular_momentum, cg_half, m_index};
use crate::error::{param, Result};
use crate::linalg::{commutator, operator_norm, CMat};
use serde::{Deserialize, Serialize};
use crate::unitary::Unitary2;
use crate::C64;

/// Coordinate-list sparse matrix.
#[derive(Debug, Clone, PartialEq)]
pub struct SparseMatrix {
    pub dim: usize,
    pub entries: Vec<(usize, usize, C64)>,
}

impl SparseMatrix {
    pub fn apply(&self, x: &[C64]) -> Vec<C64> {
        let mut y = alloc::vec![C64::new(0.0, 0.0); self.dim];
        for &(r, c, v) in &self.entries {
            y[r] += v * x[c];
        }
        y
    }

    pub fn adjoint(&self) -> Self {
        Self { dim: self.dim, entries: self.entries.iter().map(|&(r, c, v)| (c, r, v.conj())).collect() }
    }

    pub fn to_dense(&self) -> CMat {
        let mut m = CMat::zeros(self.dim, self.dim);
        for &(r, c, v) in &self.entries {
            m[(r, c)] += v;
        }
        m
    }

    pub fn from_dense(m: &CMat) -> Self {
        let mut entries = Vec::new();
        for c in 0..m.ncols() {
            for r in 0..m.nrows() {
                if m[(r, c)] != C64::new(0.0, 0.0) {
                    entries.push((r, c, m[(r, c)]));
                }
            }
        }
        Self { dim: m.nrows(), entries }
    }

    /// `max |A_rc − conj(A_cr)|` after summing duplicate entries.
    pub fn hermiticity_residual(&self) -> f64 {
        let mut acc: BTreeMap<(usize, usize), C64> = BTreeMap::new();
        for &(r, c, v) in &self.entries {
            *acc.entry((r, c)).or_default() += v;
        }
        acc.iter()
            .map(|(&(r, c), v)| (v - acc.get(&(c, r)).copied().unwrap_or_default().conj()).norm())
            .fold(0.0, f64::max)
    }

    /// Largest absolute row sum, a bound on the spectral radius.
    pub fn max_row_sum(&self) -> f64 {
        let mut rows = alloc::vec![0.0; self.dim];
        for &(r, _, v) in &self.entries {
            rows[r] += v.norm();
        }
        rows.into_iter().fold(0.0, f64::max)
    }

    /// `⟨x, A y⟩`.
    pub fn expectation(&self, x: &[C64], y: &[C64]) -> C64 {
        self.entries.iter().map(|&(r, c, v)| x[r].conj() * v * y[c]).sum()
    }
}

/// `(1/2I) C(p, j)` on every label.
pub fn kinetic_diagonal(basis: &PwBasis, inertia: f64) -> Result<Vec<f64>> {
    if !(inertia > 0.0) {
        return Err(param("moment of inertia must be positive"));
    }
    Ok(basis.labels.iter().map(|l| l.casimir() / (2.0 * inertia)).collect())
}

/// `L_1 … L_4`. For `a ≤ 3`, `L_a` acts on the left index `m` as `i J_aᵀ`;
/// `L_4 = ip/2`.
pub fn generators(basis: &PwBasis) -> [SparseMatrix; 4] {
    let js: Vec<[CMat; 3]> = (0..=basis.two_j_max).map(angular_momentum).collect();
    let i = C64::new(0.0, 1.0);
    let mut out: [SparseMatrix; 4] = core::array::from_fn(|_| SparseMatrix { dim: basis.dim(), entries: Vec::new() });
    for (col, l) in basis.labels.iter().enumerate() {
        let jm = &js[l.two_j as usize];
        let mi = m_index(l.two_j, l.two_m);
        for a in 0..3 {
            for ri in 0..=l.two_j as usize {
                let v = jm[a][(mi, ri)];
                if v.norm() == 0.0 {
                    continue;
                }
                let target = Label { two_m: super::wigner::two_m_at(l.two_j, ri), ..*l };
                let row = basis.index_of(&target).expect("same block");
                out[a].entries.push((row, col, i * v));
            }
        }
        out[3].entries.push((col, col, C64::new(0.0, l.p as f64 / 2.0)));
    }
    out
}

/// Multiplication by `u_{ik}` (row-major order `u11, u12, u21, u22`),
/// truncated to the basis.
pub fn u_operator(basis: &PwBasis) -> [SparseMatrix; 4] {
    let mut out: [SparseMatrix; 4] = core::array::from_fn(|_| SparseMatrix { dim: basis.dim(), entries: Vec::new() });
    for (col, l) in basis.labels.iter().enumerate() {
        for two_big_j in [l.two_j + 1, l.two_j.wrapping_sub(1)] {
            if two_big_j > l.two_j + 1 {
                continue;
            }
            let ratio = ((l.two_j + 1) as f64 / (two_big_j + 1) as f64).sqrt();
            for (ai, two_a) in [1i32, -1].into_iter().enumerate() {
                for (bi, two_b) in [1i32, -1].into_iter().enumerate() {
                    let (tm, tn) = (l.two_m + two_a, l.two_n + two_b);
                    if tm.unsigned_abs() > two_big_j || tn.unsigned_abs() > two_big_j {
                        continue;
                    }
                    let target = Label { p: l.p + 1, two_j: two_big_j, two_m: tm, two_n: tn };
                    let Some(row) = basis.index_of(&target) else { continue };
                    let v = ratio * cg_half(l.two_j, two_big_j, tm, two_a) * cg_half(l.two_j, two_big_j, tn, two_b);
                    if v != 0.0 {
                        out[2 * ai + bi].entries.push((row, col, C64::new(v, 0.0)));
                    }
                }
            }
        }
    }
    out
}

/// `−v Re tr(c† û) = −(v/2) Σ_ij (conj(c_ij) û_ij + h.c.)`, minimal at `u = c`.
pub fn tilt_potential(basis: &PwBasis, center: &Unitary2, v: f64) -> SparseMatrix {
    let us = u_operator(basis);
    let c = center.entries();
    let mut acc: BTreeMap<(usize, usize), C64> = BTreeMap::new();
    for k in 0..4 {
        let w = c[k].conj() * (-v / 2.0);
        for &(r, col, x) in &us[k].entries {
            *acc.entry((r, col)).or_default() += w * x;
            *acc.entry((col, r)).or_default() += (w * x).conj();
        }
    }
    SparseMatrix { dim: basis.dim(), entries: acc.into_iter().filter(|(_, v)| *v != C64::new(0.0, 0.0)).map(|((r, c), v)| (r, c, v)).collect() }
}

/// `T_1 … T_4` as 2×2 matrices in row-major order.
pub fn lie_generators() -> [[C64; 4]; 4] {
    let z = C64::new(0.0, 0.0);
    let h = C64::new(0.0, -0.5);
    let r = C64::new(-0.5, 0.0);
    [[z, h, h, z], [z, r, -r, z], [h, z, z, -h], [h, z, z, h]]
}

/// Residuals of the operator relations, restricted to the interior sub-basis
/// where the truncation is invisible (operator norms).
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct AlgebraReport {
    /// `max ‖[L_α, L_β] − c^γ_{αβ} L_γ‖`.
    pub generator_algebra: f64,
    /// `max ‖[L_α, û_ij] + (T_α û)_ij‖`.
    pub shift_relation: f64,
    /// `max ‖(û†û − 𝟙)_jk‖` and `‖(ûû† − 𝟙)_ij‖`.
    pub unitarity: f64,
    /// `max ‖[û_ij, û_kl]‖`.
    pub commutativity: f64,
    pub interior_dim: usize,
}

impl AlgebraReport {
    pub fn max(&self) -> f64 {
        self.generator_algebra.max(self.shift_relation).max(self.unitarity).max(self.commutativity)
    }
}

pub fn algebra_residuals(basis: &PwBasis) -> AlgebraReport {
    let dim = basis.dim();
    let int = basis.interior_indices();
    let restrict = |m: &CMat| operator_norm(&CMat::from_fn(m.nrows(), int.len(), |r, c| m[(r, int[c])]));
    let l: Vec<CMat> = generators(basis).iter().map(|s| s.to_dense()).collect();
    let u: Vec<CMat> = u_operator(basis).iter().map(|s| s.to_dense()).collect();
    let t = lie_generators();
    let id = CMat::identity(dim, dim);
    let mut generator_algebra: f64 = 0.0;
    for x in 0..4 {
        for y in 0..4 {
            let tc = crate::unitary::mat2_mul(&t[x], &t[y]);
            let tc2 = crate::unitary::mat2_mul(&t[y], &t[x]);
            let br: Vec<C64> = (0..4).map(|k| tc[k] - tc2[k]).collect();
            let mut rhs = CMat::zeros(dim, dim);
            for z in 0..4 {
                // Tr T_z T_w = −½ δ_zw
                let c = -2.0 * (br[0] * t[z][0] + br[1] * t[z][2] + br[2] * t[z][1] + br[3] * t[z][3]);
                rhs += &l[z] * c;
            }
            generator_algebra = generator_algebra.max(restrict(&(commutator(&l[x], &l[y]) - rhs)));
        }
    }
    let mut shift_relation: f64 = 0.0;
    for a in 0..4 {
        for i in 0..2 {
            for j in 0..2 {
                let lhs = commutator(&l[a], &u[2 * i + j]);
                let rhs = -(&u[j] * t[a][2 * i] + &u[2 + j] * t[a][2 * i + 1]);
                shift_relation = shift_relation.max(restrict(&(lhs - rhs)));
            }
        }
    }
    let mut unitarity: f64 = 0.0;
    for j in 0..2 {
        for k in 0..2 {
            let delta = if j == k { 1.0 } else { 0.0 };
            let a = u[j].adjoint() * &u[k] + u[2 + j].adjoint() * &u[2 + k];
            let c = &u[2 * j] * u[2 * k].adjoint() + &u[2 * j + 1] * u[2 * k + 1].adjoint();
            for m in [a, c] {
                unitarity = unitarity.max(restrict(&(m - &id * C64::new(delta, 0.0))));
            }
        }
    }
    let mut commutativity: f64 = 0.0;
    for x in 0..4 {
        for y in 0..4 {
            commutativity = commutativity.max(restrict(&commutator(&u[x], &u[y])));
        }
    }
    AlgebraReport { generator_algebra, shift_relation, unitarity, commutativity, interior_dim: int.len() }
}

#[cfg(test)]
mod tests {
    use super::super::basis::build_basis;
    use super::*;
    use crate::linalg::{commutator, operator_norm};

    fn restrict_cols(m: &CMat, cols: &[usize]) -> CMat {
        CMat::from_fn(m.nrows(), cols.len(), |r, c| m[(r, cols[c])])
    }

    #[test]
    fn lie_generator_normalization() {
        let t = lie_generators();
        for a in 0..4 {
            for b in 0..4 {
                let p = crate::unitary::mat2_mul(&t[a], &t[b]);
                let tr = p[0] + p[3];
                let want = if a == b { -0.5 } else { 0.0 };
                assert!((tr - want).norm() < 1e-15);
            }
        }
    }

    #[test]
    fn generator_algebra() {
        let b = build_basis(2, 3).unwrap();
        let l: Vec<CMat> = generators(&b).iter().map(|s| s.to_dense()).collect();
        let t = lie_generators();
        for x in 0..4 {
            for y in 0..4 {
                let lhs = commutator(&l[x], &l[y]);
                let tc = crate::unitary::mat2_mul(&t[x], &t[y]);
                let tc2 = crate::unitary::mat2_mul(&t[y], &t[x]);
                let br: Vec<C64> = (0..4).map(|k| tc[k] - tc2[k]).collect();
                // structure constants from [T_x, T_y] = c^z T_z, Tr T_z T_w = −½δ
                let mut rhs = CMat::zeros(b.dim(), b.dim());
                for z in 0..4 {
                    let c = -2.0 * (br[0] * t[z][0] + br[1] * t[z][2] + br[2] * t[z][1] + br[3] * t[z][3]);
                    rhs += &l[z] * c;
                }
                assert!(operator_norm(&(lhs - rhs)) < 1e-10, "{x} {y}");
            }
        }
    }

    #[test]
    fn casimir_from_generators() {
        let b = build_basis(2, 3).unwrap();
        let l: Vec<CMat> = generators(&b).iter().map(|s| s.to_dense()).collect();
        let neg: CMat = -l.iter().map(|x| x * x).fold(CMat::zeros(b.dim(), b.dim()), |a, x| a + x);
        let kin = kinetic_diagonal(&b, 0.5).unwrap();
        for r in 0..b.dim() {
            for c in 0..b.dim() {
                let want = if r == c { kin[r] } else { 0.0 };
                assert!((neg[(r, c)] - want).norm() < 1e-12);
            }
        }
    }

    #[test]
    fn kinetic_values() {
        let b = build_basis(1, 1).unwrap();
        let k = kinetic_diagonal(&b, 1.0).unwrap();
        let at = |p: i32, tj: u32| k[b.labels.iter().position(|l| l.p == p && l.two_j == tj).unwrap()];
        assert_eq!(at(0, 0), 0.0);
        assert!((at(1, 1) - 0.5).abs() < 1e-15);
        let k2 = kinetic_diagonal(&b, 2.0).unwrap();
        assert!(k.iter().zip(&k2).all(|(a, b)| (a - 2.0 * b).abs() < 1e-15));
        assert!(kinetic_diagonal(&b, 0.0).is_err());
    }

    #[test]
    fn u_relations_on_interior() {
        let b = build_basis(3, 4).unwrap();
        let int = b.interior_indices();
        let u: Vec<CMat> = u_operator(&b).iter().map(|s| s.to_dense()).collect();
        let id = CMat::identity(b.dim(), b.dim());
        // Σ_i û_{ij}† û_{ik} = δ_jk and Σ_k û_{ik} û_{jk}† = δ_ij
        for j in 0..2 {
            for k in 0..2 {
                let delta = if j == k { 1.0 } else { 0.0 };
                let a = u[j].adjoint() * &u[k] + u[2 + j].adjoint() * &u[2 + k];
                let c = &u[2 * j] * u[2 * k].adjoint() + &u[2 * j + 1] * u[2 * k + 1].adjoint();
                for m in [a, c] {
                    let r = restrict_cols(&(m - &id * C64::new(delta, 0.0)), &int);
                    assert!(operator_norm(&r) <= 1e-8);
                }
            }
        }
        for x in 0..4 {
            for y in 0..4 {
                let r = restrict_cols(&commutator(&u[x], &u[y]), &int);
                assert!(operator_norm(&r) <= 1e-8);
            }
        }
        // truncation shows up on the boundary shell
        let full = u[0].adjoint() * &u[0] + u[2].adjoint() * &u[2] - &id;
        assert!(operator_norm(&full) > 0.1);
    }

    #[test]
    fn generators_shift_u() {
        let b = build_basis(3, 4).unwrap();
        let int = b.interior_indices();
        let u: Vec<CMat> = u_operator(&b).iter().map(|s| s.to_dense()).collect();
        let l: Vec<CMat> = generators(&b).iter().map(|s| s.to_dense()).collect();
        let t = lie_generators();
        for a in 0..4 {
            for i in 0..2 {
                for j in 0..2 {
                    let lhs = commutator(&l[a], &u[2 * i + j]);
                    let rhs = -(&u[j] * t[a][2 * i] + &u[2 + j] * t[a][2 * i + 1]);
                    assert!(operator_norm(&restrict_cols(&(lhs - rhs), &int)) <= 1e-8, "{a} {i} {j}");
                }
            }
        }
    }

    #[test]
    fn algebra_report_at_small_cutoff() {
        let r = algebra_residuals(&build_basis(2, 3).unwrap());
        assert!(r.max() <= 1e-10, "{r:?}");
        assert!(r.interior_dim > 0);
    }

    #[test]
    fn tilt_is_hermitian() {
        let b = build_basis(2, 2).unwrap();
        let v = tilt_potential(&b, &Unitary2::identity(), 1.3);
        assert!(v.hermiticity_residual() < 1e-14);
        assert!(crate::linalg::hermiticity_residual(&v.to_dense()) < 1e-14);
    }
}

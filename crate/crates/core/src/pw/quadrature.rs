//! Haar integrals over `U(2)`.
//!
//! Ball masses use the Weyl integration formula. Writing
//! `w = P_n e^{iθ₁} + (1 − P_n) e^{iθ₂}` with `P_n = (1 + n·σ)/2`,
//!
//! `∫ F du = (1/8π²) ∫∫ dθ₁dθ₂ |e^{iθ₁} − e^{iθ₂}|² ∫_{S²} dΩ/4π F(w)`,
//!
//! and the bi-invariant distance of `w` to `𝟙` is `(θ₁² + θ₂²)^{1/2}` for
//! `θ ∈ (−π, π]²`. A ball is then a disk in the `θ` plane (polar Gauss–Legendre
//! × trapezoid) and the sphere factor is a polynomial of bounded degree
//! (Gauss–Legendre in `cos ϑ` × trapezoid, exact). The Euler-angle product
//! grid is the independent route used for orthonormality and cross-checks.

use alloc::vec::Vec;
use core::f64::consts::{PI, TAU};

#[allow(unused_imports)]
use num_traits::Float;
use serde::{Deserialize, Serialize};

use super::basis::PwBasis;
use super::wigner::WignerTable;
use crate::error::{param, Result};
use crate::linalg::gauss_legendre;
use crate::unitary::Unitary2;
use crate::C64;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
pub struct BallRule {
    pub radial: usize,
    pub angular: usize,
    pub polar: usize,
    pub azimuthal: usize,
    /// Trapezoid nodes per eigenphase for the full-group integral.
    pub torus: usize,
}

impl BallRule {
    pub fn for_basis(basis: &PwBasis) -> Self {
        Self::for_cutoffs(basis.p_max, basis.two_j_max)
    }

    pub fn for_cutoffs(p_max: u32, two_j_max: u32) -> Self {
        let band = (p_max + two_j_max) as usize;
        Self {
            radial: band / 2 + 6,
            angular: 2 * band + 8,
            polar: two_j_max as usize + 2,
            azimuthal: 2 * two_j_max as usize + 2,
            // |f|² |Δ|² has frequencies ≤ band + 1 in each eigenphase
            torus: band + 2,
        }
    }

    pub fn refined(&self) -> Self {
        Self {
            radial: 2 * self.radial,
            angular: 2 * self.angular,
            polar: self.polar + 2,
            azimuthal: self.azimuthal + 4,
            torus: 2 * self.torus,
        }
    }
}

fn sphere_nodes(polar: usize, azimuthal: usize) -> Vec<([f64; 3], f64)> {
    let (xs, ws) = gauss_legendre(polar);
    let mut out = Vec::with_capacity(polar * azimuthal);
    for (z, wz) in xs.iter().zip(&ws) {
        let rho = (1.0 - z * z).max(0.0).sqrt();
        for k in 0..azimuthal {
            let a = TAU * k as f64 / azimuthal as f64;
            out.push(([rho * a.cos(), rho * a.sin(), *z], wz / 2.0 / azimuthal as f64));
        }
    }
    out
}

/// `P_n e^{iθ₁} + (1 − P_n) e^{iθ₂}`.
pub fn torus_element(t1: f64, t2: f64, n: [f64; 3]) -> Unitary2 {
    let (e1, e2) = (C64::from_polar(1.0, t1), C64::from_polar(1.0, t2));
    let half = C64::new(0.5, 0.0);
    let p = [
        half * (1.0 + n[2]),
        half * C64::new(n[0], -n[1]),
        half * C64::new(n[0], n[1]),
        half * (1.0 - n[2]),
    ];
    let id = [C64::new(1.0, 0.0), C64::new(0.0, 0.0), C64::new(0.0, 0.0), C64::new(1.0, 0.0)];
    Unitary2::from_entries_unchecked(core::array::from_fn(|k| p[k] * e1 + (id[k] - p[k]) * e2))
}

pub(crate) fn weyl_density(t1: f64, t2: f64) -> f64 {
    (2.0 - 2.0 * (t1 - t2).cos()) / (8.0 * PI * PI)
}

/// `∫_{d(u, center) ≤ δ} F(u) du` for `δ < π`.
pub fn ball_integral(center: &Unitary2, delta: f64, rule: &BallRule, mut f: impl FnMut(&Unitary2) -> f64) -> Result<f64> {
    if !(delta > 0.0 && delta < PI) {
        return Err(param("ball radius must lie in (0, π)"));
    }
    let (rs, rw) = gauss_legendre(rule.radial);
    let sphere = sphere_nodes(rule.polar, rule.azimuthal);
    let mut acc = 0.0;
    for (x, wx) in rs.iter().zip(&rw) {
        let r = 0.5 * delta * (x + 1.0);
        let wr = 0.5 * delta * wx * r;
        for k in 0..rule.angular {
            let psi = TAU * k as f64 / rule.angular as f64;
            let (t1, t2) = (r * psi.cos(), r * psi.sin());
            let w0 = wr * TAU / rule.angular as f64 * weyl_density(t1, t2);
            for (n, wn) in &sphere {
                let u = center.mul(&torus_element(t1, t2, *n));
                acc += w0 * wn * f(&u);
            }
        }
    }
    Ok(acc)
}

/// `∫ F(u) du` over the whole group through the Weyl formula.
pub fn group_integral(rule: &BallRule, mut f: impl FnMut(&Unitary2) -> f64) -> f64 {
    let sphere = sphere_nodes(rule.polar, rule.azimuthal);
    let n = rule.torus;
    let h = TAU / n as f64;
    let mut acc = 0.0;
    for a in 0..n {
        for b in 0..n {
            let (t1, t2) = (-PI + a as f64 * h, -PI + b as f64 * h);
            let w0 = h * h * weyl_density(t1, t2);
            if w0 == 0.0 {
                continue;
            }
            for (nv, wn) in &sphere {
                acc += w0 * wn * f(&torus_element(t1, t2, *nv));
            }
        }
    }
    acc
}

/// Haar volume of a ball of radius `δ` by quadrature.
pub fn ball_volume(delta: f64, rule: &BallRule) -> Result<f64> {
    ball_integral(&Unitary2::identity(), delta, rule, |_| 1.0)
}

/// `∫_{ball} |Σ c_ℓ χ_ℓ|² du`.
pub fn ball_mass(basis: &PwBasis, coeffs: &[C64], center: &Unitary2, delta: f64, rule: &BallRule) -> Result<f64> {
    let table = WignerTable::new(basis.two_j_max);
    let plan = basis.plan(coeffs);
    let mut buf = Vec::new();
    ball_integral(center, delta, rule, |u| {
        let phi = table.fill(u, &mut buf);
        plan.eval(phi, &buf).norm_sqr()
    })
}

/// `∫ |Σ c_ℓ χ_ℓ|² du`, equal to `Σ |c_ℓ|²` up to quadrature error.
pub fn total_mass(basis: &PwBasis, coeffs: &[C64], rule: &BallRule) -> f64 {
    let table = WignerTable::new(basis.two_j_max);
    let plan = basis.plan(coeffs);
    let mut buf = Vec::new();
    group_integral(rule, |u| {
        let phi = table.fill(u, &mut buf);
        plan.eval(phi, &buf).norm_sqr()
    })
}

/// Euler-angle product grid: `u = e^{iφ} e^{−iαJ_z} e^{−iβJ_y} e^{−iγJ_z}` with
/// `φ ∈ [0, π)` (the `ℤ₂` quotient), `α ∈ [0, 2π)`, `cos β` Gauss–Legendre and
/// `γ ∈ [0, 4π)`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
pub struct EulerRule {
    pub phi: usize,
    pub alpha: usize,
    pub beta: usize,
    pub gamma: usize,
}

impl EulerRule {
    /// Exact for products of two basis functions.
    pub fn for_basis(basis: &PwBasis) -> Self {
        let tj = basis.two_j_max as usize;
        Self { phi: basis.p_max as usize + tj + 2, alpha: 2 * tj + 2, beta: tj + 2, gamma: 2 * tj + 2 }
    }

    pub fn nodes(&self) -> Vec<(Unitary2, f64)> {
        let (xs, ws) = gauss_legendre(self.beta);
        let mut out = Vec::with_capacity(self.phi * self.alpha * self.beta * self.gamma);
        for i in 0..self.phi {
            let phi = PI * i as f64 / self.phi as f64;
            for a in 0..self.alpha {
                let alpha = TAU * a as f64 / self.alpha as f64;
                for (x, wx) in xs.iter().zip(&ws) {
                    let beta = x.acos();
                    for g in 0..self.gamma {
                        let gamma = 2.0 * TAU * g as f64 / self.gamma as f64;
                        let (c, s) = ((beta / 2.0).cos(), (beta / 2.0).sin());
                        let e = [
                            C64::from_polar(c, phi - (alpha + gamma) / 2.0),
                            C64::from_polar(-s, phi - (alpha - gamma) / 2.0),
                            C64::from_polar(s, phi + (alpha - gamma) / 2.0),
                            C64::from_polar(c, phi + (alpha + gamma) / 2.0),
                        ];
                        let w = wx / 2.0 / (self.phi * self.alpha * self.gamma) as f64;
                        out.push((Unitary2::from_entries_unchecked(e), w));
                    }
                }
            }
        }
        out
    }
}

/// Gram matrix `∫ conj(χ_ℓ) χ_ℓ′ du` on the Euler grid.
pub fn gram_matrix(basis: &PwBasis, rule: &EulerRule) -> crate::linalg::CMat {
    let table = WignerTable::new(basis.two_j_max);
    let n = basis.dim();
    let mut g = crate::linalg::CMat::zeros(n, n);
    for (u, w) in rule.nodes() {
        let (phi, ds) = table.matrices(&u);
        let v = basis.eval_with(phi, &ds);
        for r in 0..n {
            let a = v[r].conj() * w;
            for c in 0..n {
                g[(r, c)] += a * v[c];
            }
        }
    }
    g
}

/// `∫ conj(χ_ℓ) F(u) χ_ℓ′ du` on the Euler grid, for a real function `F`.
pub fn multiplication_matrix(basis: &PwBasis, rule: &EulerRule, mut f: impl FnMut(&Unitary2) -> f64) -> crate::linalg::CMat {
    let table = WignerTable::new(basis.two_j_max);
    let n = basis.dim();
    let mut g = crate::linalg::CMat::zeros(n, n);
    for (u, w) in rule.nodes() {
        let fv = f(&u) * w;
        if fv == 0.0 {
            continue;
        }
        let (phi, ds) = table.matrices(&u);
        let v = basis.eval_with(phi, &ds);
        for r in 0..n {
            let a = v[r].conj() * fv;
            for c in 0..n {
                g[(r, c)] += a * v[c];
            }
        }
    }
    g
}

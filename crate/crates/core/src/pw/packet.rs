//! Heat-kernel packets on `U(2)` and their distribution over the two
//! classical topologies.

use alloc::vec::Vec;

#[allow(unused_imports)]
use num_traits::Float;
use serde::{Deserialize, Serialize};

use super::basis::PwBasis;
use super::operators::SparseMatrix;
use super::basis::casimir;
use super::quadrature::{ball_mass, total_mass, weyl_density, BallRule};
use crate::linalg::gauss_legendre;
use crate::error::{param, Error, Result};
use crate::unitary::Unitary2;
use crate::C64;

/// Boundary-shell weight above which a packet is flagged as truncated.
pub const TRUNCATION_WARNING: f64 = 0.01;

/// `f(u) = Σ c_ℓ χ_ℓ(u)`.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct PeterWeylState {
    pub coeffs: Vec<C64>,
    /// Weight on labels outside the interior sub-basis.
    pub boundary_weight: f64,
    pub truncation_warning: bool,
}

impl PeterWeylState {
    pub fn from_coeffs(basis: &PwBasis, coeffs: Vec<C64>) -> Result<Self> {
        if coeffs.len() != basis.dim() {
            return Err(param("coefficient count does not match the basis"));
        }
        let norm = coeffs.iter().map(|c| c.norm_sqr()).sum::<f64>();
        if !(norm > 0.0 && norm.is_finite()) {
            return Err(param("state has no finite nonzero norm"));
        }
        let shell: f64 = basis.labels.iter().zip(&coeffs).filter(|(l, _)| !basis.is_interior(l)).map(|(_, c)| c.norm_sqr()).sum();
        let boundary_weight = shell / norm;
        Ok(Self { coeffs, boundary_weight, truncation_warning: boundary_weight > TRUNCATION_WARNING })
    }

    pub fn norm(&self) -> f64 {
        self.coeffs.iter().map(|c| c.norm_sqr()).sum::<f64>().sqrt()
    }

    pub fn normalized(mut self) -> Self {
        let n = self.norm();
        self.coeffs.iter_mut().for_each(|c| *c /= n);
        self
    }

    /// `⟨f| û_k |f⟩ / ⟨f|f⟩` for each `û` in row-major order.
    pub fn expect_u(&self, u_ops: &[SparseMatrix; 4]) -> [C64; 4] {
        let n2 = self.norm().powi(2);
        core::array::from_fn(|k| u_ops[k].expectation(&self.coeffs, &self.coeffs) / n2)
    }
}

/// `c_ℓ ∝ e^{−τ C(p,j)} conj(χ_ℓ(u₀))`: the truncated heat kernel at time `τ`
/// centred at `u₀`, normalized.
pub fn coherent_packet(u0: &Unitary2, tau: f64, basis: &PwBasis) -> Result<PeterWeylState> {
    if !(tau > 0.0) {
        return Err(param("packet width must be positive"));
    }
    let vals = basis.eval(u0);
    let coeffs = basis.labels.iter().zip(vals).map(|(l, v)| v.conj() * (-tau * l.casimir()).exp()).collect();
    Ok(PeterWeylState::from_coeffs(basis, coeffs)?.normalized())
}

/// Centres of the two topology balls.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct TopologyCenters {
    /// One circle of length 4π.
    pub a: Unitary2,
    /// Two circles.
    pub b: Unitary2,
}

impl Default for TopologyCenters {
    fn default() -> Self {
        Self { a: Unitary2::swap(), b: Unitary2::identity() }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct TopologyDistribution {
    pub p_a: f64,
    pub p_b: f64,
    /// Full-group mass minus the two balls.
    pub p_other: f64,
    /// Full-group quadrature of `|f|²` over `‖c‖²`; 1 up to quadrature error.
    pub total: f64,
    pub delta: f64,
}

/// Fractions of `∫|f|²` inside the balls of radius `δ` around the centres.
pub fn topology_distribution(
    state: &PeterWeylState,
    basis: &PwBasis,
    centers: &TopologyCenters,
    delta: f64,
    rule: &BallRule,
) -> Result<TopologyDistribution> {
    let sep = centers.a.haar_distance(&centers.b);
    if 2.0 * delta >= sep {
        return Err(Error::Parameter(alloc::format!("balls of radius {delta} overlap (centres {sep} apart)")));
    }
    let n2 = state.norm().powi(2);
    let ma = ball_mass(basis, &state.coeffs, &centers.a, delta, rule)?;
    let mb = ball_mass(basis, &state.coeffs, &centers.b, delta, rule)?;
    let tot = total_mass(basis, &state.coeffs, rule);
    Ok(TopologyDistribution { p_a: ma / n2, p_b: mb / n2, p_other: (tot - ma - mb) / n2, total: tot / n2, delta })
}

/// Fraction of a freely evolved packet (`V = 0`) left in the ball of radius
/// `δ` around its own centre after time `t`.
///
/// The packet is a class function of `u₀⁻¹u`: with eigenphases `θ₁, θ₂`,
/// `f_t = Σ_{p,j} (2j+1) e^{−(τ + it/2I) C(p,j)} e^{ip(θ₁+θ₂)/2} χ_j` and
/// `χ_j = Σ_k e^{i(j−k)(θ₁−θ₂)}`, so the ball mass is a disk integral in the
/// eigenphase plane. The result does not depend on `u₀`, on a basis or on
/// a Wigner table, and serves as an independent route for large cutoffs.
pub fn heat_kernel_ball_fraction(
    p_max: u32,
    two_j_max: u32,
    tau: f64,
    t: f64,
    inertia: f64,
    delta: f64,
    rule: &BallRule,
) -> Result<f64> {
    if !(tau > 0.0) || !(inertia > 0.0) {
        return Err(param("packet width and moment of inertia must be positive"));
    }
    if !(delta > 0.0 && delta < core::f64::consts::PI) {
        return Err(param("ball radius must lie in (0, π)"));
    }
    let mut modes = Vec::new();
    let mut n2 = 0.0;
    for two_j in 0..=two_j_max {
        for p in -(p_max as i32)..=p_max as i32 {
            if (p + two_j as i32).rem_euclid(2) != 0 {
                continue;
            }
            let c = casimir(p, two_j);
            let w = (two_j + 1) as f64;
            n2 += (-2.0 * tau * c).exp() * w * w;
            let amp = C64::from_polar(w * (-tau * c).exp(), -t * c / (2.0 * inertia));
            modes.push((p, two_j, amp));
        }
    }
    let (rs, rw) = gauss_legendre(rule.radial);
    let mut acc = 0.0;
    for (x, wx) in rs.iter().zip(&rw) {
        let r = 0.5 * delta * (x + 1.0);
        let wr = 0.5 * delta * wx * r;
        for k in 0..rule.angular {
            let a = core::f64::consts::TAU * k as f64 / rule.angular as f64;
            let (t1, t2) = (r * a.cos(), r * a.sin());
            let (phi, psi) = (0.5 * (t1 + t2), 0.5 * (t1 - t2));
            let f: C64 = modes
                .iter()
                .map(|&(p, two_j, amp)| {
                    let chi: C64 = (0..=two_j).map(|k| C64::from_polar(1.0, (two_j as f64 - 2.0 * k as f64) * psi)).sum();
                    amp * C64::from_polar(1.0, p as f64 * phi) * chi
                })
                .sum();
            acc += wr * core::f64::consts::TAU / rule.angular as f64 * weyl_density(t1, t2) * f.norm_sqr();
        }
    }
    Ok(acc / n2)
}

#[cfg(test)]
mod tests {
    use super::super::basis::build_basis;
    use super::super::operators::u_operator;
    use super::super::quadrature::ball_volume;
    use super::*;
    use crate::rng;

    #[test]
    fn constant_function() {
        let b = build_basis(1, 1).unwrap();
        let mut c = alloc::vec![C64::new(0.0, 0.0); b.dim()];
        c[b.index_of(&super::super::Label { p: 0, two_j: 0, two_m: 0, two_n: 0 }).unwrap()] = C64::new(1.0, 0.0);
        let s = PeterWeylState::from_coeffs(&b, c).unwrap();
        let rule = BallRule::for_basis(&b);
        let d = topology_distribution(&s, &b, &TopologyCenters::default(), 0.8, &rule).unwrap();
        let vol = ball_volume(0.8, &rule).unwrap();
        assert!((d.p_a - vol).abs() < 1e-12 && (d.p_b - vol).abs() < 1e-12);
        assert!((d.p_a + d.p_b + d.p_other - 1.0).abs() <= 1e-8);
    }

    #[test]
    fn wide_packet_is_nearly_constant() {
        let b = build_basis(2, 2).unwrap();
        let s = coherent_packet(&Unitary2::swap(), 40.0, &b).unwrap();
        let i = b.index_of(&super::super::Label { p: 0, two_j: 0, two_m: 0, two_n: 0 }).unwrap();
        assert!((s.coeffs[i].norm() - 1.0).abs() < 1e-12);
    }

    #[test]
    fn packet_peaks_at_its_centre() {
        let b = build_basis(3, 3).unwrap();
        let u0 = Unitary2::swap();
        let s = coherent_packet(&u0, 0.3, &b).unwrap();
        let peak = b.eval_function(&s.coeffs, &u0).norm_sqr();
        let mut r = rng(12);
        for _ in 0..200 {
            let u = Unitary2::random(&mut r);
            assert!(b.eval_function(&s.coeffs, &u).norm_sqr() <= peak);
        }
        assert!((s.norm() - 1.0).abs() < 1e-15);
    }

    #[test]
    fn class_function_route_matches_basis_route() {
        let b = build_basis(3, 3).unwrap();
        let rule = BallRule::for_basis(&b);
        let (tau, inertia, delta) = (0.3, 1.0, 1.2);
        for u0 in [Unitary2::swap(), Unitary2::mixing()] {
            let s = coherent_packet(&u0, tau, &b).unwrap();
            for t in [0.0, 0.7, 2.5] {
                let c: Vec<C64> =
                    b.labels.iter().zip(&s.coeffs).map(|(l, c)| c * C64::from_polar(1.0, -t * l.casimir() / (2.0 * inertia))).collect();
                let st = PeterWeylState::from_coeffs(&b, c).unwrap();
                let general = ball_mass(&b, &st.coeffs, &u0, delta, &rule).unwrap();
                let class = heat_kernel_ball_fraction(3, 3, tau, t, inertia, delta, &rule).unwrap();
                assert!((general - class).abs() <= 1e-8, "{t}: {general} {class}");
            }
        }
    }

    #[test]
    fn overlapping_balls_refused() {
        let b = build_basis(1, 1).unwrap();
        let s = coherent_packet(&Unitary2::swap(), 0.3, &b).unwrap();
        let e = topology_distribution(&s, &b, &TopologyCenters::default(), 1.6, &BallRule::for_basis(&b));
        assert!(e.is_err());
    }

    #[test]
    fn expectation_approaches_centre() {
        let b = build_basis(8, 8).unwrap();
        let us = u_operator(&b);
        let u0 = Unitary2::mixing();
        let mut errs = Vec::new();
        for tau in [0.8, 0.4, 0.2] {
            let s = coherent_packet(&u0, tau, &b).unwrap();
            let e = s.expect_u(&us);
            errs.push((0..4).map(|k| (e[k] - u0.entries()[k]).norm()).fold(0.0, f64::max));
        }
        assert!(errs[0] > errs[1] && errs[1] > errs[2], "{errs:?}");
        assert!(errs[2] < 0.25, "{errs:?}");
    }

    #[test]
    fn truncation_flag() {
        let b = build_basis(1, 1).unwrap();
        assert!(coherent_packet(&Unitary2::swap(), 0.05, &b).unwrap().truncation_warning);
        let b = build_basis(8, 8).unwrap();
        assert!(!coherent_packet(&Unitary2::swap(), 0.5, &b).unwrap().truncation_warning);
    }
}

//! Boundary form of `−d²/dx²` on two intervals and the domains `D_u`.
//!
//! Integrating by parts, `(ψ, Hχ) − (Hψ, χ) = B(ψ, χ)` with
//! `B(ψ, χ) = Σᵢ [−ψᵢ* χᵢ′ + ψᵢ*′ χᵢ]` evaluated from `0` to `2π`.
//! On `D_u` the endpoint traces satisfy `ψ(2π) = uψ(0)` and the same for
//! derivatives, so `B = (u…)†(u…) − (…)(…) = 0` by unitarity.

#[allow(unused_imports)]
use num_traits::Float;
use alloc::vec::Vec;

use rand::Rng as _;
use rand_distr::StandardNormal;
use serde::{Deserialize, Serialize};

use crate::error::Result;
use crate::spectrum::analytic_states;
use crate::unitary::Unitary2;
use crate::wave::{endpoint_derivatives, inner_product, Representation, TwoIntervalWave};
use crate::{Rng, C64, INTERVAL_LENGTH as L};

/// Endpoint values and first derivatives of both components.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct BoundaryData {
    /// `ψ(0)`.
    pub start: [C64; 2],
    /// `ψ(2π)`.
    pub end: [C64; 2],
    /// `ψ′(0)`.
    pub d_start: [C64; 2],
    /// `ψ′(2π)`.
    pub d_end: [C64; 2],
}

impl BoundaryData {
    /// Analytic traces for closed-form waves, one-sided fourth-order stencils
    /// for grids (`P ≥ 5`).
    pub fn extract(psi: &TwoIntervalWave) -> Result<Self> {
        match &psi.representation {
            Representation::Mode(t) => {
                let at = |i: usize, x: f64, r: u32| t.iter().map(|m| m.derivative(i, x, r)).sum::<C64>();
                Ok(Self {
                    start: [at(0, 0.0, 0), at(1, 0.0, 0)],
                    end: [at(0, L, 0), at(1, L, 0)],
                    d_start: [at(0, 0.0, 1), at(1, 0.0, 1)],
                    d_end: [at(0, L, 1), at(1, L, 1)],
                })
            }
            Representation::Grid(g) => {
                let h = g.spacing();
                let (a0, a1) = endpoint_derivatives(&g.samples[0], h)?;
                let (b0, b1) = endpoint_derivatives(&g.samples[1], h)?;
                let p = g.points();
                Ok(Self {
                    start: [g.samples[0][0], g.samples[1][0]],
                    end: [g.samples[0][p - 1], g.samples[1][p - 1]],
                    d_start: [a0, b0],
                    d_end: [a1, b1],
                })
            }
        }
    }
}

/// `B(ψ, χ)` from boundary traces.
pub fn boundary_form_data(psi: &BoundaryData, chi: &BoundaryData) -> C64 {
    let mut total = C64::new(0.0, 0.0);
    for i in 0..2 {
        let end = -psi.end[i].conj() * chi.d_end[i] + psi.d_end[i].conj() * chi.end[i];
        let start = -psi.start[i].conj() * chi.d_start[i] + psi.d_start[i].conj() * chi.start[i];
        total += end - start;
    }
    total
}

/// `B(ψ, χ) = Σᵢ [−ψᵢ* χᵢ′ + ψᵢ*′ χᵢ]₀^{2π}`.
pub fn boundary_form(psi: &TwoIntervalWave, chi: &TwoIntervalWave) -> Result<C64> {
    Ok(boundary_form_data(&BoundaryData::extract(psi)?, &BoundaryData::extract(chi)?))
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct DomainCheck {
    pub inside: bool,
    /// `‖ψ(2π) − uψ(0)‖`.
    pub value_residual: f64,
    /// `‖ψ′(2π) − uψ′(0)‖`.
    pub derivative_residual: f64,
    /// Tolerance actually applied.
    pub tol: f64,
}

fn vec_norm(v: [C64; 2]) -> f64 {
    (v[0].norm_sqr() + v[1].norm_sqr()).sqrt()
}

/// Membership in `D_u`. Grid waves get the tolerance `max(tol, 10·Δx⁴·‖ψ‖)`.
///
/// Waves whose boundary data cannot be extracted are reported outside with
/// infinite residuals.
pub fn in_domain(psi: &TwoIntervalWave, u: &Unitary2, tol: f64) -> DomainCheck {
    let Ok(b) = BoundaryData::extract(psi) else {
        return DomainCheck { inside: false, value_residual: f64::INFINITY, derivative_residual: f64::INFINITY, tol };
    };
    let tol = match &psi.representation {
        Representation::Grid(g) => tol.max(10.0 * g.spacing().powi(4) * psi.norm()),
        Representation::Mode(_) => tol,
    };
    let ub = u.apply(b.start);
    let ud = u.apply(b.d_start);
    let value_residual = vec_norm([b.end[0] - ub[0], b.end[1] - ub[1]]);
    let derivative_residual = vec_norm([b.d_end[0] - ud[0], b.d_end[1] - ud[1]]);
    DomainCheck { inside: value_residual <= tol && derivative_residual <= tol, value_residual, derivative_residual, tol }
}

/// Number of lowest analytic eigenmodes mixed into each random probe.
pub const PROBE_MODES: usize = 8;

fn complex_normal(rng: &mut Rng) -> C64 {
    C64::new(rng.sample(StandardNormal), rng.sample(StandardNormal))
}

/// Normalized random combination of the lowest analytic eigenmodes of `u`;
/// it lies in `D_u` by construction.
pub fn random_domain_probe(u: &Unitary2, rng: &mut Rng) -> TwoIntervalWave {
    let states = analytic_states(u, ((PROBE_MODES / 2 + 1) as f64).powi(2));
    let mut terms = Vec::new();
    for s in states.iter().take(PROBE_MODES) {
        let c = complex_normal(rng);
        terms.extend(s.wave().scale(c).terms().unwrap().iter().copied());
    }
    TwoIntervalWave::from_terms(terms).normalized().with_domain_tag(*u)
}

/// Normalized random trigonometric wave with no relation to any `D_u`.
pub fn random_free_probe(rng: &mut Rng) -> TwoIntervalWave {
    let mut terms = Vec::new();
    for _ in 0..3 {
        let k: f64 = rng.gen_range(0.2..3.0);
        let a = [complex_normal(rng), complex_normal(rng)];
        let b = [complex_normal(rng), complex_normal(rng)];
        terms.extend(TwoIntervalWave::trig(k, a, b).terms().unwrap().iter().copied());
    }
    TwoIntervalWave::from_terms(terms).normalized()
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct SymmetryReport {
    pub u: Unitary2,
    /// Max `|B(ψ, χ)|` over all ordered pairs of in-domain probes.
    pub max_residual_in_domain: f64,
    /// Max `|B(ψ, χ)|` over distinct pairs of out-of-domain probes.
    pub max_residual_out_domain: f64,
    pub median_residual_out_domain: f64,
    pub n_probes: usize,
    pub seed: u64,
}

/// Empirical check of `B(ψ, χ) = 0` on `D_u`, with the complementary check
/// on probes outside `D_u`.
pub fn verify_symmetry(u: &Unitary2, n_probes: usize, seed: u64) -> Result<SymmetryReport> {
    if n_probes < 2 {
        return Err(crate::error::param("verify_symmetry needs at least 2 probes"));
    }
    let mut rng = crate::rng(seed);
    let inside: Vec<BoundaryData> = (0..n_probes)
        .map(|_| BoundaryData::extract(&random_domain_probe(u, &mut rng)))
        .collect::<Result<_>>()?;
    let outside: Vec<BoundaryData> = (0..n_probes)
        .map(|_| BoundaryData::extract(&random_free_probe(&mut rng)))
        .collect::<Result<_>>()?;
    let mut max_in: f64 = 0.0;
    for a in &inside {
        for b in &inside {
            max_in = max_in.max(boundary_form_data(a, b).norm());
        }
    }
    let mut out = Vec::new();
    for (i, a) in outside.iter().enumerate() {
        for b in &outside[i + 1..] {
            out.push(boundary_form_data(a, b).norm());
        }
    }
    out.sort_by(f64::total_cmp);
    Ok(SymmetryReport {
        u: *u,
        max_residual_in_domain: max_in,
        max_residual_out_domain: out.last().copied().unwrap_or(0.0),
        median_residual_out_domain: median(&out),
        n_probes,
        seed,
    })
}

pub(crate) fn median(sorted: &[f64]) -> f64 {
    match sorted.len() {
        0 => 0.0,
        n if n % 2 == 1 => sorted[n / 2],
        n => 0.5 * (sorted[n / 2 - 1] + sorted[n / 2]),
    }
}

/// `(ψ, Hχ) − (Hψ, χ)` computed from the integrals, for closed-form waves.
pub fn green_defect(psi: &TwoIntervalWave, chi: &TwoIntervalWave) -> Result<C64> {
    let h = |w: &TwoIntervalWave| -> TwoIntervalWave {
        let terms = w
            .terms()
            .expect("closed form")
            .iter()
            .map(|t| {
                let mut t = *t;
                match t.basis {
                    crate::wave::ModeBasis::Trig => {
                        let k2 = t.k * t.k;
                        t.a = t.a.map(|z| z * k2);
                        t.b = t.b.map(|z| z * k2);
                    }
                    crate::wave::ModeBasis::Linear => {
                        t.a = [C64::new(0.0, 0.0); 2];
                        t.b = [C64::new(0.0, 0.0); 2];
                    }
                }
                t
            })
            .collect();
        TwoIntervalWave::from_terms(terms)
    };
    Ok(inner_product(psi, &h(chi))? - inner_product(&h(psi), chi)?)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::spectrum::{analytic_states, diag_phase};
    use core::f64::consts::PI;

    fn c(x: f64) -> C64 {
        C64::new(x, 0.0)
    }

    #[test]
    fn two_lowest_circle_modes_pair_to_zero() {
        let u = Unitary2::swap();
        let s = analytic_states(&u, 1.0);
        let b = boundary_form(&s[0].wave(), &s[1].wave()).unwrap();
        assert!(b.norm() <= 1e-10);
        let b = boundary_form(&s[1].wave(), &s[2].wave()).unwrap();
        assert!(b.norm() <= 1e-10);
    }

    #[test]
    fn constants_pair_to_zero() {
        let one = TwoIntervalWave::constant([c(1.0), c(1.0)]);
        assert_eq!(boundary_form(&one, &one).unwrap(), c(0.0));
    }

    #[test]
    fn cross_domain_pairs_do_not_vanish() {
        let a = analytic_states(&Unitary2::swap(), 1.0)[1].wave();
        let b = analytic_states(&Unitary2::identity(), 1.0)[2].wave();
        let v = boundary_form(&a, &b).unwrap().norm();
        assert!(v > 0.05 && v < 10.0, "{v}");
    }

    #[test]
    fn half_wave_is_not_periodic() {
        let psi = TwoIntervalWave::trig(0.5, [c(0.0); 2], [c(1.0), c(0.0)]);
        let r = in_domain(&psi, &Unitary2::identity(), 1e-9);
        assert!(!r.inside);
        assert!(r.value_residual < 1e-15);
        assert!((r.derivative_residual - 1.0).abs() < 1e-15);
    }

    #[test]
    fn constants_are_in_the_periodic_domain() {
        let psi = TwoIntervalWave::constant([c(0.3), C64::new(0.0, 2.0)]);
        assert!(in_domain(&psi, &Unitary2::identity(), 1e-12).inside);
    }

    #[test]
    fn grid_traces_match_analytic_ones() {
        let u = Unitary2::mixing();
        let psi = random_domain_probe(&u, &mut crate::rng(1));
        let a = BoundaryData::extract(&psi).unwrap();
        let g = BoundaryData::extract(&psi.sampled(4097).unwrap()).unwrap();
        for i in 0..2 {
            assert!((a.start[i] - g.start[i]).norm() < 1e-12);
            assert!((a.d_start[i] - g.d_start[i]).norm() < 1e-8);
            assert!((a.d_end[i] - g.d_end[i]).norm() < 1e-8);
        }
        assert!(in_domain(&psi.sampled(1025).unwrap(), &u, 1e-9).inside);
    }

    #[test]
    fn coarse_grids_are_rejected() {
        let psi = TwoIntervalWave::constant([c(1.0); 2]).sampled(4).unwrap();
        assert!(boundary_form(&psi, &psi).is_err());
    }

    #[test]
    fn symmetry_on_named_domains() {
        for u in [Unitary2::swap(), Unitary2::mixing(), Unitary2::identity(), diag_phase(PI)] {
            let r = verify_symmetry(&u, 8, 7).unwrap();
            assert!(r.max_residual_in_domain <= 1e-9, "{r:?}");
            assert!(r.median_residual_out_domain >= 0.1, "{r:?}");
        }
    }

    #[test]
    fn boundary_form_equals_green_defect() {
        let mut r = crate::rng(9);
        for _ in 0..10 {
            let a = random_free_probe(&mut r);
            let b = random_free_probe(&mut r);
            let lhs = green_defect(&a, &b).unwrap();
            let rhs = boundary_form(&a, &b).unwrap();
            assert!((lhs - rhs).norm() < 1e-9 * (1.0 + rhs.norm()));
        }
    }

    mod props {
        use super::*;
        use proptest::prelude::*;

        proptest! {
            #![proptest_config(ProptestConfig::with_cases(128))]
            #[test]
            fn vanishes_on_every_domain(seed in any::<u64>()) {
                let mut r = crate::rng(seed);
                let u = Unitary2::random(&mut r);
                let a = random_domain_probe(&u, &mut r);
                let b = random_domain_probe(&u, &mut r);
                prop_assert!(boundary_form(&a, &b).unwrap().norm() <= 1e-9);
                prop_assert!(in_domain(&a, &u, 1e-9).inside);
            }

            #[test]
            fn antisymmetric(seed in any::<u64>()) {
                let mut r = crate::rng(seed);
                let a = random_free_probe(&mut r);
                let b = random_free_probe(&mut r);
                let ab = boundary_form(&a, &b).unwrap();
                let ba = boundary_form(&b, &a).unwrap();
                prop_assert!((ab + ba.conj()).norm() <= 1e-10);
            }

            #[test]
            fn global_phase_invariance(seed in any::<u64>(), gamma in 0.0..6.3f64) {
                let mut r = crate::rng(seed);
                let u = Unitary2::random(&mut r);
                let a = random_domain_probe(&u, &mut r);
                let b = a.scale(C64::from_polar(1.0, gamma));
                prop_assert_eq!(in_domain(&a, &u, 1e-9).inside, in_domain(&b, &u, 1e-9).inside);
                let f = random_free_probe(&mut r);
                let g = f.scale(C64::from_polar(1.0, gamma));
                prop_assert_eq!(in_domain(&f, &u, 1e-9).inside, in_domain(&g, &u, 1e-9).inside);
            }
        }
    }
}

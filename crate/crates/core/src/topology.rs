//! Configuration-space topology from continuity of probability densities.
//!
//! An endpoint pair `(e, e′)` is glued when every density `ψ*χ` with
//! `ψ, χ ∈ D_u` takes the same value at `e` and `e′`. For monomial `u`
//! the boundary condition maps one endpoint value onto another up to a phase
//! that cancels in `ψ*χ`; for any other `u` no pair survives.

#[allow(unused_imports)]
use num_traits::Float;
use alloc::format;
use alloc::string::String;
use alloc::vec::Vec;

use serde::{Deserialize, Serialize};

use crate::error::{param, Error, Result};
use crate::selfadjoint::random_domain_probe;
use crate::unitary::Unitary2;
use crate::wave::TwoIntervalWave;
use crate::{C64, INTERVAL_LENGTH as L};

pub const DEFAULT_TOL: f64 = 1e-8;
/// Minimum `unmatched_min / max(matched_max, tol)` for a clean classification.
pub const MIN_SEPARATION: f64 = 1e3;

/// An interval end: `interval ∈ {1, 2}`, at `x = 0` or `x = 2π`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Serialize, Deserialize)]
pub struct Endpoint {
    pub interval: u8,
    pub at_end: bool,
}

impl Endpoint {
    /// `0:(1,0)`, `1:(1,2π)`, `2:(2,0)`, `3:(2,2π)`.
    pub const ALL: [Endpoint; 4] = [
        Endpoint { interval: 1, at_end: false },
        Endpoint { interval: 1, at_end: true },
        Endpoint { interval: 2, at_end: false },
        Endpoint { interval: 2, at_end: true },
    ];

    pub fn index(&self) -> usize {
        2 * (self.interval as usize - 1) + self.at_end as usize
    }

    pub fn x(&self) -> f64 {
        if self.at_end {
            L
        } else {
            0.0
        }
    }

    pub fn component(&self) -> usize {
        self.interval as usize - 1
    }

    pub fn label(&self) -> String {
        format!("({},{})", self.interval, if self.at_end { "2pi" } else { "0" })
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
pub enum TopologyClass {
    CircleOf4Pi,
    TwoCirclesOf2Pi,
    TwoIntervals,
}

/// An identified endpoint pair with its density residual.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct Gluing {
    pub a: Endpoint,
    pub b: Endpoint,
    pub residual: f64,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case", tag = "kind", content = "order")]
pub enum Smoothness {
    /// Derivatives up to this order match, the next one does not.
    Order(u32),
    /// No violation up to the tested maximum.
    AllTested(u32),
    /// Nothing is glued.
    NotApplicable,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct TopologyReport {
    pub class: TopologyClass,
    pub ambiguous: bool,
    pub gluings: Vec<Gluing>,
    /// Largest residual among glued pairs (0 when none).
    pub matched_max: f64,
    /// Smallest residual among the other pairs.
    pub unmatched_min: f64,
    pub separation: f64,
    /// Class from the monomial pattern of `u`.
    pub structural_class: TopologyClass,
    /// `residuals[e][e′]` indexed by [`Endpoint::index`].
    pub residuals: [[f64; 4]; 4],
    pub smoothness: Option<Smoothness>,
    pub tol: f64,
    pub n_probes: usize,
    pub seed: u64,
}

impl TopologyReport {
    /// Gluing diagram in Graphviz `dot`: endpoints as nodes, the two intervals
    /// as solid edges, identifications as dashed edges labelled by residual.
    pub fn to_dot(&self) -> String {
        let mut s = format!("graph gluing {{\n  label=\"{:?}\";\n", self.class);
        for e in Endpoint::ALL {
            s += &format!("  e{} [label=\"{}\"];\n", e.index(), e.label());
        }
        for i in [1u8, 2] {
            s += &format!("  e{} -- e{} [label=\"I{i}\"];\n", 2 * (i - 1), 2 * (i - 1) + 1);
        }
        for g in &self.gluings {
            s += &format!("  e{} -- e{} [style=dashed, label=\"{:.1e}\"];\n", g.a.index(), g.b.index(), g.residual);
        }
        s + "}\n"
    }
}

/// Max over probe pairs of `|(ψ*χ)(e) − (ψ*χ)(e′)|` for every endpoint pair.
pub fn density_endpoint_matrix(u: &Unitary2, n_probes: usize, seed: u64) -> Result<[[f64; 4]; 4]> {
    if n_probes < 4 {
        return Err(param("density probing needs at least 4 probes"));
    }
    let probes = probes(u, n_probes, seed);
    let traces: Vec<[C64; 4]> = probes
        .iter()
        .map(|p| Endpoint::ALL.map(|e| p.eval(e.component(), e.x()).expect("closed form")))
        .collect();
    let mut r = [[0.0f64; 4]; 4];
    for a in &traces {
        for b in &traces {
            let dens = [0, 1, 2, 3].map(|e| a[e].conj() * b[e]);
            for e in 0..4 {
                for f in 0..4 {
                    r[e][f] = r[e][f].max((dens[e] - dens[f]).norm());
                }
            }
        }
    }
    Ok(r)
}

fn probes(u: &Unitary2, n: usize, seed: u64) -> Vec<TwoIntervalWave> {
    let mut rng = crate::rng(seed);
    (0..n).map(|_| random_domain_probe(u, &mut rng)).collect()
}

fn class_of(pairs: &[(usize, usize)]) -> Result<TopologyClass> {
    let mut p: Vec<(usize, usize)> = pairs.iter().map(|&(a, b)| (a.min(b), a.max(b))).collect();
    p.sort();
    match p.as_slice() {
        [] => Ok(TopologyClass::TwoIntervals),
        [(0, 3), (1, 2)] => Ok(TopologyClass::CircleOf4Pi),
        [(0, 1), (2, 3)] => Ok(TopologyClass::TwoCirclesOf2Pi),
        other => Err(Error::Consistency(format!("gluing pattern {other:?} is not realizable"))),
    }
}

/// Class read off the monomial pattern of `u`.
pub fn structural_class(u: &Unitary2, tol: f64) -> TopologyClass {
    let (off, diag) = u.monomial_defects();
    if off <= tol {
        TopologyClass::TwoCirclesOf2Pi
    } else if diag <= tol {
        TopologyClass::CircleOf4Pi
    } else {
        TopologyClass::TwoIntervals
    }
}

/// Operational classification, cross-checked against [`structural_class`].
pub fn classify(u: &Unitary2, tol: f64, n_probes: usize, seed: u64) -> Result<TopologyReport> {
    if !(tol > 0.0 && tol <= 1e-3) {
        return Err(param("tol must lie in (0, 1e-3]"));
    }
    let residuals = density_endpoint_matrix(u, n_probes, seed)?;
    let mut glued = Vec::new();
    let mut gluings = Vec::new();
    let (mut matched_max, mut unmatched_min) = (0.0f64, f64::INFINITY);
    for e in 0..4 {
        for f in e + 1..4 {
            let r = residuals[e][f];
            if r <= tol {
                glued.push((e, f));
                gluings.push(Gluing { a: Endpoint::ALL[e], b: Endpoint::ALL[f], residual: r });
                matched_max = matched_max.max(r);
            } else {
                unmatched_min = unmatched_min.min(r);
            }
        }
    }
    let class = class_of(&glued)?;
    let structural = structural_class(u, tol);
    if class != structural {
        return Err(Error::Consistency(format!(
            "density route gives {class:?}, monomial pattern gives {structural:?}"
        )));
    }
    let separation = unmatched_min / matched_max.max(tol);
    Ok(TopologyReport {
        class,
        ambiguous: separation < MIN_SEPARATION,
        gluings,
        matched_max,
        unmatched_min,
        separation,
        structural_class: structural,
        residuals,
        smoothness: None,
        tol,
        n_probes,
        seed,
    })
}

fn binomial(n: u32, k: u32) -> f64 {
    (0..k).fold(1.0, |acc, i| acc * (n - i) as f64 / (i + 1) as f64)
}

/// `dʳ/dxʳ (ψᵢ* χᵢ)` at `x` by Leibniz on closed-form derivatives.
fn density_derivative(psi: &TwoIntervalWave, chi: &TwoIntervalWave, i: usize, x: f64, r: u32) -> C64 {
    (0..=r)
        .map(|s| {
            let a = psi.derivative(i, x, s).expect("closed form").conj();
            let b = chi.derivative(i, x, r - s).expect("closed form");
            a * b * binomial(r, s)
        })
        .sum()
}

/// Largest `K ≤ k_max` such that density derivatives of orders `0..=K`
/// agree across every gluing within `tol·(1 + k_top^K)`, `k_top` being the
/// largest probe wavenumber.
pub fn smoothness_order(u: &Unitary2, k_max: u32, n_probes: usize, seed: u64) -> Result<Smoothness> {
    smoothness_order_with_tol(u, k_max, n_probes, seed, DEFAULT_TOL)
}

pub fn smoothness_order_with_tol(u: &Unitary2, k_max: u32, n_probes: usize, seed: u64, tol: f64) -> Result<Smoothness> {
    if k_max < 1 {
        return Err(param("K_max must be at least 1"));
    }
    let report = classify(u, tol, n_probes, seed)?;
    if report.gluings.is_empty() {
        return Ok(Smoothness::NotApplicable);
    }
    let probes = probes(u, n_probes, seed);
    let k_top = probes
        .iter()
        .flat_map(|p| p.terms().unwrap().iter().map(|t| t.k))
        .fold(1.0f64, f64::max);
    for r in 0..=k_max {
        let bound = tol * (1.0 + k_top.powi(r as i32));
        for g in &report.gluings {
            for a in &probes {
                for b in &probes {
                    let da = density_derivative(a, b, g.a.component(), g.a.x(), r);
                    let db = density_derivative(a, b, g.b.component(), g.b.x(), r);
                    if (da - db).norm() > bound {
                        return Ok(if r == 0 { Smoothness::Order(0) } else { Smoothness::Order(r - 1) });
                    }
                }
            }
        }
    }
    Ok(Smoothness::AllTested(k_max))
}

/// [`classify`] followed by [`smoothness_order`] on the same probes.
pub fn classify_with_smoothness(u: &Unitary2, tol: f64, n_probes: usize, seed: u64, k_max: u32) -> Result<TopologyReport> {
    let mut r = classify(u, tol, n_probes, seed)?;
    r.smoothness = Some(smoothness_order_with_tol(u, k_max, n_probes, seed, tol)?);
    Ok(r)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::spectrum::diag_phase;
    use core::f64::consts::PI;

    fn idx(a: usize, b: usize) -> (usize, usize) {
        (a, b)
    }

    #[test]
    fn dot_lists_each_gluing() {
        let dot = classify(&Unitary2::swap(), DEFAULT_TOL, 4, 1).unwrap().to_dot();
        assert!(dot.starts_with("graph gluing {") && dot.ends_with("}\n"));
        assert_eq!(dot.matches("dashed").count(), 2);
        assert!(dot.contains("e1 -- e2 [style=dashed") && dot.contains("e0 -- e3 [style=dashed"));
        let none = classify(&Unitary2::mixing(), DEFAULT_TOL, 4, 1).unwrap().to_dot();
        assert_eq!(none.matches("dashed").count(), 0);
        assert_eq!(none.matches(" -- ").count(), 2);
    }

    #[test]
    fn endpoint_indexing() {
        for (i, e) in Endpoint::ALL.iter().enumerate() {
            assert_eq!(e.index(), i);
        }
    }

    #[test]
    fn circle_density_pattern() {
        let r = density_endpoint_matrix(&Unitary2::swap(), 8, 1).unwrap();
        for (a, b) in [idx(1, 2), idx(3, 0)] {
            assert!(r[a][b] < 1e-14, "{r:?}");
        }
        for (a, b) in [idx(0, 1), idx(2, 3), idx(0, 2), idx(1, 3)] {
            assert!(r[a][b] > 1e-3, "{r:?}");
        }
    }

    #[test]
    fn two_circle_density_pattern() {
        let r = density_endpoint_matrix(&Unitary2::identity(), 8, 1).unwrap();
        for (a, b) in [idx(1, 0), idx(3, 2)] {
            assert!(r[a][b] < 1e-14);
        }
        for (a, b) in [idx(1, 2), idx(0, 3), idx(0, 2), idx(1, 3)] {
            assert!(r[a][b] > 1e-3);
        }
    }

    #[test]
    fn mixing_has_no_matching_pair() {
        let r = density_endpoint_matrix(&Unitary2::mixing(), 8, 1).unwrap();
        for a in 0..4 {
            for b in a + 1..4 {
                assert!(r[a][b] > 1e-3);
            }
        }
    }

    #[test]
    fn named_classes() {
        let cases = [
            (Unitary2::case_a(0.4, -2.1), TopologyClass::CircleOf4Pi),
            (Unitary2::swap(), TopologyClass::CircleOf4Pi),
            (Unitary2::case_b(1.1, 0.3), TopologyClass::TwoCirclesOf2Pi),
            (Unitary2::identity(), TopologyClass::TwoCirclesOf2Pi),
            (Unitary2::mixing(), TopologyClass::TwoIntervals),
        ];
        for (u, want) in cases {
            let r = classify(&u, DEFAULT_TOL, 8, 3).unwrap();
            assert_eq!(r.class, want);
            assert!(!r.ambiguous && r.separation >= MIN_SEPARATION, "{r:?}");
        }
    }

    #[test]
    fn smoothness_of_glued_cases() {
        for u in [Unitary2::swap(), Unitary2::identity(), diag_phase(PI)] {
            assert_eq!(smoothness_order(&u, 6, 8, 2).unwrap(), Smoothness::AllTested(6));
        }
        assert_eq!(smoothness_order(&Unitary2::mixing(), 6, 8, 2).unwrap(), Smoothness::NotApplicable);
    }

    #[test]
    fn isospectral_pair_differs() {
        let a = classify(&Unitary2::swap(), DEFAULT_TOL, 8, 0).unwrap();
        let b = classify(&diag_phase(PI), DEFAULT_TOL, 8, 0).unwrap();
        assert_eq!(a.class, TopologyClass::CircleOf4Pi);
        assert_eq!(b.class, TopologyClass::TwoCirclesOf2Pi);
    }

    #[test]
    fn probe_independence() {
        for u in [Unitary2::swap(), Unitary2::identity(), Unitary2::mixing()] {
            let first = classify(&u, DEFAULT_TOL, 8, 0).unwrap().class;
            for seed in 1..20 {
                assert_eq!(classify(&u, DEFAULT_TOL, 8, seed).unwrap().class, first);
            }
        }
    }

    #[test]
    fn parameter_validation() {
        assert!(classify(&Unitary2::swap(), 0.0, 8, 0).is_err());
        assert!(classify(&Unitary2::swap(), 1e-2, 8, 0).is_err());
        assert!(density_endpoint_matrix(&Unitary2::swap(), 3, 0).is_err());
        assert!(smoothness_order(&Unitary2::swap(), 0, 8, 0).is_err());
    }

    #[test]
    fn near_monomial_flips_to_intervals() {
        let mut rng = crate::rng(77);
        for _ in 0..5 {
            let g = Unitary2::random(&mut rng);
            // random hermitian generator X = g diag(1, −1) g†
            let x = crate::unitary::mat2_mul(
                &crate::unitary::mat2_mul(g.entries(), &[C64::new(1.0, 0.0), C64::new(0.0, 0.0), C64::new(0.0, 0.0), C64::new(-1.0, 0.0)]),
                g.adjoint().entries(),
            );
            for eps in [1e-3, 1e-2, 0.1, 0.5] {
                let h = x.map(|z| z * eps);
                let u = Unitary2::exp_i_hermitian(&h).unwrap().mul(&Unitary2::swap());
                let r = classify(&u, DEFAULT_TOL, 8, 1).unwrap();
                assert_eq!(r.class, TopologyClass::TwoIntervals, "eps {eps}");
            }
        }
    }

    mod props {
        use super::*;
        use proptest::prelude::*;

        proptest! {
            #![proptest_config(ProptestConfig::with_cases(32))]
            #[test]
            fn diagonal_phases_preserve_class(t1 in 0.0..core::f64::consts::TAU, t2 in 0.0..core::f64::consts::TAU, p1 in 0.0..core::f64::consts::TAU, p2 in 0.0..core::f64::consts::TAU) {
                let d = Unitary2::case_b(p1, p2);
                for u in [Unitary2::case_a(t1, t2), Unitary2::case_b(t1, t2)] {
                    let a = classify(&u, DEFAULT_TOL, 8, 5).unwrap();
                    let b = classify(&d.mul(&u), DEFAULT_TOL, 8, 5).unwrap();
                    prop_assert_eq!(a.class, b.class);
                    prop_assert!(!a.ambiguous && !b.ambiguous);
                }
            }

            #[test]
            fn generic_u_is_two_intervals(seed in any::<u64>()) {
                let u = Unitary2::random(&mut crate::rng(seed));
                let r = classify(&u, DEFAULT_TOL, 8, 5).unwrap();
                prop_assert_eq!(r.class, TopologyClass::TwoIntervals);
            }
        }
    }
}

//! Two-component wave functions on `[0, 2π] ⊔ [0, 2π]`.

#[allow(unused_imports)]
use num_traits::Float;
use alloc::vec::Vec;
use alloc::{format, vec};
use core::f64::consts::FRAC_PI_2;

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::unitary::Unitary2;
use crate::{C64, INTERVAL_LENGTH as L};

/// Functional form of a closed-form term.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum ModeBasis {
    /// `ψᵢ(x) = Aᵢ cos kx + Bᵢ sin kx`.
    Trig,
    /// `ψᵢ(x) = Aᵢ + Bᵢ x`, the `k = 0` ansatz.
    Linear,
}

/// One closed-form term, shared wavenumber on both intervals.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct ModeTerm {
    pub k: f64,
    pub a: [C64; 2],
    pub b: [C64; 2],
    pub basis: ModeBasis,
}

impl ModeTerm {
    /// `r`-th derivative of component `i` at `x`.
    pub fn derivative(&self, i: usize, x: f64, r: u32) -> C64 {
        match self.basis {
            ModeBasis::Trig => {
                let k = self.k;
                let kr = k.powi(r as i32);
                if kr == 0.0 {
                    return if r == 0 { self.a[i] } else { C64::new(0.0, 0.0) };
                }
                let ph = k * x + r as f64 * FRAC_PI_2;
                self.a[i] * (kr * ph.cos()) + self.b[i] * (kr * ph.sin())
            }
            ModeBasis::Linear => match r {
                0 => self.a[i] + self.b[i] * x,
                1 => self.b[i],
                _ => C64::new(0.0, 0.0),
            },
        }
    }

    fn scaled(&self, c: C64) -> Self {
        Self { a: self.a.map(|z| z * c), b: self.b.map(|z| z * c), ..*self }
    }

    /// Expansion of component `i` into monomials `c·x^q·e^{iwx}`.
    fn monomials(&self, i: usize, out: &mut Vec<(C64, u32, f64)>) {
        let (a, b) = (self.a[i], self.b[i]);
        match self.basis {
            ModeBasis::Linear => {
                out.push((a, 0, 0.0));
                out.push((b, 1, 0.0));
            }
            ModeBasis::Trig if self.k == 0.0 => out.push((a, 0, 0.0)),
            ModeBasis::Trig => {
                // cos = (e⁺ + e⁻)/2, sin = (e⁺ − e⁻)/2i
                let half = C64::new(0.5, 0.0);
                let mhi = C64::new(0.0, -0.5);
                out.push((a * half + b * mhi, 0, self.k));
                out.push((a * half - b * mhi, 0, -self.k));
            }
        }
    }
}

/// Samples on the closed grid `x_m = m·2π/(P−1)`, `m = 0..P`.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct GridSamples {
    pub samples: [Vec<C64>; 2],
}

impl GridSamples {
    pub fn points(&self) -> usize {
        self.samples[0].len()
    }

    pub fn spacing(&self) -> f64 {
        L / (self.points() - 1) as f64
    }
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum Representation {
    /// Finite sum of closed-form terms.
    Mode(Vec<ModeTerm>),
    Grid(GridSamples),
}

/// `ψ = (ψ₁, ψ₂)` with `ψᵢ` defined on the `i`-th copy of `[0, 2π]`.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct TwoIntervalWave {
    pub representation: Representation,
    /// Boundary condition the wave is claimed to satisfy, if any.
    pub domain_tag: Option<Unitary2>,
}

/// Grid node `m` of a closed grid with `p` points.
pub fn grid_x(m: usize, p: usize) -> f64 {
    L * m as f64 / (p - 1) as f64
}

impl TwoIntervalWave {
    pub fn trig(k: f64, a: [C64; 2], b: [C64; 2]) -> Self {
        Self::from_terms(vec![ModeTerm { k, a, b, basis: ModeBasis::Trig }])
    }

    pub fn linear(a: [C64; 2], b: [C64; 2]) -> Self {
        Self::from_terms(vec![ModeTerm { k: 0.0, a, b, basis: ModeBasis::Linear }])
    }

    /// Constant `(c₁, c₂)`.
    pub fn constant(c: [C64; 2]) -> Self {
        Self::linear(c, [C64::new(0.0, 0.0); 2])
    }

    pub fn from_terms(terms: Vec<ModeTerm>) -> Self {
        Self { representation: Representation::Mode(terms), domain_tag: None }
    }

    /// Builds a grid wave; both components must have the same length.
    pub fn from_grid(samples: [Vec<C64>; 2]) -> Result<Self> {
        if samples[0].len() != samples[1].len() {
            return Err(Error::Resolution(format!(
                "components have {} and {} samples",
                samples[0].len(),
                samples[1].len()
            )));
        }
        if samples[0].len() < 2 {
            return Err(Error::Resolution("a closed grid needs at least 2 points".into()));
        }
        Ok(Self { representation: Representation::Grid(GridSamples { samples }), domain_tag: None })
    }

    pub fn with_domain_tag(mut self, u: Unitary2) -> Self {
        self.domain_tag = Some(u);
        self
    }

    pub fn terms(&self) -> Option<&[ModeTerm]> {
        match &self.representation {
            Representation::Mode(t) => Some(t),
            Representation::Grid(_) => None,
        }
    }

    pub fn is_closed_form(&self) -> bool {
        self.terms().is_some()
    }

    /// Number of grid points, `None` for closed-form waves.
    pub fn grid_points(&self) -> Option<usize> {
        match &self.representation {
            Representation::Mode(_) => None,
            Representation::Grid(g) => Some(g.points()),
        }
    }

    /// `r`-th derivative of component `i`. Grid waves only support `r = 0` at nodes.
    pub fn derivative(&self, i: usize, x: f64, r: u32) -> Option<C64> {
        self.terms().map(|t| t.iter().map(|m| m.derivative(i, x, r)).sum())
    }

    /// Value of component `i` at `x` (closed form only).
    pub fn eval(&self, i: usize, x: f64) -> Option<C64> {
        self.derivative(i, x, 0)
    }

    /// Samples on a closed grid of `p` points.
    pub fn to_grid(&self, p: usize) -> Result<GridSamples> {
        match &self.representation {
            Representation::Grid(g) if g.points() == p => Ok(g.clone()),
            Representation::Grid(g) => Err(Error::Resolution(format!(
                "grid wave has {} points, {} requested",
                g.points(),
                p
            ))),
            Representation::Mode(terms) => {
                if p < 2 {
                    return Err(Error::Resolution("a closed grid needs at least 2 points".into()));
                }
                let comp = |i: usize| {
                    (0..p)
                        .map(|m| {
                            let x = grid_x(m, p);
                            terms.iter().map(|t| t.derivative(i, x, 0)).sum()
                        })
                        .collect()
                };
                Ok(GridSamples { samples: [comp(0), comp(1)] })
            }
        }
    }

    pub fn sampled(&self, p: usize) -> Result<Self> {
        Ok(Self { representation: Representation::Grid(self.to_grid(p)?), domain_tag: self.domain_tag })
    }

    /// Least-squares fit of a single trig term of wavenumber `k` to grid samples.
    pub fn fit_trig(grid: &GridSamples, k: f64) -> Self {
        let p = grid.points();
        let (mut cc, mut cs, mut ss) = (0.0, 0.0, 0.0);
        let mut rhs = [[C64::new(0.0, 0.0); 2]; 2];
        for m in 0..p {
            let x = grid_x(m, p);
            let (c, s) = ((k * x).cos(), (k * x).sin());
            cc += c * c;
            cs += c * s;
            ss += s * s;
            for i in 0..2 {
                rhs[i][0] += grid.samples[i][m] * c;
                rhs[i][1] += grid.samples[i][m] * s;
            }
        }
        let det = cc * ss - cs * cs;
        let mut a = [C64::new(0.0, 0.0); 2];
        let mut b = [C64::new(0.0, 0.0); 2];
        for i in 0..2 {
            if det.abs() > 1e-12 * (cc * ss).max(1e-300) {
                a[i] = (rhs[i][0] * ss - rhs[i][1] * cs) / det;
                b[i] = (rhs[i][1] * cc - rhs[i][0] * cs) / det;
            } else {
                a[i] = rhs[i][0] / cc;
            }
        }
        Self::trig(k, a, b)
    }

    /// Multiplies the wave by `c`.
    pub fn scale(&self, c: C64) -> Self {
        let representation = match &self.representation {
            Representation::Mode(t) => Representation::Mode(t.iter().map(|m| m.scaled(c)).collect()),
            Representation::Grid(g) => Representation::Grid(GridSamples {
                samples: [
                    g.samples[0].iter().map(|z| z * c).collect(),
                    g.samples[1].iter().map(|z| z * c).collect(),
                ],
            }),
        };
        Self { representation, domain_tag: self.domain_tag }
    }

    /// `‖ψ‖ = (ψ, ψ)^{1/2}`.
    pub fn norm(&self) -> f64 {
        inner_product(self, self).map(|z| z.re.max(0.0).sqrt()).unwrap_or(f64::NAN)
    }

    pub fn normalized(&self) -> Self {
        self.scale(C64::new(1.0 / self.norm(), 0.0))
    }
}

/// `∫₀^{2π} x^q e^{iwx} dx`.
fn moment(q: u32, w: f64) -> C64 {
    if (w * L).abs() < 1.0 {
        // Σₙ (iw)ⁿ L^{n+q+1} / (n!(n+q+1))
        let mut sum = C64::new(0.0, 0.0);
        let mut term = C64::new(L.powi(q as i32 + 1), 0.0);
        let iwl = C64::new(0.0, w * L);
        for n in 0..60u32 {
            let add = term / (n + q + 1) as f64;
            sum += add;
            if add.norm() < 1e-18 * sum.norm() {
                break;
            }
            term = term * iwl / (n + 1) as f64;
        }
        sum
    } else {
        let e = C64::from_polar(1.0, w * L);
        let iw = C64::new(0.0, w);
        let mut j = (e - 1.0) / iw;
        for r in 1..=q {
            j = (e * L.powi(r as i32) - j * r as f64) / iw;
        }
        j
    }
}

fn closed_form_inner(psi: &[ModeTerm], chi: &[ModeTerm]) -> C64 {
    let mut total = C64::new(0.0, 0.0);
    let (mut mp, mut mc) = (Vec::new(), Vec::new());
    for i in 0..2 {
        mp.clear();
        mc.clear();
        psi.iter().for_each(|t| t.monomials(i, &mut mp));
        chi.iter().for_each(|t| t.monomials(i, &mut mc));
        for &(c1, q1, w1) in &mp {
            if c1 == C64::new(0.0, 0.0) {
                continue;
            }
            for &(c2, q2, w2) in &mc {
                if c2 == C64::new(0.0, 0.0) {
                    continue;
                }
                total += c1.conj() * c2 * moment(q1 + q2, w2 - w1);
            }
        }
    }
    total
}

/// Composite Simpson weights on a closed grid, with a 3/8 panel at the end
/// when the interval count is odd.
pub fn simpson_weights(p: usize) -> Vec<f64> {
    let n = p - 1;
    let h = L / n as f64;
    let mut w = vec![0.0; p];
    if n == 1 {
        w[0] = h / 2.0;
        w[1] = h / 2.0;
        return w;
    }
    let simpson_end = if n.is_multiple_of(2) { n } else { n - 3 };
    for s in (0..simpson_end).step_by(2) {
        w[s] += h / 3.0;
        w[s + 1] += 4.0 * h / 3.0;
        w[s + 2] += h / 3.0;
    }
    if n % 2 == 1 {
        let s = n - 3;
        for (o, c) in [1.0, 3.0, 3.0, 1.0].into_iter().enumerate() {
            w[s + o] += 3.0 * h / 8.0 * c;
        }
    }
    w
}

fn grid_inner(a: &GridSamples, b: &GridSamples) -> C64 {
    let w = simpson_weights(a.points());
    (0..2)
        .map(|i| {
            a.samples[i]
                .iter()
                .zip(&b.samples[i])
                .zip(&w)
                .map(|((x, y), w)| x.conj() * y * *w)
                .sum::<C64>()
        })
        .sum()
}

/// `(ψ, χ) = ∫₀^{2π} Σᵢ ψᵢ*(x) χᵢ(x) dx`.
///
/// Exact for two closed-form waves; Simpson quadrature otherwise, in which case
/// a closed-form partner is sampled on the grid of the other.
pub fn inner_product(psi: &TwoIntervalWave, chi: &TwoIntervalWave) -> Result<C64> {
    use Representation::*;
    match (&psi.representation, &chi.representation) {
        (Mode(a), Mode(b)) => Ok(closed_form_inner(a, b)),
        (Grid(a), Grid(b)) => {
            if a.points() != b.points() {
                return Err(Error::Resolution(format!(
                    "grids of {} and {} points",
                    a.points(),
                    b.points()
                )));
            }
            Ok(grid_inner(a, b))
        }
        (Grid(a), Mode(_)) => Ok(grid_inner(a, &chi.to_grid(a.points())?)),
        (Mode(_), Grid(b)) => Ok(grid_inner(&psi.to_grid(b.points())?, b)),
    }
}

/// One-sided fourth-order first derivatives at both ends of a sampled component.
pub(crate) fn endpoint_derivatives(f: &[C64], h: f64) -> Result<(C64, C64)> {
    let p = f.len();
    if p < 5 {
        return Err(Error::Resolution(format!("{p} points cannot carry a fourth-order endpoint derivative")));
    }
    let fwd = (f[0] * -25.0 + f[1] * 48.0 - f[2] * 36.0 + f[3] * 16.0 - f[4] * 3.0) / (12.0 * h);
    let n = p - 1;
    let bwd = (f[n] * 25.0 - f[n - 1] * 48.0 + f[n - 2] * 36.0 - f[n - 3] * 16.0 + f[n - 4] * 3.0) / (12.0 * h);
    Ok((fwd, bwd))
}

#[cfg(test)]
mod tests {
    use super::*;
    use core::f64::consts::PI;

    fn c(x: f64) -> C64 {
        C64::new(x, 0.0)
    }

    const Z: C64 = C64::new(0.0, 0.0);

    #[test]
    fn normalized_constant() {
        let v = 1.0 / (4.0 * PI).sqrt();
        let psi = TwoIntervalWave::constant([c(v), c(v)]);
        assert!((inner_product(&psi, &psi).unwrap() - 1.0).norm() < 1e-15);
    }

    #[test]
    fn disjoint_components() {
        let psi = TwoIntervalWave::trig(1.0, [Z, Z], [c(1.0), Z]);
        let chi = TwoIntervalWave::trig(1.0, [Z, Z], [Z, c(1.0)]);
        assert_eq!(inner_product(&psi, &chi).unwrap(), Z);
    }

    #[test]
    fn cos_squared_integrates_to_pi() {
        let psi = TwoIntervalWave::trig(1.0, [c(1.0), Z], [Z, Z]);
        assert!((inner_product(&psi, &psi).unwrap() - PI).norm() < 1e-14);
        let g = psi.sampled(129).unwrap();
        assert!((inner_product(&g, &g).unwrap() - PI).norm() < 1e-12);
        // odd interval count exercises the 3/8 panel
        let g = psi.sampled(130).unwrap();
        assert!((inner_product(&g, &g).unwrap() - PI).norm() < 1e-6);
    }

    #[test]
    fn moments_match_quadrature() {
        for &w in &[0.0, 0.01, 0.3, 1.0, 2.5, -7.0] {
            for q in 0..3 {
                let n = 4000;
                let wts = simpson_weights(n + 1);
                let quad: C64 = (0..=n)
                    .map(|m| {
                        let x = grid_x(m, n + 1);
                        C64::from_polar(x.powi(q as i32), w * x) * wts[m]
                    })
                    .sum();
                let exact = moment(q, w);
                assert!((quad - exact).norm() < 1e-9 * (1.0 + exact.norm()), "q={q} w={w}");
            }
        }
    }

    #[test]
    fn mismatched_grids_are_rejected() {
        let a = TwoIntervalWave::constant([c(1.0), Z]).sampled(33).unwrap();
        let b = TwoIntervalWave::constant([c(1.0), Z]).sampled(65).unwrap();
        assert!(matches!(inner_product(&a, &b), Err(Error::Resolution(_))));
    }

    #[test]
    fn mixed_representations_use_the_grid() {
        let psi = TwoIntervalWave::trig(0.5, [c(1.0), c(0.3)], [c(-0.2), c(1.0)]);
        let g = psi.sampled(257).unwrap();
        let exact = inner_product(&psi, &psi).unwrap();
        assert!((inner_product(&psi, &g).unwrap() - exact).norm() < 1e-9);
    }

    #[test]
    fn grid_fit_recovers_mode() {
        for &k in &[0.0, 0.5, 3.0, 10.0] {
            let psi = TwoIntervalWave::trig(k, [C64::new(0.3, 1.0), c(-2.0)], [c(0.7), C64::new(0.0, 0.4)]);
            let g = psi.to_grid(64).unwrap();
            let back = TwoIntervalWave::fit_trig(&g, k);
            let g2 = back.to_grid(64).unwrap();
            for i in 0..2 {
                for m in 0..64 {
                    assert!((g.samples[i][m] - g2.samples[i][m]).norm() < 1e-10);
                }
            }
        }
    }

    #[test]
    fn endpoint_stencils_are_fourth_order() {
        let f = |p: usize| {
            let h = L / (p - 1) as f64;
            let s: Vec<C64> = (0..p).map(|m| c((0.7 * grid_x(m, p)).sin())).collect();
            let (d0, d1) = endpoint_derivatives(&s, h).unwrap();
            ((d0 - 0.7).norm(), (d1 - 0.7 * (0.7 * L).cos()).norm())
        };
        let (e1, _) = f(101);
        let (e2, _) = f(201);
        let rate = (e1 / e2).log2();
        assert!(rate > 3.7 && rate < 4.3, "rate {rate}");
        assert!(endpoint_derivatives(&[Z; 4], 0.1).is_err());
    }

    #[test]
    fn trig_derivatives() {
        let t = ModeTerm { k: 2.0, a: [c(1.0), Z], b: [c(3.0), Z], basis: ModeBasis::Trig };
        let x = 0.4;
        assert!((t.derivative(0, x, 1) - c(-2.0 * (2.0 * x).sin() + 6.0 * (2.0 * x).cos())).norm() < 1e-14);
        assert!((t.derivative(0, x, 2) + t.derivative(0, x, 0) * 4.0).norm() < 1e-13);
    }

    mod props {
        use super::*;
        use proptest::prelude::*;

        fn arb_c() -> impl Strategy<Value = C64> {
            (-2.0..2.0f64, -2.0..2.0f64).prop_map(|(a, b)| C64::new(a, b))
        }

        fn arb_term() -> impl Strategy<Value = ModeTerm> {
            (0.0..6.0f64, arb_c(), arb_c(), arb_c(), arb_c(), any::<bool>()).prop_map(|(k, a1, a2, b1, b2, lin)| {
                ModeTerm {
                    k: if lin { 0.0 } else { k },
                    a: [a1, a2],
                    b: [b1, b2],
                    basis: if lin { ModeBasis::Linear } else { ModeBasis::Trig },
                }
            })
        }

        proptest! {
            #[test]
            fn conjugate_symmetric(a in proptest::collection::vec(arb_term(), 1..4), b in proptest::collection::vec(arb_term(), 1..4)) {
                let psi = TwoIntervalWave::from_terms(a);
                let chi = TwoIntervalWave::from_terms(b);
                let ab = inner_product(&psi, &chi).unwrap();
                let ba = inner_product(&chi, &psi).unwrap();
                prop_assert!((ab - ba.conj()).norm() <= 1e-10 * (1.0 + ab.norm()));
                let pp = inner_product(&psi, &psi).unwrap();
                prop_assert!(pp.re >= -1e-10 && pp.im.abs() <= 1e-10 * (1.0 + pp.re));
            }

            #[test]
            fn closed_form_matches_quadrature(a in proptest::collection::vec(arb_term(), 1..3)) {
                let psi = TwoIntervalWave::from_terms(a);
                let exact = inner_product(&psi, &psi).unwrap();
                let g = psi.sampled(1025).unwrap();
                let quad = inner_product(&g, &g).unwrap();
                prop_assert!((exact - quad).norm() <= 1e-8 * (1.0 + exact.norm()));
            }
        }
    }
}

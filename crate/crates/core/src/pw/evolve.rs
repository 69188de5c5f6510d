//! Evolution of the `u` sector under `K + V`.
//!
//! The particle and `u` sectors are not evolved jointly: the optional
//! Born–Oppenheimer term adds the `n`-th particle level `E_n(u)` as a
//! potential on `U(2)`, an approximation on top of the coupled Hamiltonian.
//!
//! With `V = 0` the evolution is a phase per label. Otherwise `K + V` is
//! diagonalized densely, or, for bases too large for that, `e^{−iĤt}` is
//! applied through its Chebyshev expansion with sparse products.

use alloc::vec::Vec;

#[allow(unused_imports)]
use num_traits::Float;
use serde::{Deserialize, Serialize};

use super::basis::PwBasis;
use super::operators::{kinetic_diagonal, u_operator, SparseMatrix};
use super::packet::{topology_distribution, PeterWeylState, TopologyCenters};
use super::quadrature::{multiplication_matrix, BallRule, EulerRule};
use crate::error::{Error, Result};
use crate::linalg::CMat;
use crate::unitary::Unitary2;
use crate::C64;

/// Largest dimension diagonalized densely under [`Method::Auto`].
pub const DENSE_LIMIT: usize = 1200;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Default, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum Method {
    #[default]
    Auto,
    Dense,
    Chebyshev,
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct EvolutionRow {
    pub t: f64,
    pub norm: f64,
    pub energy: f64,
    pub p_a: f64,
    pub p_b: f64,
    pub p_other: f64,
    pub tr_u: C64,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct EvolutionTrace {
    pub inertia: f64,
    pub delta: f64,
    pub rows: Vec<EvolutionRow>,
}

impl EvolutionTrace {
    pub fn max_norm_drift(&self) -> f64 {
        self.rows.iter().map(|r| (r.norm - 1.0).abs()).fold(0.0, f64::max)
    }

    /// `max |E(t) − E(0)| / |E(0)|`.
    pub fn max_energy_drift(&self) -> f64 {
        let e0 = self.rows.first().map_or(0.0, |r| r.energy);
        self.rows.iter().map(|r| (r.energy - e0).abs()).fold(0.0, f64::max) / e0.abs().max(1e-300)
    }

    pub fn max_partition_error(&self) -> f64 {
        self.rows.iter().map(|r| (r.p_a + r.p_b + r.p_other - 1.0).abs()).fold(0.0, f64::max)
    }

    pub fn p_a(&self) -> Vec<f64> {
        self.rows.iter().map(|r| r.p_a).collect()
    }

    pub fn p_b(&self) -> Vec<f64> {
        self.rows.iter().map(|r| r.p_b).collect()
    }
}

/// `Ĥ_u = K + V` with `K` diagonal.
#[derive(Debug, Clone)]
pub struct Hamiltonian {
    pub inertia: f64,
    pub kinetic: Vec<f64>,
    pub potential: Option<SparseMatrix>,
}

impl Hamiltonian {
    pub fn new(basis: &PwBasis, inertia: f64, potential: Option<SparseMatrix>) -> Result<Self> {
        let kinetic = kinetic_diagonal(basis, inertia)?;
        if let Some(v) = &potential {
            if v.dim != basis.dim() {
                return Err(Error::Parameter("potential does not match the basis".into()));
            }
            let r = v.hermiticity_residual();
            if r > 1e-12 * v.max_row_sum().max(1.0) {
                return Err(Error::NotHermitian { residual: r });
            }
        }
        Ok(Self { inertia, kinetic, potential })
    }

    pub fn apply(&self, c: &[C64]) -> Vec<C64> {
        let mut out: Vec<C64> = c.iter().zip(&self.kinetic).map(|(x, k)| x * *k).collect();
        if let Some(v) = &self.potential {
            for (o, w) in out.iter_mut().zip(v.apply(c)) {
                *o += w;
            }
        }
        out
    }

    /// `⟨c|Ĥ|c⟩ / ⟨c|c⟩`.
    pub fn energy(&self, c: &[C64]) -> f64 {
        let hc = self.apply(c);
        let n2: f64 = c.iter().map(|x| x.norm_sqr()).sum();
        c.iter().zip(&hc).map(|(a, b)| a.conj() * b).sum::<C64>().re / n2
    }

    fn dense(&self) -> CMat {
        let mut m = self.potential.as_ref().map_or_else(|| CMat::zeros(self.kinetic.len(), self.kinetic.len()), |v| v.to_dense());
        for (i, k) in self.kinetic.iter().enumerate() {
            m[(i, i)] += *k;
        }
        (&m + m.adjoint()) * C64::new(0.5, 0.0)
    }

    /// Interval containing the spectrum.
    fn spectral_bounds(&self) -> (f64, f64) {
        let g = self.potential.as_ref().map_or(0.0, |v| v.max_row_sum());
        let lo = self.kinetic.iter().copied().fold(f64::INFINITY, f64::min);
        let hi = self.kinetic.iter().copied().fold(f64::NEG_INFINITY, f64::max);
        (lo - g, hi + g)
    }
}

/// `J_0(x) … J_{n−1}(x)` by Miller's downward recurrence, normalized with
/// `J_0 + 2 Σ J_{2k} = 1`.
pub fn bessel_j_sequence(x: f64, n: usize) -> Vec<f64> {
    if x == 0.0 {
        let mut v = alloc::vec![0.0; n];
        if n > 0 {
            v[0] = 1.0;
        }
        return v;
    }
    let start = n.max(x as usize) + 40 + (x.sqrt() * 10.0) as usize;
    let mut vals = alloc::vec![0.0; start + 2];
    vals[start] = 1e-300;
    for k in (1..=start).rev() {
        vals[k - 1] = 2.0 * k as f64 / x * vals[k] - vals[k + 1];
        if vals[k - 1].abs() > 1e250 {
            for v in vals.iter_mut().skip(k - 1) {
                *v *= 1e-250;
            }
        }
    }
    let norm = vals[0] + 2.0 * vals.iter().skip(2).step_by(2).sum::<f64>();
    vals.truncate(n);
    vals.iter().map(|v| v / norm).collect()
}

enum Propagator<'a> {
    Diagonal(&'a [f64]),
    Eigen { values: Vec<f64>, vectors: CMat },
    Chebyshev { h: &'a Hamiltonian, center: f64, radius: f64 },
}

impl<'a> Propagator<'a> {
    fn new(h: &'a Hamiltonian, method: Method) -> Self {
        let dense = match method {
            Method::Dense => true,
            Method::Chebyshev => false,
            Method::Auto => h.kinetic.len() <= DENSE_LIMIT,
        };
        if h.potential.is_none() && method != Method::Chebyshev {
            return Propagator::Diagonal(&h.kinetic);
        }
        if dense {
            let e = h.dense().symmetric_eigen();
            return Propagator::Eigen { values: e.eigenvalues.iter().copied().collect(), vectors: e.eigenvectors };
        }
        let (lo, hi) = h.spectral_bounds();
        Propagator::Chebyshev { h, center: 0.5 * (lo + hi), radius: (0.5 * (hi - lo)).max(1e-12) }
    }

    fn step(&self, c: &[C64], dt: f64) -> Vec<C64> {
        match self {
            Propagator::Diagonal(k) => c.iter().zip(k.iter()).map(|(x, e)| x * C64::from_polar(1.0, -e * dt)).collect(),
            Propagator::Eigen { values, vectors } => {
                let n = c.len();
                let mut y: Vec<C64> = (0..n).map(|k| (0..n).map(|r| vectors[(r, k)].conj() * c[r]).sum()).collect();
                for (yk, e) in y.iter_mut().zip(values) {
                    *yk *= C64::from_polar(1.0, -e * dt);
                }
                (0..n).map(|r| (0..n).map(|k| vectors[(r, k)] * y[k]).sum()).collect()
            }
            Propagator::Chebyshev { h, center, radius } => {
                // e^{−iĤdt} = e^{−i c dt} Σ (2 − δ_k0)(−i)^k J_k(r dt) T_k(H̃)
                let x = radius * dt.abs();
                let n_terms = (x as usize) + 60 + (x.sqrt() * 8.0) as usize;
                let js = bessel_j_sequence(x, n_terms);
                let scaled = |v: &[C64]| -> Vec<C64> {
                    h.apply(v).iter().zip(v).map(|(hv, vv)| (hv - vv * *center) / *radius).collect()
                };
                let sgn = if dt >= 0.0 { C64::new(0.0, -1.0) } else { C64::new(0.0, 1.0) };
                let mut t_prev: Vec<C64> = c.to_vec();
                let mut t_cur = scaled(c);
                let mut acc: Vec<C64> = c.iter().map(|v| v * js[0]).collect();
                let mut phase = sgn;
                for k in 1..n_terms {
                    let w = phase * (2.0 * js[k]);
                    for (a, t) in acc.iter_mut().zip(&t_cur) {
                        *a += w * t;
                    }
                    if js[k].abs() < 1e-18 && k as f64 > x {
                        break;
                    }
                    let ht = scaled(&t_cur);
                    let next: Vec<C64> = ht.iter().zip(&t_prev).map(|(a, b)| a * 2.0 - b).collect();
                    t_prev = core::mem::replace(&mut t_cur, next);
                    phase *= sgn;
                }
                let g = C64::from_polar(1.0, -center * dt);
                acc.iter().map(|a| a * g).collect()
            }
        }
    }
}

/// Coefficients at every time (times must be nondecreasing from 0 or later).
pub fn propagate(state: &PeterWeylState, hamiltonian: &Hamiltonian, times: &[f64], method: Method) -> Result<Vec<Vec<C64>>> {
    if times.windows(2).any(|w| !(w[1] >= w[0])) {
        return Err(Error::Parameter("times must be nondecreasing".into()));
    }
    let prop = Propagator::new(hamiltonian, method);
    let mut out = Vec::with_capacity(times.len());
    let mut c = state.coeffs.clone();
    let mut t_prev = 0.0;
    for &t in times {
        // the diagonal and dense propagators are exact for any step; the
        // Chebyshev series is resummed per interval
        c = prop.step(&c, t - t_prev);
        t_prev = t;
        out.push(c.clone());
    }
    Ok(out)
}

/// Evolves `state` and records norm, energy, topology distribution and
/// `⟨tr û⟩` at every time.
pub fn evolve(
    state: &PeterWeylState,
    basis: &PwBasis,
    hamiltonian: &Hamiltonian,
    times: &[f64],
    centers: &TopologyCenters,
    delta: f64,
    rule: &BallRule,
    method: Method,
) -> Result<EvolutionTrace> {
    let us = u_operator(basis);
    let n0 = state.norm();
    let snaps = propagate(state, hamiltonian, times, method)?;
    let mut rows = Vec::with_capacity(times.len());
    for (&t, c) in times.iter().zip(snaps) {
        let st = PeterWeylState::from_coeffs(basis, c)?;
        let dist = topology_distribution(&st, basis, centers, delta, rule)?;
        let n2 = st.norm().powi(2);
        let tr_u = (us[0].expectation(&st.coeffs, &st.coeffs) + us[3].expectation(&st.coeffs, &st.coeffs)) / n2;
        rows.push(EvolutionRow {
            t,
            norm: st.norm() / n0,
            energy: hamiltonian.energy(&st.coeffs),
            p_a: dist.p_a,
            p_b: dist.p_b,
            p_other: dist.p_other,
            tr_u,
        });
    }
    Ok(EvolutionTrace { inertia: hamiltonian.inertia, delta, rows })
}

/// `n`-th particle level at boundary condition `u`: the `n`-th smallest
/// `(m + α_j/2π)²` over integers `m` and eigenphases `α_j`, counted with
/// multiplicity from 0.
pub fn particle_level(u: &Unitary2, n: usize) -> f64 {
    let alphas = u.eigenphases().alphas;
    let reach = n as i64 / 2 + 2;
    let mut vals: Vec<f64> = alphas
        .iter()
        .flat_map(|a| (-reach..=reach).map(move |m| (m as f64 + a / core::f64::consts::TAU).powi(2)))
        .collect();
    vals.sort_by(f64::total_cmp);
    vals[n]
}

/// Born–Oppenheimer potential `E_n(u)` in the basis, by Euler quadrature.
/// `E_n` has kinks where levels cross, so the matrix is only as accurate as
/// the quadrature resolves them.
pub fn born_oppenheimer_potential(basis: &PwBasis, level: usize, rule: &EulerRule) -> SparseMatrix {
    let m = multiplication_matrix(basis, rule, |u| particle_level(u, level));
    SparseMatrix::from_dense(&((&m + m.adjoint()) * C64::new(0.5, 0.0)))
}

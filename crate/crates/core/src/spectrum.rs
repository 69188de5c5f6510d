//! Spectrum of `H = −d²/dx²` on `D_u`.
//!
//! Two independent routes:
//!
//! * [`analytic_spectrum`]: in the eigenbasis of `u` the conditions decouple
//!   into `φ(2π) = e^{iα}φ(0)`, solved by `e^{iκx}` with `κ = n + α/2π`, so
//!   `λ = κ²`. Zero modes are the constants in `ker(1 − u)`.
//! * [`solve_spectrum_numeric`]: roots of the secular determinant of the
//!   4×4 matching system for `ψᵢ = Aᵢ cos kx + Bᵢ sin kx`, multiplicities from
//!   its numerical kernel. It never looks at the eigenphases except to attach
//!   `(branch, n)` labels afterwards.
//!
//! For `λ = −κ² < 0` the same conditions give `det = 4 det u (cosh 2πκ − cos α₁)(cosh 2πκ − cos α₂)`,
//! which cannot vanish, so the spectrum is nonnegative. The numeric solver
//! re-checks this on every call.

#[allow(unused_imports)]
use num_traits::Float;
use alloc::format;
use alloc::vec::Vec;
use core::f64::consts::TAU;

use nalgebra::{Matrix2, Matrix4};
use serde::{Deserialize, Serialize};

use crate::error::{param, Error, Result};
use crate::linalg::{self, CMat};
use crate::roots::{bracket_roots, brent_minimize, brent_root};
use crate::unitary::Unitary2;
use crate::wave::{inner_product, TwoIntervalWave};
use crate::C64;

/// Singular values below `KERNEL_REL_TOL · σ_max` count toward a kernel.
pub const KERNEL_REL_TOL: f64 = 1e-8;
/// Default bracketing step in `k`.
pub const DEFAULT_K_STEP: f64 = 1.0 / 64.0;
/// Roots closer than this (in `k`) are the same root.
const MERGE_TOL: f64 = 1e-9;
const K_MIN: f64 = 1e-9;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum SpectrumSource {
    Analytic,
    Secular,
}

/// One distinct eigenvalue.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct SpectrumRow {
    pub lambda: f64,
    /// `k = √λ ≥ 0`.
    pub k: f64,
    /// Eigenphase branch `j ∈ {1, 2}` of the lowest-indexed contributing state.
    pub branch: u8,
    /// Signed index with `±k = n + α_j/2π`.
    pub n: i64,
    pub multiplicity: usize,
    /// `σ_min/σ_max` of the matching matrix at `k`.
    pub residual: f64,
    /// False when root polishing did not converge.
    pub converged: bool,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct SpectrumTable {
    pub source: SpectrumSource,
    pub u: Unitary2,
    pub lambda_max: f64,
    pub rows: Vec<SpectrumRow>,
}

impl SpectrumTable {
    /// Eigenvalues repeated according to multiplicity.
    pub fn expanded(&self) -> Vec<f64> {
        self.rows
            .iter()
            .flat_map(|r| core::iter::repeat_n(r.lambda, r.multiplicity))
            .collect()
    }

    pub fn total_multiplicity(&self) -> usize {
        self.rows.iter().map(|r| r.multiplicity).sum()
    }

    pub fn has_unconverged(&self) -> bool {
        self.rows.iter().any(|r| !r.converged)
    }
}

/// Largest `|Δλ|` between two multiplicity-expanded spectra, `None` if the
/// counts differ.
pub fn expanded_discrepancy(a: &[f64], b: &[f64]) -> Option<f64> {
    (a.len() == b.len()).then(|| a.iter().zip(b).map(|(x, y)| (x - y).abs()).fold(0.0, f64::max))
}

/// Row-by-row comparison: same multiplicities, returns `max |Δk|`.
pub fn row_discrepancy(a: &SpectrumTable, b: &SpectrumTable) -> Option<f64> {
    if a.rows.len() != b.rows.len() {
        return None;
    }
    let mut worst: f64 = 0.0;
    for (x, y) in a.rows.iter().zip(&b.rows) {
        if x.multiplicity != y.multiplicity {
            return None;
        }
        worst = worst.max((x.k - y.k).abs());
    }
    Some(worst)
}

/// A single state `e^{iκx} v_j` of the analytic solution.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct AnalyticState {
    pub kappa: f64,
    pub branch: u8,
    pub n: i64,
    /// Eigenvector of `u` for `e^{iα_j}`.
    pub vector: [C64; 2],
}

impl AnalyticState {
    pub fn lambda(&self) -> f64 {
        self.kappa * self.kappa
    }

    /// Normalized `e^{iκx} v_j / √(2π)`.
    pub fn wave(&self) -> TwoIntervalWave {
        let s = 1.0 / TAU.sqrt();
        let a = self.vector.map(|z| z * s);
        let b = self.vector.map(|z| z * C64::new(0.0, self.kappa.signum() * s));
        let b = if self.kappa == 0.0 { [C64::new(0.0, 0.0); 2] } else { b };
        TwoIntervalWave::trig(self.kappa.abs(), a, b)
    }
}

fn inclusion_bound(lambda_max: f64) -> f64 {
    lambda_max * (1.0 + 1e-12) + 1e-12
}

/// Every state `κ = n + α_j/2π` with `κ² ≤ λ_max`, sorted by `λ`, then branch,
/// then `κ` descending.
pub fn analytic_states(u: &Unitary2, lambda_max: f64) -> Vec<AnalyticState> {
    let frame = u.eigenphases();
    let kmax = lambda_max.max(0.0).sqrt();
    let bound = inclusion_bound(lambda_max);
    let mut out = Vec::new();
    for j in 0..2 {
        let shift = frame.alphas[j] / TAU;
        let lo = (-kmax - shift).floor() as i64 - 1;
        let hi = (kmax - shift).ceil() as i64 + 1;
        for n in lo..=hi {
            let kappa = n as f64 + shift;
            if kappa * kappa <= bound {
                out.push(AnalyticState { kappa, branch: j as u8 + 1, n, vector: frame.eigenvector(j) });
            }
        }
    }
    out.sort_by(|a, b| {
        a.lambda()
            .total_cmp(&b.lambda())
            .then(a.branch.cmp(&b.branch))
            .then(b.kappa.total_cmp(&a.kappa))
    });
    out
}

fn same_level(l0: f64, l1: f64) -> bool {
    (l1 - l0).abs() <= 1e-9 * l0.abs().max(1.0)
}

/// Closed-form spectrum up to `lambda_max`.
pub fn analytic_spectrum(u: &Unitary2, lambda_max: f64) -> Result<SpectrumTable> {
    if !(lambda_max > 0.0) {
        return Err(param("lambda_max must be positive"));
    }
    let states = analytic_states(u, lambda_max);
    let alphas = u.eigenphases().alphas;
    let mut rows: Vec<SpectrumRow> = Vec::new();
    let mut i = 0;
    while i < states.len() {
        let first = states[i];
        let mut j = i + 1;
        while j < states.len() && same_level(first.lambda(), states[j].lambda()) {
            j += 1;
        }
        let k = first.kappa.abs();
        let (branch, n) = label(&alphas, k);
        rows.push(SpectrumRow {
            lambda: k * k,
            k,
            branch,
            n,
            multiplicity: j - i,
            residual: relative_sigma_min(u, k),
            converged: true,
        });
        i = j;
    }
    Ok(SpectrumTable { source: SpectrumSource::Analytic, u: *u, lambda_max, rows })
}

/// `(branch, n)` minimizing `|±k − n − α_j/2π|`; ties go to the lower branch,
/// then to `+k`.
pub fn label(alphas: &[f64; 2], k: f64) -> (u8, i64) {
    let mut best = (f64::INFINITY, 1u8, 0i64);
    for (j, &a) in alphas.iter().enumerate() {
        for sign in [1.0, -1.0] {
            let t = sign * k - a / TAU;
            let n = t.round();
            let d = (t - n).abs();
            if d < best.0 - 1e-12 {
                best = (d, j as u8 + 1, n as i64);
            }
        }
    }
    (best.1, best.2)
}

/// Matching matrix `M(k) = [[c𝟙 − u, s𝟙], [−s𝟙, c𝟙 − u]]`, `c = cos 2πk`, `s = sin 2πk`.
pub fn secular_matrix(u: &Unitary2, k: f64) -> Matrix4<C64> {
    let (s, c) = (TAU * k).sin_cos();
    block_matrix(u, c, s, -s)
}

fn block_matrix(u: &Unitary2, c: f64, upper: f64, lower: f64) -> Matrix4<C64> {
    let mut m = Matrix4::<C64>::zeros();
    for i in 0..2 {
        for j in 0..2 {
            let d = if i == j { c } else { 0.0 };
            let x = C64::new(d, 0.0) - u.get(i, j);
            m[(i, j)] = x;
            m[(i + 2, j + 2)] = x;
        }
        m[(i, i + 2)] = C64::new(upper, 0.0);
        m[(i + 2, i)] = C64::new(lower, 0.0);
    }
    m
}

/// Linear ansatz `ψ = A + Bx`: `(1 − u)A + 2πB = 0`, `(1 − u)B = 0`.
pub fn zero_mode_matrix(u: &Unitary2) -> Matrix4<C64> {
    let mut m = Matrix4::<C64>::zeros();
    for i in 0..2 {
        for j in 0..2 {
            let d = if i == j { 1.0 } else { 0.0 };
            let x = C64::new(d, 0.0) - u.get(i, j);
            m[(i, j)] = x;
            m[(i + 2, j + 2)] = x;
        }
        m[(i, i + 2)] = C64::new(TAU, 0.0);
    }
    m
}

/// `det M(k)`.
pub fn secular_determinant(u: &Unitary2, k: f64) -> C64 {
    secular_matrix(u, k).determinant()
}

/// `4 e^{i(α₁+α₂)} (cos 2πk − cos α₁)(cos 2πk − cos α₂)`, the closed form of
/// [`secular_determinant`].
pub fn secular_determinant_closed_form(u: &Unitary2, k: f64) -> C64 {
    let a = u.eigenphases().alphas;
    let c = (TAU * k).cos();
    C64::from_polar(4.0, a[0] + a[1]) * ((c - a[0].cos()) * (c - a[1].cos()))
}

/// `Re(det M(k) / det u)`, real-valued with a sign change at every simple root.
fn secular_real(u: &Unitary2, det_u: C64, k: f64) -> f64 {
    (secular_determinant(u, k) / det_u).re
}

/// Scale against which singular values are judged: `‖M‖`, but never below
/// 1 since `M(k)` vanishes identically at integer `k` when `u = 𝟙`.
fn scale(s: &[f64]) -> f64 {
    s[0].max(1.0)
}

fn rel_min(s: &[f64; 4]) -> f64 {
    s[3] / scale(s)
}

fn kernel_dim(s: &[f64]) -> usize {
    let t = KERNEL_REL_TOL * scale(s);
    s.iter().filter(|&&x| x <= t).count()
}

fn singular_values(m: &Matrix4<C64>) -> [f64; 4] {
    let sv = m.singular_values();
    let mut s = [sv[0], sv[1], sv[2], sv[3]];
    s.sort_by(|a, b| b.total_cmp(a));
    s
}

fn relative_sigma_min(u: &Unitary2, k: f64) -> f64 {
    let m = if k < K_MIN { zero_mode_matrix(u) } else { secular_matrix(u, k) };
    rel_min(&singular_values(&m))
}

#[derive(Debug, Clone, Copy)]
struct Candidate {
    k: f64,
    rel_sigma: f64,
    converged: bool,
}

/// Secular-determinant spectrum on `[0, √λ_max]` with the default scan step.
pub fn solve_spectrum_numeric(u: &Unitary2, lambda_max: f64) -> Result<SpectrumTable> {
    solve_spectrum_numeric_with_step(u, lambda_max, DEFAULT_K_STEP)
}

pub fn solve_spectrum_numeric_with_step(u: &Unitary2, lambda_max: f64, step: f64) -> Result<SpectrumTable> {
    if !(lambda_max > 0.0) {
        return Err(param("lambda_max must be positive"));
    }
    negative_spectrum_guard(u, lambda_max)?;
    let det_u = u.det();
    let g = |k: f64| secular_real(u, det_u, k);
    let sigma = |k: f64| {
        rel_min(&singular_values(&secular_matrix(u, k)))
    };
    let kmax = lambda_max.sqrt();
    let k_hi = kmax + 2.0 * step;
    let mut cands: Vec<Candidate> = Vec::new();
    let push_root = |lo: f64, hi: f64, cands: &mut Vec<Candidate>| {
        if let Ok(p) = brent_root(g, lo, hi, 1e-15, 200) {
            if p.x >= K_MIN {
                cands.push(Candidate { k: p.x, rel_sigma: sigma(p.x), converged: p.converged });
            }
        }
    };

    // Simple roots: sign changes of the real secular function.
    for b in bracket_roots(g, 0.0, k_hi, step)? {
        if b.shared {
            for sb in bracket_roots(g, b.lo, b.hi, (b.hi - b.lo) / 256.0)? {
                push_root(sb.lo, sb.hi, &mut cands);
            }
        } else {
            push_root(b.lo, b.hi, &mut cands);
        }
    }
    // cos 2πk is stationary at half-integers, where pairs of roots can be
    // arbitrarily close; scan geometrically towards each of them.
    let mut k0 = 0.0;
    while k0 <= k_hi {
        for (lo, hi) in geometric_sign_changes(g, k0, step, 1e-11) {
            push_root(lo, hi, &mut cands);
        }
        k0 += 0.5;
    }
    // Even-order roots: local minima of σ_min/σ_max.
    let n = (k_hi / step).ceil() as usize;
    let ks: Vec<f64> = (0..=n).map(|i| i as f64 * step).collect();
    let ss: Vec<f64> = ks.iter().map(|&k| if k < K_MIN { f64::INFINITY } else { sigma(k) }).collect();
    for i in 1..n {
        if ss[i] <= ss[i - 1] && ss[i] <= ss[i + 1] {
            let lo = ks[i - 1].max(K_MIN);
            let p = brent_minimize(sigma, lo, ks[i + 1], 1e-15, 300);
            // M(0) is singular whenever some α = 0 although k = 0 carries no
            // trig mode; a minimum pinned at the lower edge is that artefact.
            let pinned = i == 1 && p.x <= 2.0 * K_MIN;
            if p.value <= KERNEL_REL_TOL && !pinned {
                cands.push(Candidate { k: p.x, rel_sigma: p.value, converged: p.converged });
            }
        }
    }

    let mut merged = merge_candidates(cands);
    // A root closer to an accepted one than the scan resolves hides inside
    // its V; deflate by the accepted root and look again.
    for _ in 0..2 {
        let mut extra = Vec::new();
        for c in &merged {
            let sv = singular_values(&secular_matrix(u, c.k));
            let m = kernel_dim(&sv).max(1) as i32;
            let (k0, m) = (c.k, m);
            let gd = move |k: f64| g(k) / (k - k0).powi(m);
            for (lo, hi) in geometric_sign_changes(gd, k0, step, 1e-10) {
                if let Ok(p) = brent_root(gd, lo, hi, 1e-15, 200) {
                    if p.x >= K_MIN {
                        extra.push(Candidate { k: p.x, rel_sigma: sigma(p.x), converged: p.converged });
                    }
                }
            }
        }
        let before = merged.len();
        extra.extend(merged);
        merged = merge_candidates(extra);
        if merged.len() == before {
            break;
        }
    }

    let alphas = u.eigenphases().alphas;
    let bound = inclusion_bound(lambda_max);
    let mut rows = Vec::new();
    // The linear ansatz forces B ∈ ker(1 − u) and (1 − u)A = −2πB; since
    // range(1 − u) ⊥ ker(1 − u) this leaves B = 0, A ∈ ker(1 − u).
    let one_minus_u = Matrix2::from_fn(|i, j| C64::new(if i == j { 1.0 } else { 0.0 }, 0.0) - u.get(i, j));
    let zs = one_minus_u.singular_values();
    let mut zs = [zs[0], zs[1]];
    zs.sort_by(|a, b| b.total_cmp(a));
    let zero_mult = kernel_dim(&zs);
    if zero_mult > 0 {
        let (branch, n) = label(&alphas, 0.0);
        rows.push(SpectrumRow {
            lambda: 0.0,
            k: 0.0,
            branch,
            n,
            multiplicity: zero_mult,
            residual: zs[1] / scale(&zs),
            converged: true,
        });
    }
    for c in merged {
        let lambda = c.k * c.k;
        if lambda > bound {
            continue;
        }
        let s = singular_values(&secular_matrix(u, c.k));
        let multiplicity = kernel_dim(&s).max(1);
        let (branch, n) = label(&alphas, c.k);
        rows.push(SpectrumRow { lambda, k: c.k, branch, n, multiplicity, residual: rel_min(&s), converged: c.converged });
    }
    Ok(SpectrumTable { source: SpectrumSource::Secular, u: *u, lambda_max, rows })
}

fn merge_candidates(mut cands: Vec<Candidate>) -> Vec<Candidate> {
    cands.retain(|c| c.rel_sigma <= KERNEL_REL_TOL || !c.converged);
    cands.sort_by(|a, b| a.k.total_cmp(&b.k));
    let mut merged: Vec<Candidate> = Vec::new();
    for c in cands {
        match merged.last_mut() {
            Some(last) if c.k - last.k <= MERGE_TOL => {
                if c.rel_sigma < last.rel_sigma {
                    *last = c;
                }
            }
            _ => merged.push(c),
        }
    }
    merged
}

/// Sign-change brackets of `f` on the points `center ± reach·0.7^m` down to
/// offset `floor`, skipping `k ≤ 0`.
fn geometric_sign_changes<F: Fn(f64) -> f64>(f: F, center: f64, reach: f64, floor: f64) -> Vec<(f64, f64)> {
    let mut out = Vec::new();
    for side in [-1.0, 1.0] {
        let mut prev: Option<(f64, f64)> = None;
        let mut d = reach;
        while d > floor {
            let x = center + side * d;
            if x > 0.0 {
                let y = f(x);
                if let Some((px, py)) = prev {
                    if py * y < 0.0 {
                        out.push((px.min(x), px.max(x)));
                    }
                }
                prev = Some((x, y));
            }
            d *= 0.7;
        }
    }
    out
}

/// Checks that no `λ = −κ²` with `0 < κ² ≤ λ_max` is an eigenvalue.
///
/// Uses `ψ = A e^{−κx} + B e^{κ(x−2π)}`, whose matching matrix
/// `[[E − u, 𝟙 − Eu], [u − E, 𝟙 − Eu]]` with `E = e^{−2πκ}` stays well
/// conditioned for large `κ`.
pub fn negative_spectrum_guard(u: &Unitary2, lambda_max: f64) -> Result<()> {
    let det_u = u.det();
    let kmax = lambda_max.sqrt();
    let n = (kmax / DEFAULT_K_STEP).ceil().max(1.0) as usize;
    for i in 1..=n {
        let kappa = i as f64 * kmax / n as f64;
        let e = (-TAU * kappa).exp();
        let mut m = Matrix4::<C64>::zeros();
        for r in 0..2 {
            for c in 0..2 {
                let d = if r == c { 1.0 } else { 0.0 };
                let x = C64::new(e * d, 0.0) - u.get(r, c);
                let y = C64::new(d, 0.0) - u.get(r, c) * e;
                m[(r, c)] = x;
                m[(r, c + 2)] = y;
                m[(r + 2, c)] = -x;
                m[(r + 2, c + 2)] = y;
            }
        }
        let gh = (m.determinant() / det_u).re;
        let sv = singular_values(&m);
        if !(gh > 0.0) || sv[3] <= KERNEL_REL_TOL * sv[0] {
            return Err(Error::Consistency(format!("negative eigenvalue candidate at λ = {:e}", -kappa * kappa)));
        }
    }
    Ok(())
}

/// Orthonormal eigenfunctions for one spectrum row.
#[derive(Debug, Clone)]
pub struct Eigenspace {
    pub lambda: f64,
    pub waves: Vec<TwoIntervalWave>,
    /// Kernel dimension differs from the row multiplicity.
    pub flagged: bool,
}

/// Eigenfunctions from the kernel of the matching matrix at `row.k`.
pub fn eigenfunction(u: &Unitary2, row: &SpectrumRow) -> Result<Eigenspace> {
    let linear = row.k < K_MIN;
    let m4 = if linear { zero_mode_matrix(u) } else { secular_matrix(u, row.k) };
    let m = CMat::from_fn(4, 4, |i, j| m4[(i, j)]);
    let ker = linalg::kernel(&m, KERNEL_REL_TOL);
    if ker.vectors.is_empty() {
        return Err(Error::Consistency(format!("no kernel at k = {}", row.k)));
    }
    let mut waves: Vec<TwoIntervalWave> = Vec::new();
    for v in &ker.vectors {
        let a = [v[0], v[1]];
        let b = [v[2], v[3]];
        let mut w = if linear { TwoIntervalWave::linear(a, b) } else { TwoIntervalWave::trig(row.k, a, b) };
        for q in &waves {
            let c = inner_product(q, &w)?;
            w = subtract(&w, q, c);
        }
        let nrm = w.norm();
        if nrm > 1e-8 {
            waves.push(w.normalized().with_domain_tag(*u));
        }
    }
    let flagged = waves.len() != row.multiplicity;
    Ok(Eigenspace { lambda: row.lambda, waves, flagged })
}

fn subtract(w: &TwoIntervalWave, q: &TwoIntervalWave, c: C64) -> TwoIntervalWave {
    let mut terms = w.terms().expect("closed form").to_vec();
    terms.extend(q.scale(-c).terms().expect("closed form").iter().copied());
    TwoIntervalWave::from_terms(terms)
}

/// `max |−ψ″ − λψ|` sampled on a closed grid of `p` points.
pub fn eigen_residual(psi: &TwoIntervalWave, lambda: f64, p: usize) -> f64 {
    let mut worst: f64 = 0.0;
    for i in 0..2 {
        for m in 0..p {
            let x = crate::wave::grid_x(m, p);
            let d2 = psi.derivative(i, x, 2).unwrap_or(C64::new(f64::NAN, 0.0));
            let f = psi.eval(i, x).unwrap_or(C64::new(f64::NAN, 0.0));
            worst = worst.max((-d2 - f * lambda).norm());
        }
    }
    worst
}

/// `u = diag(1, e^{iθ})`.
pub fn diag_phase(theta: f64) -> Unitary2 {
    Unitary2::case_b(0.0, theta)
}

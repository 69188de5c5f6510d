//! Character spaces of finite commuting hermitian families and the clock/shift
//! pair of the rational torus.
//!
//! A character of the algebra generated by commuting hermitian `M_1 … M_n` is
//! a joint eigenvalue tuple `(x(M_1), …, x(M_n))`. The Gel'fand transform sends
//! `p(M)` to the function `x ↦ p(x(M))`.

use alloc::vec;
use alloc::vec::Vec;
use core::f64::consts::TAU;

use nalgebra::DMatrix;
#[allow(unused_imports)]
use num_traits::Float;
use rand::Rng as _;
use rand_distr::{Distribution, StandardNormal};
use serde::{Deserialize, Serialize};

use crate::error::{param, Error, Result};
use crate::linalg::{commutator, hermiticity_residual, operator_norm, CMat};
use crate::{rng, Rng, C64};

pub const DEFAULT_COMMUTATION_TOL: f64 = 1e-10;
/// Residual bound for a joint eigenvector, relative to `max(‖M‖, 1)`.
pub const CHARACTER_TOL: f64 = 1e-8;
const DEFAULT_SEED: u64 = 0x6765_6c66;
const MAX_RETRIES: usize = 8;

#[derive(Debug, Clone)]
pub struct CommutingFamily {
    mats: Vec<CMat>,
    pub commutation_tol: f64,
    scale: f64,
}

impl CommutingFamily {
    /// Checks hermiticity and `‖[M_i, M_j]‖ ≤ tol · max‖M‖²`.
    pub fn new(mats: Vec<CMat>, commutation_tol: f64) -> Result<Self> {
        let Some(first) = mats.first() else {
            return Err(param("empty family"));
        };
        let p = first.nrows();
        if p == 0 || mats.iter().any(|m| m.nrows() != p || m.ncols() != p) {
            return Err(param("family members must be square of one common size"));
        }
        let scale = mats.iter().map(operator_norm).fold(0.0, f64::max);
        for m in &mats {
            let r = hermiticity_residual(m);
            if r > commutation_tol * scale.max(1.0) {
                return Err(Error::NotHermitian { residual: r });
            }
        }
        let bound = commutation_tol * scale * scale;
        for i in 0..mats.len() {
            for j in i + 1..mats.len() {
                let residual = operator_norm(&commutator(&mats[i], &mats[j]));
                if residual > bound {
                    return Err(Error::NotCommuting { i, j, residual });
                }
            }
        }
        Ok(Self { mats, commutation_tol, scale })
    }

    pub fn mats(&self) -> &[CMat] {
        &self.mats
    }

    pub fn dim(&self) -> usize {
        self.mats[0].nrows()
    }

    pub fn len(&self) -> usize {
        self.mats.len()
    }

    pub fn is_empty(&self) -> bool {
        self.mats.is_empty()
    }

    /// `max ‖M_i‖`.
    pub fn scale(&self) -> f64 {
        self.scale
    }
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct Character {
    pub point: Vec<f64>,
    pub multiplicity: usize,
    /// `max_i ‖M_i V − x_i V‖` over the joint eigenspace `V`.
    pub residual: f64,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct CharacterSet {
    pub points: Vec<Character>,
}

impl CharacterSet {
    pub fn total_multiplicity(&self) -> usize {
        self.points.iter().map(|c| c.multiplicity).sum()
    }

    pub fn max_residual(&self) -> f64 {
        self.points.iter().map(|c| c.residual).fold(0.0, f64::max)
    }
}

/// A character together with an orthonormal basis of its joint eigenspace.
#[derive(Debug, Clone)]
pub struct JointEigenspace {
    pub character: Character,
    pub basis: CMat,
}

fn compress(m: &CMat, v: &CMat) -> CMat {
    v.adjoint() * m * v
}

fn scalar_spread(m: &CMat) -> f64 {
    let n = m.nrows();
    let mean = (0..n).map(|i| m[(i, i)].re).sum::<f64>() / n as f64;
    let mut s: f64 = 0.0;
    for i in 0..n {
        for j in 0..n {
            let want = if i == j { mean } else { 0.0 };
            s = s.max((m[(i, j)] - want).norm());
        }
    }
    s
}

fn split(mats: &[CMat], v: &CMat, tol: f64, rng: &mut Rng, out: &mut Vec<CMat>) -> Result<()> {
    let local: Vec<CMat> = mats.iter().map(|m| compress(m, v)).collect();
    if local.iter().all(|m| scalar_spread(m) <= tol) {
        out.push(v.clone());
        return Ok(());
    }
    let d = v.ncols();
    for _ in 0..MAX_RETRIES {
        let mut combo = CMat::zeros(d, d);
        for m in &local {
            let c: f64 = rng.sample(StandardNormal);
            combo += m * C64::new(c, 0.0);
        }
        combo = (&combo + combo.adjoint()) * C64::new(0.5, 0.0);
        let eig = combo.symmetric_eigen();
        let mut order: Vec<usize> = (0..d).collect();
        order.sort_by(|&a, &b| eig.eigenvalues[a].total_cmp(&eig.eigenvalues[b]));
        let mut clusters: Vec<Vec<usize>> = Vec::new();
        for &i in &order {
            match clusters.last_mut() {
                Some(c) if eig.eigenvalues[i] - eig.eigenvalues[*c.last().unwrap()] <= tol => c.push(i),
                _ => clusters.push(vec![i]),
            }
        }
        if clusters.len() == 1 {
            continue;
        }
        for c in clusters {
            let w = CMat::from_fn(d, c.len(), |r, k| eig.eigenvectors[(r, c[k])]);
            split(mats, &(v * w), tol, rng, out)?;
        }
        return Ok(());
    }
    Err(Error::Consistency("joint eigenspace could not be resolved".into()))
}

/// Joint eigenspaces, sorted lexicographically by their points.
pub fn joint_eigenspaces(fam: &CommutingFamily, seed: u64) -> Result<Vec<JointEigenspace>> {
    let p = fam.dim();
    let scale = fam.scale.max(1.0);
    let tol = (fam.commutation_tol.sqrt() * scale).max(1e-10 * scale);
    let mut rng = rng(seed);
    let mut blocks = Vec::new();
    split(&fam.mats, &CMat::identity(p, p), tol, &mut rng, &mut blocks)?;
    let mut out: Vec<JointEigenspace> = blocks
        .into_iter()
        .map(|v| {
            let m = v.ncols();
            let point: Vec<f64> = fam
                .mats
                .iter()
                .map(|a| (0..m).map(|i| compress(a, &v)[(i, i)].re).sum::<f64>() / m as f64)
                .collect();
            let residual = fam
                .mats
                .iter()
                .zip(&point)
                .map(|(a, &x)| operator_norm(&(a * &v - &v * C64::new(x, 0.0))))
                .fold(0.0, f64::max);
            JointEigenspace { character: Character { point, multiplicity: m, residual }, basis: v }
        })
        .collect();
    out.sort_by(|a, b| {
        a.character
            .point
            .iter()
            .zip(&b.character.point)
            .map(|(x, y)| x.total_cmp(y))
            .find(|o| o.is_ne())
            .unwrap_or(core::cmp::Ordering::Equal)
    });
    Ok(out)
}

pub fn joint_spectrum_seeded(fam: &CommutingFamily, seed: u64) -> Result<CharacterSet> {
    Ok(CharacterSet { points: joint_eigenspaces(fam, seed)?.into_iter().map(|e| e.character).collect() })
}

pub fn joint_spectrum(fam: &CommutingFamily) -> Result<CharacterSet> {
    joint_spectrum_seeded(fam, DEFAULT_SEED)
}

/// Real polynomial in the family members: `Σ c · M_1^{e_1} ⋯ M_n^{e_n}`.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct Polynomial {
    pub terms: Vec<(f64, Vec<u32>)>,
}

impl Polynomial {
    /// `t ↦ t` in variable `i` of `n`.
    pub fn variable(i: usize, n: usize) -> Self {
        let mut e = vec![0; n];
        e[i] = 1;
        Self { terms: vec![(1.0, e)] }
    }

    /// `Σ_q coeffs[q] t^q` in variable `i` of `n`.
    pub fn univariate(i: usize, n: usize, coeffs: &[f64]) -> Self {
        let terms = coeffs
            .iter()
            .enumerate()
            .map(|(q, &c)| {
                let mut e = vec![0; n];
                e[i] = q as u32;
                (c, e)
            })
            .collect();
        Self { terms }
    }

    /// Gaussian coefficients on every monomial of total degree `≤ degree`.
    pub fn random(n: usize, degree: u32, rng: &mut Rng) -> Self {
        let mut terms = Vec::new();
        let mut e = vec![0u32; n];
        loop {
            if e.iter().sum::<u32>() <= degree {
                let c: f64 = rng.sample(StandardNormal);
                terms.push((c, e.clone()));
            }
            let mut i = 0;
            while i < n {
                e[i] += 1;
                if e[i] <= degree {
                    break;
                }
                e[i] = 0;
                i += 1;
            }
            if i == n {
                break;
            }
        }
        Self { terms }
    }

    pub fn eval(&self, x: &[f64]) -> f64 {
        self.terms
            .iter()
            .map(|(c, e)| c * e.iter().zip(x).map(|(&q, &v)| v.powi(q as i32)).product::<f64>())
            .sum()
    }

    pub fn eval_matrix(&self, mats: &[CMat]) -> CMat {
        let p = mats[0].nrows();
        let mut out = CMat::zeros(p, p);
        for (c, e) in &self.terms {
            let mut acc: Option<CMat> = None;
            for (m, &q) in mats.iter().zip(e) {
                for _ in 0..q {
                    acc = Some(match acc {
                        None => m.clone(),
                        Some(a) => a * m,
                    });
                }
            }
            let term = acc.unwrap_or_else(|| CMat::identity(p, p));
            out += term * C64::new(*c, 0.0);
        }
        out
    }
}

/// `max |x(p(M)) − p(x(M))|` over all characters `x` and polynomials `p`,
/// where `x(A)` is the mean diagonal of `A` compressed to the joint eigenspace.
pub fn gelfand_transform_check(fam: &CommutingFamily, polys: &[Polynomial], seed: u64) -> Result<f64> {
    let spaces = joint_eigenspaces(fam, seed)?;
    let mut worst: f64 = 0.0;
    for p in polys {
        if p.terms.iter().any(|(_, e)| e.len() != fam.len()) {
            return Err(param("polynomial arity does not match the family"));
        }
        let pm = p.eval_matrix(&fam.mats);
        for s in &spaces {
            let m = s.basis.ncols();
            let c = compress(&pm, &s.basis);
            let lhs = (0..m).map(|i| c[(i, i)].re).sum::<f64>() / m as f64;
            worst = worst.max((lhs - p.eval(&s.character.point)).abs());
        }
    }
    Ok(worst)
}

/// Haar-random unitary from the QR decomposition of a complex Gaussian matrix.
pub fn random_unitary(p: usize, rng: &mut Rng) -> CMat {
    let g = CMat::from_fn(p, p, |_, _| {
        let (a, b): (f64, f64) = (StandardNormal.sample(rng), StandardNormal.sample(rng));
        C64::new(a, b)
    });
    let qr = g.qr();
    let (q, r) = (qr.q(), qr.r());
    let mut q = q;
    for j in 0..p {
        let d = r[(j, j)];
        let ph = if d.norm() > 0.0 { d / d.norm() } else { C64::new(1.0, 0.0) };
        for i in 0..p {
            q[(i, j)] *= ph;
        }
    }
    q
}

/// `n` matrices `Q D_i Q†` with a shared random eigenbasis and `distinct`
/// random joint points of size `p` (points repeat when `distinct < p`).
pub fn random_commuting_family(n: usize, p: usize, distinct: usize, rng: &mut Rng) -> Result<CommutingFamily> {
    if distinct == 0 || distinct > p {
        return Err(param("need 1 ≤ distinct ≤ p"));
    }
    let q = random_unitary(p, rng);
    let pts: Vec<Vec<f64>> = (0..distinct).map(|_| (0..n).map(|_| rng.gen_range(-1.0..1.0)).collect()).collect();
    let mats = (0..n)
        .map(|i| {
            let d = DMatrix::from_fn(p, p, |r, c| if r == c { C64::new(pts[r % distinct][i], 0.0) } else { C64::new(0.0, 0.0) });
            let m = &q * d * q.adjoint();
            (&m + m.adjoint()) * C64::new(0.5, 0.0)
        })
        .collect();
    CommutingFamily::new(mats, DEFAULT_COMMUTATION_TOL)
}

/// Generalized permutation matrix: column `j` has the single entry
/// `ω^{phase[j]}` in row `perm[j]`, with `ω = e^{2πi/k}`.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct MonomialMatrix {
    pub k: usize,
    pub perm: Vec<usize>,
    pub phase: Vec<usize>,
}

impl MonomialMatrix {
    pub fn dim(&self) -> usize {
        self.perm.len()
    }

    pub fn mul(&self, rhs: &Self) -> Self {
        let n = self.dim();
        let perm = (0..n).map(|j| self.perm[rhs.perm[j]]).collect();
        let phase = (0..n).map(|j| (rhs.phase[j] + self.phase[rhs.perm[j]]) % self.k).collect();
        Self { k: self.k, perm, phase }
    }

    /// Multiply by `ω^q`.
    pub fn times_omega(&self, q: usize) -> Self {
        Self { k: self.k, perm: self.perm.clone(), phase: self.phase.iter().map(|p| (p + q) % self.k).collect() }
    }

    pub fn adjoint(&self) -> Self {
        let n = self.dim();
        let mut perm = vec![0; n];
        let mut phase = vec![0; n];
        for j in 0..n {
            perm[self.perm[j]] = j;
            phase[self.perm[j]] = (self.k - self.phase[j]) % self.k;
        }
        Self { k: self.k, perm, phase }
    }

    pub fn is_identity(&self) -> bool {
        self.perm.iter().enumerate().all(|(j, &p)| p == j) && self.phase.iter().all(|&q| q == 0)
    }

    pub fn to_dense(&self) -> CMat {
        let n = self.dim();
        let mut m = CMat::zeros(n, n);
        for j in 0..n {
            m[(self.perm[j], j)] = root_of_unity(self.phase[j], self.k);
        }
        m
    }
}

/// `e^{2πiq/k}` with the real and imaginary parts of the eighth roots set exactly.
pub fn root_of_unity(q: usize, k: usize) -> C64 {
    let q = q % k;
    if (4 * q).is_multiple_of(k) {
        return match 4 * q / k {
            0 => C64::new(1.0, 0.0),
            1 => C64::new(0.0, 1.0),
            2 => C64::new(-1.0, 0.0),
            _ => C64::new(0.0, -1.0),
        };
    }
    C64::from_polar(1.0, TAU * q as f64 / k as f64)
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct FuzzyTorus {
    pub k: usize,
    /// Clock `diag(ω^j)`.
    pub u1: MonomialMatrix,
    /// Shift `e_j ↦ e_{j+1 mod k}`.
    pub u2: MonomialMatrix,
    pub omega: C64,
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct FuzzyTorusReport {
    pub k: usize,
    /// `U1 U2 = ω U2 U1` in exact phase arithmetic.
    pub relation_exact: bool,
    pub unitary_exact: bool,
    /// `U1^k = 1`, i.e. `ω^k = 1`, in exact arithmetic.
    pub omega_order_exact: bool,
    /// `‖U1U2 − ωU2U1‖` in floating point.
    pub relation_residual: f64,
    pub unitarity_residual: f64,
    /// `‖[U1, U2]‖`, equal to `|1 − ω|`.
    pub commutator_norm: f64,
}

pub fn fuzzy_torus(k: usize) -> Result<FuzzyTorus> {
    if k < 2 {
        return Err(param("fuzzy torus needs K ≥ 2"));
    }
    let u1 = MonomialMatrix { k, perm: (0..k).collect(), phase: (0..k).collect() };
    let u2 = MonomialMatrix { k, perm: (0..k).map(|j| (j + 1) % k).collect(), phase: vec![0; k] };
    Ok(FuzzyTorus { k, u1, u2, omega: root_of_unity(1, k) })
}

impl FuzzyTorus {
    pub fn report(&self) -> FuzzyTorusReport {
        let lhs = self.u1.mul(&self.u2);
        let rhs = self.u2.mul(&self.u1).times_omega(1);
        let unitary_exact = [&self.u1, &self.u2].iter().all(|u| u.adjoint().mul(u).is_identity());
        let (d1, d2) = (self.u1.to_dense(), self.u2.to_dense());
        let relation_residual = operator_norm(&(&d1 * &d2 - &d2 * &d1 * self.omega));
        let id = CMat::identity(self.k, self.k);
        let unitarity_residual =
            operator_norm(&(d1.adjoint() * &d1 - &id)).max(operator_norm(&(d2.adjoint() * &d2 - &id)));
        FuzzyTorusReport {
            k: self.k,
            relation_exact: lhs == rhs,
            unitary_exact,
            omega_order_exact: (1..self.k).fold(self.u1.clone(), |acc, _| acc.mul(&self.u1)).is_identity(),
            relation_residual,
            unitarity_residual,
            commutator_norm: operator_norm(&commutator(&d1, &d2)),
        }
    }
}

/// Hermitian parts `((U + U†)/2, (U − U†)/2i)` of a unitary, as a family.
pub fn hermitian_parts(u: &CMat) -> Result<CommutingFamily> {
    let re = (u + u.adjoint()) * C64::new(0.5, 0.0);
    let im = (u - u.adjoint()) * C64::new(0.0, -0.5);
    CommutingFamily::new(vec![re, im], DEFAULT_COMMUTATION_TOL)
}

/// Hermitian parts of the `k × k` shift, the clock in the Fourier basis: its
/// character set is the discretized circle `(cos 2πj/k, sin 2πj/k)`.
pub fn clock_pair(k: usize) -> Result<CommutingFamily> {
    hermitian_parts(&fuzzy_torus(k)?.u2.to_dense())
}

/// Largest deviation of the points from the unit circle.
pub fn circle_radius_error(set: &CharacterSet) -> f64 {
    set.points
        .iter()
        .map(|c| (c.point.iter().map(|x| x * x).sum::<f64>().sqrt() - 1.0).abs())
        .fold(0.0, f64::max)
}

#[cfg(test)]
mod tests {
    use super::*;

    fn diag(v: &[f64]) -> CMat {
        CMat::from_fn(v.len(), v.len(), |i, j| if i == j { C64::new(v[i], 0.0) } else { C64::new(0.0, 0.0) })
    }

    #[test]
    fn single_diagonal() {
        let fam = CommutingFamily::new(vec![diag(&[3.0, 1.0, 2.0])], 1e-12).unwrap();
        let s = joint_spectrum(&fam).unwrap();
        let pts: Vec<f64> = s.points.iter().map(|c| c.point[0]).collect();
        assert_eq!(pts, vec![1.0, 2.0, 3.0]);
        assert_eq!(s.total_multiplicity(), 3);
    }

    #[test]
    fn discretized_circle() {
        let s = joint_spectrum(&clock_pair(32).unwrap()).unwrap();
        assert_eq!(s.points.len(), 32);
        assert!(s.points.iter().all(|c| c.multiplicity == 1));
        assert!(circle_radius_error(&s) <= 1e-10);
        assert!(s.max_residual() <= 1e-8);
        let mut angles: Vec<f64> = s.points.iter().map(|c| crate::rem_euclid(c.point[1].atan2(c.point[0]), TAU)).collect();
        angles.sort_by(f64::total_cmp);
        for (j, a) in angles.iter().enumerate() {
            let d = (a - TAU * j as f64 / 32.0).abs();
            assert!(d.min(TAU - d) < 1e-10, "{j}: {a}");
        }
    }

    #[test]
    fn parabola() {
        let mut r = rng(3);
        let a = random_commuting_family(1, 8, 8, &mut r).unwrap().mats()[0].clone();
        let fam = CommutingFamily::new(vec![a.clone(), &a * &a], 1e-10).unwrap();
        let s = joint_spectrum(&fam).unwrap();
        assert_eq!(s.points.len(), 8);
        for c in &s.points {
            assert!((c.point[1] - c.point[0] * c.point[0]).abs() < 1e-10);
        }
    }

    #[test]
    fn degenerate_points_keep_multiplicity() {
        let mut r = rng(8);
        let fam = random_commuting_family(2, 12, 4, &mut r).unwrap();
        let s = joint_spectrum(&fam).unwrap();
        assert_eq!(s.points.len(), 4);
        assert!(s.points.iter().all(|c| c.multiplicity == 3));
        assert!(s.max_residual() <= 1e-8);
    }

    #[test]
    fn refuses_non_commuting() {
        let t = fuzzy_torus(3).unwrap();
        let f = hermitian_parts(&t.u1.to_dense()).unwrap();
        let g = hermitian_parts(&t.u2.to_dense()).unwrap();
        let err = CommutingFamily::new(vec![f.mats()[0].clone(), g.mats()[0].clone()], 1e-10).unwrap_err();
        assert!(matches!(err, Error::NotCommuting { i: 0, j: 1, .. }));
    }

    #[test]
    fn transform_identity_and_square() {
        let fam = CommutingFamily::new(vec![diag(&[1.0, 2.0, 3.0])], 1e-12).unwrap();
        assert_eq!(gelfand_transform_check(&fam, &[Polynomial::variable(0, 1)], 1).unwrap(), 0.0);
        let p = Polynomial::univariate(0, 1, &[-1.0, 0.0, 1.0]);
        assert!(gelfand_transform_check(&fam, &[p], 1).unwrap() <= 1e-12);
    }

    #[test]
    fn fuzzy_relations() {
        assert!(fuzzy_torus(1).is_err());
        let t = fuzzy_torus(2).unwrap();
        assert_eq!(t.omega, C64::new(-1.0, 0.0));
        assert_eq!(t.u1.to_dense(), diag(&[1.0, -1.0]));
        for k in 2..=12 {
            let r = fuzzy_torus(k).unwrap().report();
            assert!(r.relation_exact && r.unitary_exact && r.omega_order_exact);
            assert!(r.relation_residual <= 1e-14);
            let w = root_of_unity(1, k);
            assert!((r.commutator_norm - (C64::new(1.0, 0.0) - w).norm()).abs() < 1e-12);
        }
        assert_eq!(fuzzy_torus(4).unwrap().report().relation_residual, 0.0);
    }

    #[test]
    fn each_generator_alone_gives_the_circle() {
        let t = fuzzy_torus(7).unwrap();
        for u in [&t.u1, &t.u2] {
            let s = joint_spectrum(&hermitian_parts(&u.to_dense()).unwrap()).unwrap();
            assert_eq!(s.points.len(), 7);
            assert!(circle_radius_error(&s) <= 1e-12);
        }
    }

    mod props {
        use super::*;
        use proptest::prelude::*;

        proptest! {
            #![proptest_config(ProptestConfig::with_cases(24))]

            #[test]
            fn random_polynomials(seed in 0u64..10_000) {
                let mut r = rng(seed);
                let fam = random_commuting_family(2, 16, 16, &mut r).unwrap();
                let polys: Vec<Polynomial> = (0..3).map(|_| Polynomial::random(2, 4, &mut r)).collect();
                prop_assert!(gelfand_transform_check(&fam, &polys, seed).unwrap() <= 1e-8);
            }

            #[test]
            fn permutation_invariant(seed in 0u64..10_000) {
                let mut r = rng(seed);
                let fam = random_commuting_family(3, 9, 5, &mut r).unwrap();
                let s = joint_spectrum(&fam).unwrap();
                let m = fam.mats();
                let swapped = CommutingFamily::new(vec![m[2].clone(), m[0].clone(), m[1].clone()], fam.commutation_tol).unwrap();
                let t = joint_spectrum(&swapped).unwrap();
                prop_assert_eq!(s.points.len(), t.points.len());
                for c in &s.points {
                    let want = [c.point[2], c.point[0], c.point[1]];
                    prop_assert!(t.points.iter().any(|d| d.multiplicity == c.multiplicity
                        && d.point.iter().zip(&want).all(|(a, b)| (a - b).abs() < 1e-10)));
                }
            }

            #[test]
            fn single_matrix_matches_eigenvalues(seed in 0u64..10_000) {
                let mut r = rng(seed);
                let fam = random_commuting_family(1, 10, 10, &mut r).unwrap();
                let mut ev: Vec<f64> = fam.mats()[0].clone().symmetric_eigen().eigenvalues.iter().copied().collect();
                ev.sort_by(f64::total_cmp);
                let s = joint_spectrum(&fam).unwrap();
                for (c, e) in s.points.iter().zip(&ev) {
                    prop_assert!((c.point[0] - e).abs() <= 1e-10);
                }
            }
        }
    }
}

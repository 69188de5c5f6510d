//! 2×2 unitary boundary-condition matrices and their eigenphases.

#[allow(unused_imports)]
use num_traits::Float;
use core::f64::consts::{FRAC_1_SQRT_2, PI, TAU};

use rand::Rng as _;
use rand_distr::StandardNormal;
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::{Rng, C64};

/// Row-major 2×2 complex matrix.
pub type Mat2 = [C64; 4];

pub(crate) const ZERO: C64 = C64::new(0.0, 0.0);
pub(crate) const ONE: C64 = C64::new(1.0, 0.0);

pub fn mat2_mul(a: &Mat2, b: &Mat2) -> Mat2 {
    [
        a[0] * b[0] + a[1] * b[2],
        a[0] * b[1] + a[1] * b[3],
        a[2] * b[0] + a[3] * b[2],
        a[2] * b[1] + a[3] * b[3],
    ]
}

pub fn mat2_adjoint(a: &Mat2) -> Mat2 {
    [a[0].conj(), a[2].conj(), a[1].conj(), a[3].conj()]
}

pub fn mat2_apply(a: &Mat2, v: [C64; 2]) -> [C64; 2] {
    [a[0] * v[0] + a[1] * v[1], a[2] * v[0] + a[3] * v[1]]
}

pub fn mat2_frobenius_distance(a: &Mat2, b: &Mat2) -> f64 {
    a.iter().zip(b).map(|(x, y)| (x - y).norm_sqr()).sum::<f64>().sqrt()
}

/// A 2×2 unitary matrix `u`, the boundary-condition parameter of `D_u`.
///
/// Every constructor checks `‖u†u − 𝟙‖_F ≤ 1e−12`.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
#[serde(try_from = "RawUnitary", into = "RawUnitary")]
pub struct Unitary2 {
    m: Mat2,
}

#[derive(Serialize, Deserialize)]
struct RawUnitary {
    entries: [C64; 4],
}

impl TryFrom<RawUnitary> for Unitary2 {
    type Error = Error;
    fn try_from(raw: RawUnitary) -> Result<Self> {
        Unitary2::new(raw.entries)
    }
}

impl From<Unitary2> for RawUnitary {
    fn from(u: Unitary2) -> Self {
        RawUnitary { entries: u.m }
    }
}

impl Unitary2 {
    pub const UNITARITY_TOL: f64 = 1e-12;

    /// Validates unitarity of the row-major entries `[u11, u12, u21, u22]`.
    pub fn new(entries: Mat2) -> Result<Self> {
        let residual = unitarity_residual(&entries);
        if !(residual <= Self::UNITARITY_TOL) {
            return Err(Error::NotUnitary { residual });
        }
        Ok(Self { m: entries })
    }

    /// For entries unitary by construction.
    pub(crate) fn from_entries_unchecked(entries: Mat2) -> Self {
        Self { m: entries }
    }

    pub fn identity() -> Self {
        Self { m: [ONE, ZERO, ZERO, ONE] }
    }

    /// Case a: `[[0, e^{iθ12}], [e^{iθ21}, 0]]`, gluing the intervals into one circle.
    pub fn case_a(theta12: f64, theta21: f64) -> Self {
        Self { m: [ZERO, C64::from_polar(1.0, theta12), C64::from_polar(1.0, theta21), ZERO] }
    }

    /// Case b: `diag(e^{iθ11}, e^{iθ22})`, closing each interval into its own circle.
    pub fn case_b(theta11: f64, theta22: f64) -> Self {
        Self { m: [C64::from_polar(1.0, theta11), ZERO, ZERO, C64::from_polar(1.0, theta22)] }
    }

    /// `u_a` with vanishing phases, the plain swap `[[0,1],[1,0]]`.
    pub fn swap() -> Self {
        Self::case_a(0.0, 0.0)
    }

    /// `(1/√2) [[1, 1], [−1, 1]]`: neither monomial pattern, two intervals.
    pub fn mixing() -> Self {
        let s = C64::new(FRAC_1_SQRT_2, 0.0);
        Self { m: [s, s, -s, s] }
    }

    /// Haar-distributed random unitary.
    pub fn random(rng: &mut Rng) -> Self {
        let mut q = [0.0f64; 4];
        loop {
            for x in q.iter_mut() {
                *x = rng.sample(StandardNormal);
            }
            let n = q.iter().map(|x| x * x).sum::<f64>().sqrt();
            if n > 1e-6 {
                q.iter_mut().for_each(|x| *x /= n);
                break;
            }
        }
        let a = C64::new(q[0], q[1]);
        let b = C64::new(q[2], q[3]);
        let phase = C64::from_polar(1.0, rng.gen_range(0.0..TAU));
        Self::from_raw_normalized([phase * a, phase * b, -phase * b.conj(), phase * a.conj()])
    }

    /// `exp(i·h)` for a hermitian `h`.
    pub fn exp_i_hermitian(h: &Mat2) -> Result<Self> {
        let herm = mat2_frobenius_distance(h, &mat2_adjoint(h));
        if herm > 1e-12 {
            return Err(Error::NotHermitian { residual: herm });
        }
        // h = t𝟙 + r·n̂·σ ; exp(ih) = e^{it}(cos r 𝟙 + i sin r n̂·σ)
        let t = 0.5 * (h[0].re + h[3].re);
        let (nx, ny, nz) = (h[1].re, -h[1].im, 0.5 * (h[0].re - h[3].re));
        let r = (nx * nx + ny * ny + nz * nz).sqrt();
        let (c, s) = (r.cos(), if r > 0.0 { r.sin() / r } else { 1.0 });
        let i = C64::new(0.0, 1.0);
        let ph = C64::from_polar(1.0, t);
        let m = [
            ph * (C64::new(c, 0.0) + i * s * nz),
            ph * (i * s * C64::new(nx, -ny)),
            ph * (i * s * C64::new(nx, ny)),
            ph * (C64::new(c, 0.0) - i * s * nz),
        ];
        Ok(Self::from_raw_normalized(m))
    }

    /// Builds `V diag(e^{iα}) V†`.
    pub fn from_eigenphases(alphas: [f64; 2], frame: &Mat2) -> Result<Self> {
        let d = [C64::from_polar(1.0, alphas[0]), ZERO, ZERO, C64::from_polar(1.0, alphas[1])];
        Self::new(mat2_mul(&mat2_mul(frame, &d), &mat2_adjoint(frame)))
    }

    fn from_raw_normalized(m: Mat2) -> Self {
        let u = Self { m };
        debug_assert!(u.unitarity_residual() <= Self::UNITARITY_TOL);
        u
    }

    pub fn entries(&self) -> &Mat2 {
        &self.m
    }

    /// Entry `(i, j)` with zero-based indices.
    pub fn get(&self, i: usize, j: usize) -> C64 {
        self.m[2 * i + j]
    }

    pub fn apply(&self, v: [C64; 2]) -> [C64; 2] {
        mat2_apply(&self.m, v)
    }

    pub fn adjoint(&self) -> Self {
        Self { m: mat2_adjoint(&self.m) }
    }

    pub fn mul(&self, other: &Self) -> Self {
        Self { m: mat2_mul(&self.m, &other.m) }
    }

    /// Multiplies every entry by `e^{iγ}`.
    pub fn with_global_phase(&self, gamma: f64) -> Self {
        let p = C64::from_polar(1.0, gamma);
        Self { m: self.m.map(|z| z * p) }
    }

    pub fn det(&self) -> C64 {
        self.m[0] * self.m[3] - self.m[1] * self.m[2]
    }

    pub fn trace(&self) -> C64 {
        self.m[0] + self.m[3]
    }

    pub fn unitarity_residual(&self) -> f64 {
        unitarity_residual(&self.m)
    }

    /// Frobenius distance to `other`.
    pub fn distance_frobenius(&self, other: &Self) -> f64 {
        mat2_frobenius_distance(&self.m, &other.m)
    }

    /// Bi-invariant distance `‖log(u⁻¹v)‖_F = (θ₁² + θ₂²)^{1/2}` with the
    /// eigenphases of `u⁻¹v` taken in `(−π, π]`.
    pub fn haar_distance(&self, other: &Self) -> f64 {
        let rel = self.adjoint().mul(other);
        let f = rel.eigenphases();
        f.alphas
            .iter()
            .map(|&a| {
                let t = if a > PI { a - TAU } else { a };
                t * t
            })
            .sum::<f64>()
            .sqrt()
    }

    /// Largest off-diagonal and largest diagonal modulus, in that order.
    pub fn monomial_defects(&self) -> (f64, f64) {
        (self.m[1].norm().max(self.m[2].norm()), self.m[0].norm().max(self.m[3].norm()))
    }

    /// Eigendecomposition `u = V diag(e^{iα₁}, e^{iα₂}) V†`.
    ///
    /// Eigenphases lie in `[0, 2π)` sorted ascending; a phase within `1e−14` of
    /// `2π` is reported as `0`. Each column of `V` has its first non-negligible
    /// component real and positive. When the eigenvalues coincide (`u` is a
    /// multiple of the identity) `V = 𝟙`.
    pub fn eigenphases(&self) -> EigenphaseFrame {
        let m = &self.m;
        let t = (m[0] + m[3]) * 0.5;
        let a00 = m[0] - t;
        let (a01, a10) = (m[1], m[2]);
        let mu = (a00 * a00 + a01 * a10).sqrt();
        let degenerate = mu.norm() <= 1e-13;
        let (lams, mut frame) = if degenerate {
            ([t, t], [ONE, ZERO, ZERO, ONE])
        } else {
            let c1 = [a01, mu - a00];
            let c2 = [mu + a00, a10];
            let n1 = c1[0].norm_sqr() + c1[1].norm_sqr();
            let n2 = c2[0].norm_sqr() + c2[1].norm_sqr();
            let (v, n) = if n1 >= n2 { (c1, n1.sqrt()) } else { (c2, n2.sqrt()) };
            let v = [v[0] / n, v[1] / n];
            let w = [-v[1].conj(), v[0].conj()];
            ([t + mu, t - mu], [v[0], w[0], v[1], w[1]])
        };
        let mut alphas = lams.map(wrap_phase);
        if alphas[1] < alphas[0] {
            alphas.swap(0, 1);
            frame = [frame[1], frame[0], frame[3], frame[2]];
        }
        for col in 0..2 {
            let lead = if frame[col].norm() > 1e-14 { frame[col] } else { frame[2 + col] };
            let p = lead.conj() / lead.norm();
            frame[col] *= p;
            frame[2 + col] *= p;
        }
        EigenphaseFrame { alphas, frame, degenerate }
    }
}

/// Argument of `z` mapped to `[0, 2π)`.
pub(crate) fn wrap_phase(z: C64) -> f64 {
    let a = crate::rem_euclid(z.im.atan2(z.re), TAU);
    if TAU - a < 1e-14 {
        0.0
    } else {
        a
    }
}

fn unitarity_residual(m: &Mat2) -> f64 {
    let p = mat2_mul(&mat2_adjoint(m), m);
    mat2_frobenius_distance(&p, &[ONE, ZERO, ZERO, ONE])
}

/// `u = V diag(e^{iα₁}, e^{iα₂}) V†`.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct EigenphaseFrame {
    pub alphas: [f64; 2],
    /// Columns are the eigenvectors.
    pub frame: Mat2,
    pub degenerate: bool,
}

impl EigenphaseFrame {
    pub fn reconstruct(&self) -> Mat2 {
        let d = [C64::from_polar(1.0, self.alphas[0]), ZERO, ZERO, C64::from_polar(1.0, self.alphas[1])];
        mat2_mul(&mat2_mul(&self.frame, &d), &mat2_adjoint(&self.frame))
    }

    pub fn residual(&self, u: &Unitary2) -> f64 {
        mat2_frobenius_distance(&self.reconstruct(), u.entries())
    }

    pub fn eigenvector(&self, j: usize) -> [C64; 2] {
        [self.frame[j], self.frame[2 + j]]
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn named_constants_are_unitary() {
        for u in [Unitary2::swap(), Unitary2::identity(), Unitary2::mixing(), Unitary2::case_a(0.3, -1.2), Unitary2::case_b(2.0, 0.1)] {
            assert!(u.unitarity_residual() <= 1e-15);
        }
    }

    #[test]
    fn non_unitary_is_rejected() {
        let e = Unitary2::new([ONE, ONE, ZERO, ONE]).unwrap_err();
        assert!(matches!(e, Error::NotUnitary { .. }));
    }

    #[test]
    fn swap_eigenphases() {
        let f = Unitary2::swap().eigenphases();
        assert!(f.alphas[0].abs() < 1e-15 && (f.alphas[1] - PI).abs() < 1e-15);
        assert!(!f.degenerate);
        assert!(f.residual(&Unitary2::swap()) < 1e-14);
    }

    #[test]
    fn identity_eigenphases_are_degenerate() {
        let f = Unitary2::identity().eigenphases();
        assert_eq!(f.alphas, [0.0, 0.0]);
        assert!(f.degenerate);
        assert_eq!(f.frame, [ONE, ZERO, ZERO, ONE]);
    }

    #[test]
    fn mixing_eigenphases() {
        let f = Unitary2::mixing().eigenphases();
        assert!((f.alphas[0] - PI / 4.0).abs() < 1e-14);
        assert!((f.alphas[1] - 7.0 * PI / 4.0).abs() < 1e-14);
        assert!(f.residual(&Unitary2::mixing()) < 1e-14);
    }

    #[test]
    fn frame_phase_convention() {
        let mut r = crate::rng(11);
        for _ in 0..50 {
            let f = Unitary2::random(&mut r).eigenphases();
            for j in 0..2 {
                let v = f.eigenvector(j);
                let lead = if v[0].norm() > 1e-14 { v[0] } else { v[1] };
                assert!(lead.im.abs() < 1e-15 && lead.re > 0.0);
            }
        }
    }

    #[test]
    fn haar_distance_between_case_points() {
        assert!((Unitary2::swap().haar_distance(&Unitary2::identity()) - PI).abs() < 1e-14);
        assert!(Unitary2::swap().haar_distance(&Unitary2::swap()) < 1e-14);
    }

    #[test]
    fn serde_rejects_non_unitary() {
        let raw = RawUnitary { entries: [ONE, ONE, ZERO, ONE] };
        assert!(Unitary2::try_from(raw).is_err());
    }

    mod props {
        use super::*;
        use proptest::prelude::*;

        proptest! {
            #[test]
            fn eigenphases_reconstruct(seed in any::<u64>()) {
                let u = Unitary2::random(&mut crate::rng(seed));
                let f = u.eigenphases();
                prop_assert!(f.residual(&u) <= 1e-10);
                prop_assert!(f.alphas[0] <= f.alphas[1]);
                prop_assert!(f.alphas.iter().all(|a| (0.0..TAU).contains(a)));
                prop_assert!((u.det().norm() - 1.0).abs() <= 1e-12);
                let frame = Unitary2::new(f.frame);
                prop_assert!(frame.is_ok());
            }

            #[test]
            fn eigenphases_roundtrip(a in 0.0..TAU, b in 0.0..TAU, seed in any::<u64>()) {
                let frame = Unitary2::random(&mut crate::rng(seed));
                let u = Unitary2::from_eigenphases([a, b], frame.entries()).unwrap();
                let f = u.eigenphases();
                let mut want = [a, b];
                want.sort_by(f64::total_cmp);
                for (got, want) in f.alphas.iter().zip(want) {
                    let d = crate::rem_euclid(got - want, TAU);
                    prop_assert!(d.min(TAU - d) <= 1e-10, "{:?} vs {:?}", f.alphas, want);
                }
            }
        }
    }
}

//! SU(2) representation matrices in the standard `|j m⟩` basis (rows and
//! columns ordered `m = j, j−1, …, −j`) and the U(2) factorization
//! `u = e^{iφ} s`.
//!
//! Half-integers are carried doubled: `two_j = 2j`, `two_m = 2m`.

use alloc::vec::Vec;

use nalgebra::DMatrix;
#[allow(unused_imports)]
use num_traits::Float;

use crate::unitary::Unitary2;
use crate::C64;

fn factorial(n: i32) -> f64 {
    (1..=n).fold(1.0, |acc, k| acc * k as f64)
}

/// Index of `m` in the `m = j, …, −j` ordering.
pub fn m_index(two_j: u32, two_m: i32) -> usize {
    ((two_j as i32 - two_m) / 2) as usize
}

/// `m` at a given index.
pub fn two_m_at(two_j: u32, idx: usize) -> i32 {
    two_j as i32 - 2 * idx as i32
}

/// `(J_x, J_y, J_z)` with `J_±` real and positive above/below the diagonal.
pub fn angular_momentum(two_j: u32) -> [DMatrix<C64>; 3] {
    let d = two_j as usize + 1;
    let j = two_j as f64 / 2.0;
    let mut jp = DMatrix::<C64>::zeros(d, d);
    let mut jz = DMatrix::<C64>::zeros(d, d);
    for i in 0..d {
        let m = two_m_at(two_j, i) as f64 / 2.0;
        jz[(i, i)] = C64::new(m, 0.0);
        if i > 0 {
            // ⟨m+1| J₊ |m⟩
            jp[(i - 1, i)] = C64::new((j * (j + 1.0) - m * (m + 1.0)).sqrt(), 0.0);
        }
    }
    let jm = jp.adjoint();
    let jx = (&jp + &jm) * C64::new(0.5, 0.0);
    let jy = (&jp - &jm) * C64::new(0.0, -0.5);
    [jx, jy, jz]
}

/// Wigner small `d^j_{m′m}(β) = ⟨j m′| e^{−iβJ_y} |j m⟩`.
pub fn small_d(two_j: u32, beta: f64) -> DMatrix<f64> {
    let d = two_j as usize + 1;
    let (c, s) = ((beta / 2.0).cos(), (beta / 2.0).sin());
    let tj = two_j as i32;
    DMatrix::from_fn(d, d, |r, col| {
        // integer combinations j±m etc.
        let (mp2, m2) = (two_m_at(two_j, r), two_m_at(two_j, col));
        let (jpm, jmm) = ((tj + m2) / 2, (tj - m2) / 2);
        let (jpmp, jmmp) = ((tj + mp2) / 2, (tj - mp2) / 2);
        let dm = (mp2 - m2) / 2;
        let pre = (factorial(jpmp) * factorial(jmmp) * factorial(jpm) * factorial(jmm)).sqrt();
        let mut acc = 0.0;
        let kmin = 0.max(-dm);
        let kmax = jpm.min(jmmp);
        for k in kmin..=kmax {
            let den = factorial(jpm - k) * factorial(k) * factorial(jmmp - k) * factorial(k + dm);
            let sign = if (k + dm) % 2 == 0 { 1.0 } else { -1.0 };
            acc += sign * pre / den * c.powi(tj - 2 * k - dm) * s.powi(2 * k + dm);
        }
        acc
    })
}

/// Precomputed expansion of every `d^j_{m′m}` up to `two_j_max` as sums of
/// `coef · cos(β/2)^a · sin(β/2)^b`.
#[derive(Debug, Clone)]
pub struct WignerTable {
    pub two_j_max: u32,
    terms: Vec<Vec<Vec<(f64, i32, i32)>>>,
}

impl WignerTable {
    pub fn new(two_j_max: u32) -> Self {
        assert!(two_j_max < 63, "spin cutoff too large");
        let terms = (0..=two_j_max)
            .map(|two_j| {
                let d = two_j as usize + 1;
                let tj = two_j as i32;
                (0..d * d)
                    .map(|idx| {
                        let (r, col) = (idx / d, idx % d);
                        let (mp2, m2) = (two_m_at(two_j, r), two_m_at(two_j, col));
                        let (jpm, jmm) = ((tj + m2) / 2, (tj - m2) / 2);
                        let (jpmp, jmmp) = ((tj + mp2) / 2, (tj - mp2) / 2);
                        let dm = (mp2 - m2) / 2;
                        let pre = (factorial(jpmp) * factorial(jmmp) * factorial(jpm) * factorial(jmm)).sqrt();
                        (0.max(-dm)..=jpm.min(jmmp))
                            .map(|k| {
                                let den = factorial(jpm - k) * factorial(k) * factorial(jmmp - k) * factorial(k + dm);
                                let sign = if (k + dm) % 2 == 0 { 1.0 } else { -1.0 };
                                (sign * pre / den, tj - 2 * k - dm, 2 * k + dm)
                            })
                            .collect()
                    })
                    .collect()
            })
            .collect();
        Self { two_j_max, terms }
    }

    /// Offset of the `D^j` block in the flat layout of [`WignerTable::fill`].
    pub fn offset(two_j: u32) -> usize {
        (0..two_j as usize).map(|k| (k + 1) * (k + 1)).sum()
    }

    /// Writes every `D^j(s)` row-major into `out` (blocks in increasing `j`)
    /// and returns `φ`.
    pub fn fill(&self, u: &Unitary2, out: &mut Vec<C64>) -> f64 {
        let (phi, s) = split_u2(u);
        let (alpha, beta, gamma) = euler_angles(&s);
        let (c, sn) = ((beta / 2.0).cos(), (beta / 2.0).sin());
        let n = self.two_j_max as usize + 1;
        let mut cp = [1.0f64; 64];
        let mut sp = [1.0f64; 64];
        let mut ha = [C64::new(1.0, 0.0); 64];
        let mut hg = [C64::new(1.0, 0.0); 64];
        let (ea, eg) = (C64::from_polar(1.0, -alpha / 2.0), C64::from_polar(1.0, -gamma / 2.0));
        for k in 1..n {
            cp[k] = cp[k - 1] * c;
            sp[k] = sp[k - 1] * sn;
            ha[k] = ha[k - 1] * ea;
            hg[k] = hg[k - 1] * eg;
        }
        let ph = |tab: &[C64; 64], two_m: i32| if two_m >= 0 { tab[two_m as usize] } else { tab[(-two_m) as usize].conj() };
        out.clear();
        for two_j in 0..=self.two_j_max {
            let d = two_j as usize + 1;
            let terms = &self.terms[two_j as usize];
            for r in 0..d {
                let pr = ph(&ha, two_m_at(two_j, r));
                for col in 0..d {
                    let v: f64 = terms[r * d + col].iter().map(|&(k, a, b)| k * cp[a as usize] * sp[b as usize]).sum();
                    out.push(pr * v * ph(&hg, two_m_at(two_j, col)));
                }
            }
        }
        phi
    }

    /// `(φ, [D^0(s), D^{1/2}(s), …])` for `u = e^{iφ} s`.
    pub fn matrices(&self, u: &Unitary2) -> (f64, Vec<DMatrix<C64>>) {
        let (phi, s) = split_u2(u);
        let (alpha, beta, gamma) = euler_angles(&s);
        let (c, sn) = ((beta / 2.0).cos(), (beta / 2.0).sin());
        let n = self.two_j_max as usize + 1;
        let mut cp = alloc::vec![1.0; n];
        let mut sp = alloc::vec![1.0; n];
        for k in 1..n {
            cp[k] = cp[k - 1] * c;
            sp[k] = sp[k - 1] * sn;
        }
        let half_a: Vec<C64> = (0..n).map(|k| C64::from_polar(1.0, -(k as f64) * alpha / 2.0)).collect();
        let half_g: Vec<C64> = (0..n).map(|k| C64::from_polar(1.0, -(k as f64) * gamma / 2.0)).collect();
        let mats = (0..=self.two_j_max)
            .map(|two_j| {
                let d = two_j as usize + 1;
                // e^{−imα} = e^{−i(2m)α/2}; 2m ranges over two_j, two_j − 2, …
                let ph = |tab: &[C64], two_m: i32| if two_m >= 0 { tab[two_m as usize] } else { tab[(-two_m) as usize].conj() };
                DMatrix::from_fn(d, d, |r, col| {
                    let v: f64 = self.terms[two_j as usize][r * d + col]
                        .iter()
                        .map(|&(k, a, b)| k * cp[a as usize] * sp[b as usize])
                        .sum();
                    ph(&half_a, two_m_at(two_j, r)) * v * ph(&half_g, two_m_at(two_j, col))
                })
            })
            .collect();
        (phi, mats)
    }
}

/// Euler angles `(α, β, γ)` of `s ∈ SU(2)` in `s = e^{−iαJ_z} e^{−iβJ_y} e^{−iγJ_z}`.
pub fn euler_angles(s: &[C64; 4]) -> (f64, f64, f64) {
    let (a, c) = (s[0], s[2]);
    let beta = 2.0 * c.norm().atan2(a.norm());
    let sum_half = if a.norm() > 1e-300 { -a.arg() } else { 0.0 };
    let diff_half = if c.norm() > 1e-300 { c.arg() } else { 0.0 };
    (sum_half + diff_half, beta, sum_half - diff_half)
}

/// `D^j(s)` from precomputed Euler angles.
pub fn wigner_d_euler(two_j: u32, alpha: f64, beta: f64, gamma: f64) -> DMatrix<C64> {
    let small = small_d(two_j, beta);
    let d = two_j as usize + 1;
    let ph: Vec<(C64, C64)> = (0..d)
        .map(|i| {
            let m = two_m_at(two_j, i) as f64 / 2.0;
            (C64::from_polar(1.0, -m * alpha), C64::from_polar(1.0, -m * gamma))
        })
        .collect();
    DMatrix::from_fn(d, d, |r, c| ph[r].0 * small[(r, c)] * ph[c].1)
}

/// `u = e^{iφ} s` with `φ = arg(det u)/2 ∈ (−π/2, π/2]`.
pub fn split_u2(u: &Unitary2) -> (f64, [C64; 4]) {
    let phi = u.det().arg() / 2.0;
    let ph = C64::from_polar(1.0, -phi);
    let e = u.entries();
    (phi, [e[0] * ph, e[1] * ph, e[2] * ph, e[3] * ph])
}

/// `D^j(s)` for every `two_j ≤ two_j_max`, plus `φ`.
pub fn representation_matrices(u: &Unitary2, two_j_max: u32) -> (f64, Vec<DMatrix<C64>>) {
    let (phi, s) = split_u2(u);
    let (a, b, g) = euler_angles(&s);
    (phi, (0..=two_j_max).map(|tj| wigner_d_euler(tj, a, b, g)).collect())
}

/// `⟨j m; ½ a | J M⟩` with `M = m + a`, for `J = j ± ½`.
pub fn cg_half(two_j: u32, two_big_j: u32, two_big_m: i32, two_a: i32) -> f64 {
    let tj = two_j as f64;
    let m = two_big_m as f64 / 2.0;
    let j = tj / 2.0;
    let den = tj + 1.0;
    let up = ((j + m + 0.5) / den).max(0.0).sqrt();
    let down = ((j - m + 0.5) / den).max(0.0).sqrt();
    if two_big_j == two_j + 1 {
        if two_a > 0 { up } else { down }
    } else if two_big_j + 1 == two_j {
        if two_a > 0 { -down } else { up }
    } else {
        0.0
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::linalg::{commutator, operator_norm};
    use crate::rng;

    #[test]
    fn spin_half_reproduces_the_matrix() {
        let mut r = rng(2);
        for _ in 0..20 {
            let u = Unitary2::random(&mut r);
            let (phi, s) = split_u2(&u);
            let (a, b, g) = euler_angles(&s);
            let d = wigner_d_euler(1, a, b, g);
            for i in 0..4 {
                assert!((d[(i / 2, i % 2)] - s[i]).norm() < 1e-13);
            }
            let back = C64::from_polar(1.0, phi);
            assert!((s[0] * back - u.entries()[0]).norm() < 1e-13);
        }
    }

    #[test]
    fn table_matches_direct_formula() {
        let t = WignerTable::new(6);
        let mut r = rng(9);
        for _ in 0..10 {
            let u = Unitary2::random(&mut r);
            let (p1, a) = t.matrices(&u);
            let (p2, b) = representation_matrices(&u, 6);
            assert_eq!(p1, p2);
            for (x, y) in a.iter().zip(&b) {
                assert!(operator_norm(&(x - y)) < 1e-13);
            }
        }
    }

    #[test]
    fn angular_momentum_algebra() {
        for tj in 0..6 {
            let [x, y, z] = angular_momentum(tj);
            let i = C64::new(0.0, 1.0);
            assert!(operator_norm(&(commutator(&x, &y) - &z * i)) < 1e-12);
            let cas = &x * &x + &y * &y + &z * &z;
            let j = tj as f64 / 2.0;
            assert!(operator_norm(&(cas - DMatrix::identity(tj as usize + 1, tj as usize + 1) * C64::new(j * (j + 1.0), 0.0))) < 1e-12);
        }
    }

    #[test]
    fn small_d_matches_exponential() {
        for tj in 0..7u32 {
            let [_, jy, _] = angular_momentum(tj);
            let beta = 0.83;
            let eig = jy.clone().symmetric_eigen();
            let d = tj as usize + 1;
            let ex = DMatrix::from_fn(d, d, |r, c| {
                (0..d).map(|k| eig.eigenvectors[(r, k)] * C64::from_polar(1.0, -beta * eig.eigenvalues[k]) * eig.eigenvectors[(c, k)].conj()).sum::<C64>()
            });
            let sd = small_d(tj, beta);
            for r in 0..d {
                for c in 0..d {
                    assert!((ex[(r, c)] - sd[(r, c)]).norm() < 1e-12, "{tj} {r} {c}");
                }
            }
        }
    }

    #[test]
    fn homomorphism_and_unitarity() {
        let mut r = rng(5);
        for tj in [2u32, 3, 5] {
            let (u, v) = (Unitary2::random(&mut r), Unitary2::random(&mut r));
            let (pu, du) = representation_matrices(&u, tj);
            let (pv, dv) = representation_matrices(&v, tj);
            let (pw, dw) = representation_matrices(&u.mul(&v), tj);
            // the SU(2) parts multiply up to the sign fixed by the phases
            let sign = C64::from_polar(1.0, (pu + pv - pw) * tj as f64);
            let prod = &du[tj as usize] * &dv[tj as usize] * sign;
            assert!(operator_norm(&(prod - &dw[tj as usize])) < 1e-11);
            let d = &du[tj as usize];
            assert!(operator_norm(&(d.adjoint() * d - DMatrix::identity(d.nrows(), d.nrows()))) < 1e-12);
        }
    }

    #[test]
    fn clebsch_gordan_orthogonality() {
        for tj in 0..6u32 {
            for tbm in (-(tj as i32) - 1..=tj as i32 + 1).step_by(2) {
                let mut rows = Vec::new();
                for tbj in [tj + 1, tj.wrapping_sub(1)] {
                    if tbj > tj + 1 || (tbm.unsigned_abs()) > tbj {
                        continue;
                    }
                    let row: Vec<f64> = [1, -1]
                        .iter()
                        .map(|&a| if (tbm - a).unsigned_abs() <= tj { cg_half(tj, tbj, tbm, a) } else { 0.0 })
                        .collect();
                    rows.push(row);
                }
                for (i, a) in rows.iter().enumerate() {
                    for (k, b) in rows.iter().enumerate() {
                        let dot: f64 = a.iter().zip(b).map(|(x, y)| x * y).sum();
                        assert!((dot - if i == k { 1.0 } else { 0.0 }).abs() < 1e-14);
                    }
                }
            }
        }
    }
}

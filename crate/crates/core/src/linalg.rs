//! Small dense linear-algebra helpers on top of `nalgebra`.

#[allow(unused_imports)]
use num_traits::Float;
use alloc::vec::Vec;

use nalgebra::{DMatrix, DVector};

use crate::C64;

pub type CMat = DMatrix<C64>;
pub type CVec = DVector<C64>;

/// Largest singular value.
pub fn operator_norm(m: &CMat) -> f64 {
    if m.is_empty() {
        return 0.0;
    }
    if is_hermitian(m, 0.0) {
        return m.clone().symmetric_eigen().eigenvalues.amax();
    }
    m.clone()
        .svd(false, false)
        .singular_values
        .iter()
        .fold(0.0, |acc, &s| acc.max(s))
}

/// Largest singular value of a real matrix. Symmetric and antisymmetric inputs
/// go through a symmetric eigensolver.
pub fn operator_norm_real(m: &DMatrix<f64>) -> f64 {
    if m.is_empty() {
        return 0.0;
    }
    let n = m.nrows();
    if n == m.ncols() {
        let mut sym = true;
        let mut anti = true;
        for i in 0..n {
            for j in 0..i {
                let (a, b) = (m[(i, j)], m[(j, i)]);
                sym &= a == b;
                anti &= a == -b;
            }
            anti &= m[(i, i)] == 0.0;
        }
        if sym {
            return m.clone().symmetric_eigen().eigenvalues.amax();
        }
        if anti {
            // Aᵀ A = −A² is symmetric and shares its singular values squared.
            let sq = m.transpose() * m;
            return sq.symmetric_eigen().eigenvalues.amax().max(0.0).sqrt();
        }
    }
    m.clone()
        .svd(false, false)
        .singular_values
        .iter()
        .fold(0.0, |acc, &s| acc.max(s))
}

pub fn is_hermitian(m: &CMat, tol: f64) -> bool {
    hermiticity_residual(m) <= tol
}

/// `max |m_ij − conj(m_ji)|`.
pub fn hermiticity_residual(m: &CMat) -> f64 {
    if m.nrows() != m.ncols() {
        return f64::INFINITY;
    }
    let n = m.nrows();
    let mut r: f64 = 0.0;
    for i in 0..n {
        for j in 0..=i {
            r = r.max((m[(i, j)] - m[(j, i)].conj()).norm());
        }
    }
    r
}

pub fn commutator(a: &CMat, b: &CMat) -> CMat {
    a * b - b * a
}

/// Orthonormal basis of the numerical kernel of `m`.
#[derive(Debug, Clone)]
pub struct Kernel {
    pub vectors: Vec<CVec>,
    /// All singular values, descending.
    pub singular_values: Vec<f64>,
}

/// Numerical kernel: right singular vectors whose singular value is at most
/// `rel_tol · σ_max`. The returned basis does not depend on the arbitrary
/// rotation chosen by the SVD: it is the Gram–Schmidt orthonormalization of
/// the projections of `e_0, e_1, …` onto the kernel.
pub fn kernel(m: &CMat, rel_tol: f64) -> Kernel {
    let n = m.ncols();
    // Pad to a square matrix so that the SVD always yields n right vectors.
    let padded = if m.nrows() < n {
        let mut p = CMat::zeros(n, n);
        p.view_mut((0, 0), (m.nrows(), n)).copy_from(m);
        p
    } else {
        m.clone()
    };
    let svd = padded.svd(false, true);
    let v_t = svd.v_t.expect("requested right singular vectors");
    let mut pairs: Vec<(f64, usize)> = svd
        .singular_values
        .iter()
        .copied()
        .enumerate()
        .map(|(i, s)| (s, i))
        .collect();
    pairs.sort_by(|a, b| b.0.total_cmp(&a.0));
    let sigma_max = pairs.first().map_or(0.0, |p| p.0);
    let thresh = rel_tol * sigma_max.max(f64::MIN_POSITIVE);
    let null: Vec<CVec> = pairs
        .iter()
        .filter(|(s, _)| *s <= thresh)
        .map(|&(_, i)| v_t.row(i).adjoint())
        .collect();
    Kernel {
        vectors: canonical_basis(&null, n),
        singular_values: pairs.iter().map(|p| p.0).collect(),
    }
}

/// Canonical orthonormal basis of `span(vs)` (vs orthonormal).
pub fn canonical_basis(vs: &[CVec], n: usize) -> Vec<CVec> {
    let r = vs.len();
    let mut out: Vec<CVec> = Vec::with_capacity(r);
    for i in 0..n {
        if out.len() == r {
            break;
        }
        // P e_i = Σ v conj(v_i)
        let mut w = CVec::zeros(n);
        for v in vs {
            w += v * v[i].conj();
        }
        for q in &out {
            let c = q.dotc(&w);
            w -= q * c;
        }
        let nw = w.norm();
        if nw > 1e-6 {
            out.push(w / C64::new(nw, 0.0));
        }
    }
    out
}

/// Least-squares slope, intercept and coefficient of determination.
pub fn linear_fit(xs: &[f64], ys: &[f64]) -> (f64, f64, f64) {
    let n = xs.len() as f64;
    let mx = xs.iter().sum::<f64>() / n;
    let my = ys.iter().sum::<f64>() / n;
    let mut sxx = 0.0;
    let mut sxy = 0.0;
    let mut syy = 0.0;
    for (&x, &y) in xs.iter().zip(ys) {
        sxx += (x - mx) * (x - mx);
        sxy += (x - mx) * (y - my);
        syy += (y - my) * (y - my);
    }
    let slope = sxy / sxx;
    let intercept = my - slope * mx;
    let r2 = if syy == 0.0 { 1.0 } else { (sxy * sxy) / (sxx * syy) };
    (slope, intercept, r2)
}

/// Gauss–Legendre nodes and weights on `[-1, 1]`.
pub fn gauss_legendre(n: usize) -> (Vec<f64>, Vec<f64>) {
    let mut x = alloc::vec![0.0; n];
    let mut w = alloc::vec![0.0; n];
    let pi = core::f64::consts::PI;
    for i in 0..n.div_ceil(2) {
        let mut z = (pi * (i as f64 + 0.75) / (n as f64 + 0.5)).cos();
        let mut dp = 0.0;
        for _ in 0..100 {
            let (mut p0, mut p1) = (1.0, z);
            for k in 2..=n {
                let k = k as f64;
                let p2 = ((2.0 * k - 1.0) * z * p1 - (k - 1.0) * p0) / k;
                p0 = p1;
                p1 = p2;
            }
            if n == 1 {
                p0 = 1.0;
                p1 = z;
            }
            dp = n as f64 * (z * p1 - p0) / (z * z - 1.0);
            let dz = p1 / dp;
            z -= dz;
            if dz.abs() < 1e-15 {
                break;
            }
        }
        x[i] = -z;
        x[n - 1 - i] = z;
        let wi = 2.0 / ((1.0 - z * z) * dp * dp);
        w[i] = wi;
        w[n - 1 - i] = wi;
    }
    (x, w)
}

#[cfg(test)]
mod tests {
    use super::*;

    fn c(re: f64) -> C64 {
        C64::new(re, 0.0)
    }

    #[test]
    fn norms_of_small_matrices() {
        assert!((operator_norm(&CMat::identity(5, 5)) - 1.0).abs() < 1e-14);
        let d = CMat::from_row_slice(2, 2, &[c(3.0), c(0.0), c(0.0), c(-4.0)]);
        assert!((operator_norm(&d) - 4.0).abs() < 1e-14);
        let n = CMat::from_row_slice(2, 2, &[c(0.0), c(2.0), c(0.0), c(0.0)]);
        assert!((operator_norm(&n) - 2.0).abs() < 1e-14);
    }

    #[test]
    fn norm_is_submultiplicative() {
        let mut r = crate::rng(3);
        use rand::Rng;
        for _ in 0..20 {
            let a = CMat::from_fn(4, 4, |_, _| C64::new(r.gen_range(-1.0..1.0), r.gen_range(-1.0..1.0)));
            let b = CMat::from_fn(4, 4, |_, _| C64::new(r.gen_range(-1.0..1.0), r.gen_range(-1.0..1.0)));
            assert!(operator_norm(&(&a * &b)) <= operator_norm(&a) * operator_norm(&b) * (1.0 + 1e-12));
        }
    }

    #[test]
    fn real_norm_paths_agree() {
        let a = DMatrix::from_row_slice(3, 3, &[0.0, 1.0, -2.0, -1.0, 0.0, 0.5, 2.0, -0.5, 0.0]);
        let svd = a.clone().svd(false, false).singular_values.max();
        assert!((operator_norm_real(&a) - svd).abs() < 1e-12);
    }

    #[test]
    fn kernel_is_canonical() {
        // Kernel spanned by e0, e1 regardless of the SVD's rotation.
        let m = CMat::from_row_slice(2, 4, &[c(0.0), c(0.0), c(1.0), c(0.0), c(0.0), c(0.0), c(0.0), c(1.0)]);
        let k = kernel(&m, 1e-8);
        assert_eq!(k.vectors.len(), 2);
        assert!((k.vectors[0][0] - c(1.0)).norm() < 1e-14);
        assert!((k.vectors[1][1] - c(1.0)).norm() < 1e-14);
    }

    #[test]
    fn gauss_legendre_integrates_polynomials() {
        let (x, w) = gauss_legendre(6);
        let s: f64 = x.iter().zip(&w).map(|(x, w)| w * x.powi(10)).sum();
        assert!((s - 2.0 / 11.0).abs() < 1e-14);
        assert!((w.iter().sum::<f64>() - 2.0).abs() < 1e-14);
    }
}

//! Root bracketing and scalar polishing used by the secular-equation solver.

#[allow(unused_imports)]
use num_traits::Float;
use alloc::vec::Vec;


use crate::error::{param, Result};

/// A sign-change interval `[lo, hi]`.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct Bracket {
    pub lo: f64,
    pub hi: f64,
    /// More than one sign change was seen when the bracket was subdivided:
    /// several roots closer than the scan step share it.
    pub shared: bool,
}

const SUBDIVISIONS: usize = 16;

/// All sign-change intervals of `f` on a uniform scan of `[lo, hi]`.
///
/// A sample that is exactly zero yields a degenerate bracket `[x, x]`.
pub fn bracket_roots<F>(f: F, lo: f64, hi: f64, step: f64) -> Result<Vec<Bracket>>
where
    F: Fn(f64) -> f64,
{
    if !(step > 0.0) || !step.is_finite() {
        return Err(param("bracket step must be positive"));
    }
    if !(hi >= lo) {
        return Err(param("bracket interval must satisfy lo <= hi"));
    }
    let n = ((hi - lo) / step).ceil().max(1.0) as usize;
    let xs: Vec<f64> = (0..=n).map(|i| (lo + i as f64 * step).min(hi)).collect();
    let ys: Vec<f64> = xs.iter().map(|&x| f(x)).collect();
    let mut out = Vec::new();
    for i in 0..n {
        let (x0, x1, y0, y1) = (xs[i], xs[i + 1], ys[i], ys[i + 1]);
        if y0 == 0.0 {
            out.push(Bracket { lo: x0, hi: x0, shared: false });
            continue;
        }
        if i + 1 == n && y1 == 0.0 {
            out.push(Bracket { lo: x1, hi: x1, shared: false });
            continue;
        }
        if y0 * y1 < 0.0 {
            let h = (x1 - x0) / SUBDIVISIONS as f64;
            let mut changes = 0;
            let mut prev = y0;
            for s in 1..=SUBDIVISIONS {
                let y = if s == SUBDIVISIONS { y1 } else { f(x0 + s as f64 * h) };
                if y == 0.0 || prev * y < 0.0 {
                    changes += 1;
                }
                if y != 0.0 {
                    prev = y;
                }
            }
            out.push(Bracket { lo: x0, hi: x1, shared: changes > 1 });
        }
    }
    Ok(out)
}

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct Polished {
    pub x: f64,
    pub value: f64,
    pub iterations: usize,
    pub converged: bool,
}

/// Brent's method on a sign-change bracket.
pub fn brent_root<F>(f: F, lo: f64, hi: f64, xtol: f64, max_iter: usize) -> Result<Polished>
where
    F: Fn(f64) -> f64,
{
    let (mut a, mut b) = (lo, hi);
    let (mut fa, mut fb) = (f(a), f(b));
    if fa == 0.0 {
        return Ok(Polished { x: a, value: 0.0, iterations: 0, converged: true });
    }
    if fb == 0.0 {
        return Ok(Polished { x: b, value: 0.0, iterations: 0, converged: true });
    }
    if fa * fb > 0.0 {
        return Err(param("brent_root needs a sign change"));
    }
    let (mut c, mut fc) = (a, fa);
    let mut d = b - a;
    let mut e = d;
    for it in 0..max_iter {
        if fb * fc > 0.0 {
            c = a;
            fc = fa;
            d = b - a;
            e = d;
        }
        if fc.abs() < fb.abs() {
            a = b;
            b = c;
            c = a;
            fa = fb;
            fb = fc;
            fc = fa;
        }
        let tol = 2.0 * f64::EPSILON * b.abs() + 0.5 * xtol;
        let m = 0.5 * (c - b);
        if m.abs() <= tol || fb == 0.0 {
            return Ok(Polished { x: b, value: fb, iterations: it, converged: true });
        }
        if e.abs() >= tol && fa.abs() > fb.abs() {
            let s = fb / fa;
            let (mut p, mut q);
            if a == c {
                p = 2.0 * m * s;
                q = 1.0 - s;
            } else {
                let qa = fa / fc;
                let r = fb / fc;
                p = s * (2.0 * m * qa * (qa - r) - (b - a) * (r - 1.0));
                q = (qa - 1.0) * (r - 1.0) * (s - 1.0);
            }
            if p > 0.0 {
                q = -q;
            } else {
                p = -p;
            }
            if 2.0 * p < (3.0 * m * q - (tol * q).abs()).min((e * q).abs()) {
                e = d;
                d = p / q;
            } else {
                d = m;
                e = m;
            }
        } else {
            d = m;
            e = m;
        }
        a = b;
        fa = fb;
        b += if d.abs() > tol { d } else { tol.copysign(m) };
        fb = f(b);
    }
    Ok(Polished { x: b, value: fb, iterations: max_iter, converged: false })
}

/// Brent's parabolic/golden-section minimizer on `[lo, hi]`.
pub fn brent_minimize<F>(f: F, lo: f64, hi: f64, xtol: f64, max_iter: usize) -> Polished
where
    F: Fn(f64) -> f64,
{
    const CGOLD: f64 = 0.381_966_011_250_105_1;
    let (mut a, mut b) = (lo.min(hi), lo.max(hi));
    let mut x = a + CGOLD * (b - a);
    let (mut w, mut v) = (x, x);
    let mut fx = f(x);
    let (mut fw, mut fv) = (fx, fx);
    let (mut d, mut e): (f64, f64) = (0.0, 0.0);
    for it in 0..max_iter {
        let xm = 0.5 * (a + b);
        let tol1 = xtol + 1e-15 * x.abs();
        let tol2 = 2.0 * tol1;
        if (x - xm).abs() <= tol2 - 0.5 * (b - a) {
            return Polished { x, value: fx, iterations: it, converged: true };
        }
        let mut golden = true;
        if e.abs() > tol1 {
            let r = (x - w) * (fx - fv);
            let mut q = (x - v) * (fx - fw);
            let mut p = (x - v) * q - (x - w) * r;
            q = 2.0 * (q - r);
            if q > 0.0 {
                p = -p;
            }
            q = q.abs();
            let etemp = e;
            e = d;
            if !(p.abs() >= (0.5 * q * etemp).abs() || p <= q * (a - x) || p >= q * (b - x)) {
                d = p / q;
                let u = x + d;
                if u - a < tol2 || b - u < tol2 {
                    d = tol1.copysign(xm - x);
                }
                golden = false;
            }
        }
        if golden {
            e = if x >= xm { a - x } else { b - x };
            d = CGOLD * e;
        }
        let u = if d.abs() >= tol1 { x + d } else { x + tol1.copysign(d) };
        let fu = f(u);
        if fu <= fx {
            if u >= x {
                a = x;
            } else {
                b = x;
            }
            v = w;
            fv = fw;
            w = x;
            fw = fx;
            x = u;
            fx = fu;
        } else {
            if u < x {
                a = u;
            } else {
                b = u;
            }
            if fu <= fw || w == x {
                v = w;
                fv = fw;
                w = u;
                fw = fu;
            } else if fu <= fv || v == x || v == w {
                v = u;
                fv = fu;
            }
        }
    }
    Polished { x, value: fx, iterations: max_iter, converged: false }
}

#[cfg(test)]
mod tests {
    use super::*;
    use core::f64::consts::PI;

    #[test]
    fn cosine_zeros_are_bracketed() {
        // 5π/2 ≈ 7.85 lies outside [0, 7]
        assert_eq!(bracket_roots(f64::cos, 0.0, 7.0, 0.1).unwrap().len(), 2);
        let b = bracket_roots(f64::cos, 0.0, 8.0, 0.1).unwrap();
        assert_eq!(b.len(), 3);
        for (br, r) in b.iter().zip([PI / 2.0, 1.5 * PI, 2.5 * PI]) {
            assert!(br.lo <= r && r <= br.hi);
            assert!(!br.shared);
        }
    }

    #[test]
    fn no_sign_change_no_brackets() {
        assert!(bracket_roots(|x| x * x + 1.0, -3.0, 3.0, 0.1).unwrap().is_empty());
    }

    #[test]
    fn nonpositive_step_is_rejected() {
        assert!(bracket_roots(f64::cos, 0.0, 1.0, 0.0).is_err());
        assert!(bracket_roots(f64::cos, 0.0, 1.0, -0.5).is_err());
    }

    #[test]
    fn eigenphase_condition_brackets() {
        // cos 2πk = cos α, α = π/4 → k ∈ {1/8, 7/8, 9/8, 15/8, 17/8, 23/8}
        let alpha = PI / 4.0;
        let f = |k: f64| (2.0 * PI * k).cos() - alpha.cos();
        let b = bracket_roots(f, 0.0, 3.0, 0.01).unwrap();
        let expected = [1.0, 7.0, 9.0, 15.0, 17.0, 23.0].map(|n| n / 8.0);
        assert_eq!(b.len(), expected.len());
        for (br, r) in b.iter().zip(expected) {
            assert!(br.lo <= r && r <= br.hi, "{br:?} vs {r}");
            let p = brent_root(f, br.lo, br.hi, 1e-14, 100).unwrap();
            assert!((p.x - r).abs() < 1e-12);
        }
    }

    #[test]
    fn close_roots_share_a_flagged_bracket() {
        // Three roots inside one 0.1 step.
        let f = |x: f64| (x - 0.46) * (x - 0.5) * (x - 0.53);
        let b = bracket_roots(f, 0.45, 0.55, 0.1).unwrap();
        assert_eq!(b.len(), 1);
        assert!(b[0].shared);
    }

    #[test]
    fn minimizer_finds_v_shaped_minimum() {
        let p = brent_minimize(|x| (x - 0.3).abs(), 0.0, 1.0, 1e-15, 200);
        assert!((p.x - 0.3).abs() < 1e-12, "{p:?}");
    }
}

//! Differentiability class of a truncated expansion `Σ b_n φ_n`.
//!
//! `Σ ω_n^{2K} |b_n|²` converges iff the `K`-th derivative is square
//! integrable. On a finite truncation the proxy is the ratio of the high
//! frequency tail to the low frequency head, split at the geometric mean
//! `√(ω_min ω_max)` of the retained frequencies.

use alloc::vec::Vec;

#[allow(unused_imports)]
use num_traits::Float;
use serde::{Deserialize, Serialize};

use crate::error::{param, Result};

pub const RATIO_THRESHOLD: f64 = 0.01;

#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct RougheningRow {
    pub k: u32,
    pub head: f64,
    pub tail: f64,
    pub ratio: f64,
    pub pass: bool,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct RougheningReport {
    pub split: f64,
    pub rows: Vec<RougheningRow>,
    /// Largest `K` such that every order `0..=K` passes; `None` if `K = 0` fails.
    pub largest_passing: Option<u32>,
    pub all_pass: bool,
}

/// Tail/head test for `K = 0..=k_max` on frequencies `omega` (positive) and
/// coefficients `b`.
pub fn roughening_truncation(omega: &[f64], b: &[f64], k_max: u32) -> Result<RougheningReport> {
    if omega.len() != b.len() || omega.len() < 2 {
        return Err(param("need at least two matching frequencies and coefficients"));
    }
    if omega.iter().any(|w| !(*w > 0.0)) {
        return Err(param("frequencies must be positive"));
    }
    let lo = omega.iter().copied().fold(f64::INFINITY, f64::min);
    let hi = omega.iter().copied().fold(0.0, f64::max);
    let split = (lo * hi).sqrt();
    let mut rows = Vec::new();
    for k in 0..=k_max {
        let (mut head, mut tail) = (0.0, 0.0);
        for (w, c) in omega.iter().zip(b) {
            let t = w.powi(2 * k as i32) * c * c;
            if *w > split {
                tail += t;
            } else {
                head += t;
            }
        }
        let ratio = tail / head;
        rows.push(RougheningRow { k, head, tail, ratio, pass: ratio < RATIO_THRESHOLD });
    }
    let largest_passing = rows.iter().take_while(|r| r.pass).last().map(|r| r.k);
    let all_pass = rows.iter().all(|r| r.pass);
    Ok(RougheningReport { split, rows, largest_passing, all_pass })
}

/// `ω_n = n` for `n = 1..=modes` and `b_n = profile(ω_n)`.
pub fn profile(modes: usize, f: impl Fn(f64) -> f64) -> (Vec<f64>, Vec<f64>) {
    let omega: Vec<f64> = (1..=modes).map(|n| n as f64).collect();
    let b = omega.iter().map(|&w| f(w)).collect();
    (omega, b)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn exponential_decay_is_smooth() {
        let (w, b) = profile(1000, |w| (-w).exp());
        let r = roughening_truncation(&w, &b, 8).unwrap();
        assert!(r.all_pass);
        assert_eq!(r.largest_passing, Some(8));
    }

    #[test]
    fn inverse_square() {
        let (w, b) = profile(1000, |w| w.powi(-2));
        let r = roughening_truncation(&w, &b, 4).unwrap();
        assert!(r.rows[0].pass);
        assert!(r.rows[2..].iter().all(|x| !x.pass));
        assert_eq!(r.largest_passing, Some(0));
    }

    #[test]
    fn inverse_fourth_power() {
        let (w, b) = profile(1000, |w| w.powi(-4));
        let r = roughening_truncation(&w, &b, 5).unwrap();
        assert!(r.rows[0].pass && r.rows[1].pass);
        assert!(r.rows[3..].iter().all(|x| !x.pass));
    }

    #[test]
    fn validation() {
        assert!(roughening_truncation(&[1.0], &[1.0], 2).is_err());
        assert!(roughening_truncation(&[1.0, 0.0], &[1.0, 1.0], 2).is_err());
        assert!(roughening_truncation(&[1.0, 2.0], &[1.0], 2).is_err());
    }
}

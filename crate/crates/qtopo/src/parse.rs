//! Named unitaries and angle expressions.

use std::f64::consts::PI;

use qtopo_core::{Unitary2, C64};

use crate::error::CliError;

/// Names accepted wherever a `u` is expected.
pub const NAMED_U: [&str; 5] = ["u_a", "u_b", "u_int", "identity", "flip"];

/// `u_a` (swap), `u_b` (identity), `u_int` (mixing), `identity`, `flip`
/// (`diag(1, −1)`), or eight comma-separated reals `re00,im00,re01,…,im11`.
pub fn parse_u(s: &str) -> Result<Unitary2, CliError> {
    match s.trim() {
        "u_a" => return Ok(Unitary2::swap()),
        "u_b" | "identity" => return Ok(Unitary2::identity()),
        "u_int" => return Ok(Unitary2::mixing()),
        "flip" => {
            let (one, zero) = (C64::new(1.0, 0.0), C64::new(0.0, 0.0));
            return Ok(Unitary2::new([one, zero, zero, -one])?);
        }
        _ => {}
    }
    let parts: Vec<f64> = s
        .split(',')
        .map(|p| p.trim().parse::<f64>())
        .collect::<Result<_, _>>()
        .map_err(|_| CliError::Input(format!("u must be one of {NAMED_U:?} or 8 comma-separated reals, got {s:?}")))?;
    if parts.len() != 8 || parts.iter().any(|x| !x.is_finite()) {
        return Err(CliError::Input(format!("u needs 8 finite reals, got {}", parts.len())));
    }
    let m = std::array::from_fn(|k| C64::new(parts[2 * k], parts[2 * k + 1]));
    Ok(Unitary2::new(m)?)
}

/// `1.5`, `pi`, `2pi`, `pi/2`, `3pi/4`, `0.5*pi`.
pub fn parse_angle(s: &str) -> Result<f64, CliError> {
    let bad = || CliError::Input(format!("cannot read angle {s:?}"));
    let t = s.trim().replace(' ', "");
    let (num, den) = match t.split_once('/') {
        Some((a, b)) => (a.to_string(), b.parse::<f64>().map_err(|_| bad())?),
        None => (t.clone(), 1.0),
    };
    let value = if let Some(c) = num.strip_suffix("pi") {
        let c = c.strip_suffix('*').unwrap_or(c);
        let coef = if c.is_empty() { 1.0 } else if c == "-" { -1.0 } else { c.parse::<f64>().map_err(|_| bad())? };
        coef * PI
    } else {
        num.parse::<f64>().map_err(|_| bad())?
    };
    let v = value / den;
    if v.is_finite() {
        Ok(v)
    } else {
        Err(bad())
    }
}

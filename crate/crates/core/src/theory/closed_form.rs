//! Closed-form distance maps of the universal quantizers, written in terms of
//! the user-level quantizer step `Delta`.
//!
//! | map | `g(d)` |
//! |-----|--------|
//! | binary, Gaussian | `1/2 - sum_i exp(-(pi (2i+1) sigma d / (sqrt2 Delta))^2) / (pi (i + 1/2))^2` |
//! | binary, Cauchy | `1/2 - sum_i exp(-(2i+1) pi gamma d / Delta) / (pi (i + 1/2))^2` |
//! | `B`-bit, Gaussian | `1/3 - 2 sum_k exp(-2 (pi sigma d k / (2^B Delta))^2) / (pi k)^2` |
//! | `B`-bit, Cauchy | `1/3 - 2 sum_k exp(-2 pi gamma d k / (2^B Delta)) / (pi k)^2` |
//!
//! The binary curve comes with the bounds
//! `1/2 - exp(-x^2)/2 <= g <= min(1/2 - 4 exp(-x^2)/pi^2, sqrt(2/pi) sigma d / Delta)`,
//! `x = pi sigma d / (sqrt2 Delta)`.

use std::f64::consts::{PI, SQRT_2};

use super::distance::check_distance;
use crate::error::{invalid, Result};
use crate::maps::MAX_BITS;
use crate::randproj::Family;

/// Series terms are summed until the neglected mass falls below this.
const SERIES_TOL: f64 = 1e-17;
/// Hard cap on series length.
const SERIES_CAP: usize = 1 << 26;

/// Binary universal map and its three bounds at one distance.
#[derive(Clone, Copy, Debug, PartialEq)]
pub struct BinaryUniversal {
    pub g: f64,
    /// Lower bound `1/2 - exp(-x^2)/2`.
    pub lower: f64,
    /// Exponential upper bound `1/2 - 4 exp(-x^2)/pi^2`.
    pub upper_exp: f64,
    /// Linear upper bound `sqrt(2/pi) sigma d / Delta`.
    pub upper_lin: f64,
}

fn positive(name: &'static str, v: f64) -> Result<()> {
    if v > 0.0 && v.is_finite() {
        Ok(())
    } else {
        Err(invalid(name, format!("must be positive and finite, got {v}")))
    }
}

/// `asymptote - sum_j a_j e_j`, where the weights `a_j` sum to `asymptote`
/// and `e_j` is nonincreasing in `j`.
fn saturating_series(asymptote: f64, weight: impl Fn(usize) -> f64, decay: impl Fn(usize) -> f64) -> f64 {
    let mut sum = 0.0;
    let mut rem = asymptote;
    for j in 0..SERIES_CAP {
        let a = weight(j);
        let e = decay(j);
        sum += a * e;
        rem -= a;
        if e == 0.0 || e * rem <= SERIES_TOL {
            break;
        }
    }
    (asymptote - sum).max(0.0)
}

/// Gaussian-projection binary universal map with bounds.
pub fn universal_binary_map(d: f64, sigma: f64, delta: f64) -> Result<BinaryUniversal> {
    positive("sigma", sigma)?;
    positive("delta", delta)?;
    check_distance(d)?;
    let r = sigma * d / delta;
    let x = PI * r / SQRT_2;
    let g = if d == 0.0 {
        0.0
    } else {
        saturating_series(
            0.5,
            |i| 1.0 / (PI * (i as f64 + 0.5)).powi(2),
            |i| (-(x * (2 * i + 1) as f64).powi(2)).exp(),
        )
    };
    let e = (-x * x).exp();
    Ok(BinaryUniversal {
        g,
        lower: 0.5 - 0.5 * e,
        upper_exp: 0.5 - 4.0 / (PI * PI) * e,
        upper_lin: (2.0 / PI).sqrt() * r,
    })
}

/// Cauchy-projection binary universal map; `d` is an l1 distance.
pub fn universal_binary_map_l1(d: f64, gamma: f64, delta: f64) -> Result<f64> {
    positive("gamma", gamma)?;
    positive("delta", delta)?;
    check_distance(d)?;
    if d == 0.0 {
        return Ok(0.0);
    }
    let r = PI * gamma * d / delta;
    Ok(saturating_series(
        0.5,
        |i| 1.0 / (PI * (i as f64 + 0.5)).powi(2),
        |i| (-r * (2 * i + 1) as f64).exp(),
    ))
}

/// Distance map of the unquantized `B`-bit universal embedding (the sawtooth
/// curve at scale `2^B Delta`).
pub fn multibit_map(d: f64, family: Family, scale: f64, bits: u32, delta: f64) -> Result<f64> {
    positive("scale", scale)?;
    positive("delta", delta)?;
    check_distance(d)?;
    if !(1..=MAX_BITS).contains(&bits) {
        return Err(invalid("B", format!("{bits} outside 1..={MAX_BITS}")));
    }
    if d == 0.0 {
        return Ok(0.0);
    }
    let r = PI * scale * d / ((bits as f64).exp2() * delta);
    let decay = |j: usize| {
        let k = (j + 1) as f64;
        match family {
            Family::Gaussian => (-2.0 * (r * k).powi(2)).exp(),
            Family::Cauchy => (-2.0 * r * k).exp(),
        }
    };
    Ok(saturating_series(
        1.0 / 3.0,
        |j| 2.0 / (PI * (j + 1) as f64).powi(2),
        decay,
    ))
}

/// `Delta sqrt(pi/8) / sigma`: where the linear bound reaches 1/2.
pub fn linear_saturation_radius(sigma: f64, delta: f64) -> f64 {
    delta * (PI / 8.0).sqrt() / sigma
}

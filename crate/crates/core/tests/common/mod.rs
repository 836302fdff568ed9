//! Shared helpers for integration tests: a quadrature oracle for expected
//! squared embedding distances that never touches Fourier coefficients.
#![allow(dead_code)]

use std::f64::consts::PI;

/// Pointwise map definitions written out independently of the library.
pub fn square(t: f64) -> f64 {
    if t.rem_euclid(1.0) < 0.5 {
        1.0
    } else {
        0.0
    }
}

pub fn sawtooth(t: f64) -> f64 {
    2f64.sqrt() * (t.rem_euclid(1.0) - 0.5)
}

pub fn mixture(t: f64) -> f64 {
    let a = 0.5f64.sqrt();
    a * (2.0 * PI * t).sin() + a * (20.0 * PI * t).sin()
}

/// Period-1 table of `D(tau) = int_0^1 (h(t + tau) - h(t))^2 dt` on
/// `tau_i = i / n_tau`, by the midpoint rule with `n_w` nodes.
/// `n_w` is a multiple of `n_tau`, so shifts land on the node lattice and
/// jumps at dyadic points are integrated exactly.
pub struct DiffTable {
    d: Vec<f64>,
}

impl DiffTable {
    pub fn new(h: impl Fn(f64) -> f64, n_tau: usize, n_w: usize) -> Self {
        assert_eq!(n_w % n_tau, 0);
        let stride = n_w / n_tau;
        let vals: Vec<f64> = (0..n_w).map(|j| h((j as f64 + 0.5) / n_w as f64)).collect();
        let d = (0..n_tau)
            .map(|i| {
                let s = i * stride;
                (0..n_w).map(|j| (vals[(j + s) % n_w] - vals[j]).powi(2)).sum::<f64>() / n_w as f64
            })
            .collect();
        Self { d }
    }

    pub fn len(&self) -> usize {
        self.d.len()
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Law {
    Gaussian,
    Cauchy,
}

/// Density at `x` of the projected difference with scale `c`.
fn density(law: Law, c: f64, x: f64) -> f64 {
    match law {
        Law::Gaussian => (-(x / c).powi(2) / 2.0).exp() / (c * (2.0 * PI).sqrt()),
        Law::Cauchy => c / (PI * (x * x + c * c)),
    }
}

/// Density of the projected difference wrapped onto `[0, 1)`: a sum over
/// `2J + 1` images, plus for Cauchy the asymptotic mass of the images
/// beyond `J` (`2 c / (pi J)` spread uniformly).
pub fn wrapped_density(law: Law, c: f64, tau: f64, images: i64) -> f64 {
    let mut p: f64 = (-images..=images).map(|j| density(law, c, tau + j as f64)).sum();
    if law == Law::Cauchy {
        p += 2.0 * c / (PI * (images as f64 + 0.5));
    }
    p
}

/// `E[(h(u + w) - h(u' + w))^2]` with `u - u'` distributed as `law` at scale
/// `c = s d`, `w` uniform: the periodic trapezoid rule of `D` against the
/// wrapped density.
pub fn oracle_g(table: &DiffTable, law: Law, c: f64) -> f64 {
    if c == 0.0 {
        return 0.0;
    }
    let n = table.len();
    let images = match law {
        Law::Gaussian => (10.0 * c).ceil() as i64 + 2,
        Law::Cauchy => 1000,
    };
    (0..n)
        .map(|i| table.d[i] * wrapped_density(law, c, i as f64 / n as f64, images))
        .sum::<f64>()
        / n as f64
}

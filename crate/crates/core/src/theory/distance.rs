//! Distance and kernel maps of `y = h(Ax + w)` from the power spectrum of `h`.
//!
//! With two-sided coefficients `c_k = |H_k|^2` and `phi_k = phi(2 pi k | d)`:
//!
//! ```text
//! g(d) = 2 sum_{k != 0} c_k (1 - phi_k) = 4 (A - sum_{k>=1} c_k phi_k),   A = sum_{k>=1} c_k
//! K(d) = sum_k c_k phi_k              = c_0 + 2 sum_{k>=1} c_k phi_k
//! ```
//!
//! `A` is known exactly from `integral h^2` and `c_0`, so the only truncation
//! error is `4 sum_{k>K} c_k phi_k <= 4 phi_K (A - sum_{k<=K} c_k)`. Summation
//! stops once that bound drops below the model tolerance.

use std::f64::consts::PI;
use std::sync::Arc;

use super::inverse::DistanceCurve;
use crate::error::{invalid, Result};
use crate::maps::{PeriodicMap, NUMERIC_KMAX};
use crate::randproj::{Family, ProjectionSpec};

/// Default truncation tolerance on `g`.
pub const DEFAULT_TOL: f64 = 1e-10;
/// Fraction of the asymptote defining the saturation radius `D0`.
pub const SATURATION_FRACTION: f64 = 0.95;
/// Coefficients cached up front for closed-form spectra.
const ANALYTIC_TABLE: usize = 1 << 16;

/// Which curve a model reports.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Flavor {
    /// `g(d)`, expected `(1/M) ||y - y'||^2`.
    SqL2,
    /// `sqrt(g(d))`.
    Sqrt,
    /// `K(d)`, expected `(1/M) <y, y'>`.
    Kernel,
}

/// A partial series with its truncation bound.
#[derive(Clone, Copy, Debug)]
struct Series {
    /// `sum_{k=1}^{K} c_k phi_k`
    sum: f64,
    /// Bound on the neglected `sum_{k>K} c_k phi_k`.
    tail: f64,
}

#[derive(Clone, Debug)]
pub struct DistanceMapModel {
    map: PeriodicMap,
    spec: ProjectionSpec,
    flavor: Flavor,
    tol: f64,
    table: Arc<[f64]>,
    analytic: bool,
    cap: usize,
    total: f64,
    dc: f64,
    half_ac: f64,
    d0: f64,
}

impl DistanceMapModel {
    pub fn new(map: PeriodicMap, spec: ProjectionSpec) -> Result<Self> {
        Self::with_tolerance(map, spec, DEFAULT_TOL)
    }

    pub fn with_tolerance(map: PeriodicMap, spec: ProjectionSpec, tol: f64) -> Result<Self> {
        if !(tol > 0.0) || !tol.is_finite() {
            return Err(invalid("tol", "must be positive and finite"));
        }
        let analytic = map.has_analytic_spectrum();
        let cap = match map.bandlimit() {
            Some(k) => k,
            None => map.coefficient_cap(),
        };
        let table_len = if analytic {
            cap.min(ANALYTIC_TABLE)
        } else {
            cap.min(NUMERIC_KMAX)
        };
        let table: Arc<[f64]> = map.coefficient_table(table_len).into();
        let total = map.mean_square();
        let dc = table[0];
        let half_ac = ((total - dc) / 2.0).max(0.0);
        let mut model = Self {
            map,
            spec,
            flavor: Flavor::SqL2,
            tol,
            table,
            analytic,
            cap,
            total,
            dc,
            half_ac,
            d0: 0.0,
        };
        model.d0 = model.find_d0();
        Ok(model)
    }

    /// Same model reporting another curve.
    pub fn with_flavor(mut self, flavor: Flavor) -> Self {
        self.flavor = flavor;
        self
    }

    pub fn flavor(&self) -> Flavor {
        self.flavor
    }

    pub fn map(&self) -> &PeriodicMap {
        &self.map
    }

    pub fn spec(&self) -> &ProjectionSpec {
        &self.spec
    }

    pub fn tolerance(&self) -> f64 {
        self.tol
    }

    #[inline]
    fn coeff(&self, k: usize) -> f64 {
        match self.table.get(k) {
            Some(&c) => c,
            None if self.analytic => self.map.analytic_coeff(k).unwrap_or(0.0),
            None => 0.0,
        }
    }

    fn series(&self, d: f64) -> Series {
        let d = d.abs();
        if d == 0.0 {
            return Series {
                sum: self.half_ac,
                tail: 0.0,
            };
        }
        let mut sum = 0.0;
        let mut rem = self.half_ac;
        let mut phi = 1.0;
        for k in 1..=self.cap {
            let c = self.coeff(k);
            phi = self.spec.phi(2.0 * PI * k as f64, d);
            sum += c * phi;
            rem -= c;
            if rem <= 0.0 || phi == 0.0 || 4.0 * phi * rem <= self.tol {
                return Series {
                    sum,
                    tail: 0.0f64.max(phi * rem),
                };
            }
        }
        Series {
            sum,
            tail: phi * rem.max(0.0),
        }
    }

    /// `g(d)`, clamped to `[0, g_inf]`. `g` is even in `d`.
    pub fn g(&self, d: f64) -> f64 {
        if d == 0.0 {
            return 0.0;
        }
        let s = self.series(d);
        (4.0 * (self.half_ac - s.sum)).clamp(0.0, self.saturation())
    }

    /// `g(d)` and a bound on its truncation error.
    pub fn g_with_error(&self, d: f64) -> (f64, f64) {
        let s = self.series(d);
        (self.g(d), 4.0 * s.tail)
    }

    pub fn g_sqrt(&self, d: f64) -> f64 {
        self.g(d).sqrt()
    }

    /// `K(d)`.
    pub fn kernel(&self, d: f64) -> f64 {
        let s = self.series(d);
        self.dc + 2.0 * s.sum
    }

    /// Value of the model's flavor.
    pub fn eval(&self, d: f64) -> f64 {
        match self.flavor {
            Flavor::SqL2 => self.g(d),
            Flavor::Sqrt => self.g_sqrt(d),
            Flavor::Kernel => self.kernel(d),
        }
    }

    /// `dg/dd` for `d > 0` by termwise differentiation. At `d = 0` the
    /// one-sided difference quotient over a tiny step is returned instead,
    /// since the termwise series need not converge there.
    pub fn slope(&self, d: f64) -> f64 {
        let d = d.abs();
        let s = self.spec.scale();
        if d == 0.0 {
            let h = 1e-6 / s;
            return self.g(h) / h;
        }
        let mut acc = 0.0;
        let mut rem = self.half_ac;
        for k in 1..=self.cap {
            let c = self.coeff(k);
            let xi = 2.0 * PI * k as f64;
            let phi = self.spec.phi(xi, d);
            // -d phi / d d
            let w = match self.spec.family() {
                Family::Gaussian => (s * xi).powi(2) * d * phi,
                Family::Cauchy => s * xi * phi,
            };
            acc += c * w;
            rem -= c;
            if rem <= 0.0 || phi == 0.0 || (w * rem <= 1e-3 * self.tol && xi * s * d > 1.5) {
                break;
            }
        }
        4.0 * acc
    }

    /// Slope of the model's flavor.
    pub fn flavor_slope(&self, d: f64) -> f64 {
        match self.flavor {
            Flavor::SqL2 => self.slope(d),
            Flavor::Sqrt => {
                let g = self.g(d);
                if g == 0.0 {
                    f64::INFINITY
                } else {
                    self.slope(d) / (2.0 * g.sqrt())
                }
            }
            Flavor::Kernel => -self.slope(d) / 2.0,
        }
    }

    /// `g_inf = 2 sum_{k != 0} |H_k|^2`.
    pub fn saturation(&self) -> f64 {
        4.0 * self.half_ac
    }

    /// `sum_k |H_k|^2 = integral h^2`, which is also `K(0)`.
    pub fn total_power(&self) -> f64 {
        self.total
    }

    /// `|H_0|^2`, the large-distance limit of `K`.
    pub fn dc_power(&self) -> f64 {
        self.dc
    }

    /// Smallest `d` with `g(d) >= 0.95 g_inf`.
    pub fn d0(&self) -> f64 {
        self.d0
    }

    fn find_d0(&self) -> f64 {
        let target = SATURATION_FRACTION * self.saturation();
        if target <= 0.0 {
            return 0.0;
        }
        let mut lo = 0.0;
        let mut hi = 1.0 / self.spec.scale();
        let mut guard = 0;
        while self.g(hi) < target && guard < 200 {
            lo = hi;
            hi *= 2.0;
            guard += 1;
        }
        for _ in 0..200 {
            let mid = 0.5 * (lo + hi);
            if mid <= lo || mid >= hi || hi - lo <= 1e-14 * hi {
                break;
            }
            if self.g(mid) >= target {
                hi = mid;
            } else {
                lo = mid;
            }
        }
        hi
    }
}

impl DistanceCurve for DistanceMapModel {
    fn value(&self, d: f64) -> f64 {
        self.eval(d)
    }

    fn slope(&self, d: f64) -> f64 {
        self.flavor_slope(d)
    }

    fn saturation_radius(&self) -> f64 {
        self.d0
    }

    fn saturation_level(&self) -> f64 {
        match self.flavor {
            Flavor::SqL2 => SATURATION_FRACTION * self.saturation(),
            Flavor::Sqrt => (SATURATION_FRACTION * self.saturation()).sqrt(),
            Flavor::Kernel => self.kernel(self.d0),
        }
    }
}

/// Checked one-shot `g(d)` at the default tolerance.
pub fn distance_map(map: &PeriodicMap, spec: &ProjectionSpec, d: f64) -> Result<f64> {
    check_distance(d)?;
    Ok(DistanceMapModel::new(map.clone(), *spec)?.g(d))
}

/// Checked one-shot `K(d)` at the default tolerance.
pub fn kernel_map(map: &PeriodicMap, spec: &ProjectionSpec, d: f64) -> Result<f64> {
    check_distance(d)?;
    Ok(DistanceMapModel::new(map.clone(), *spec)?.kernel(d))
}

pub(crate) fn check_distance(d: f64) -> Result<()> {
    if d >= 0.0 && d.is_finite() {
        Ok(())
    } else {
        Err(invalid("d", format!("must be finite and nonnegative, got {d}")))
    }
}

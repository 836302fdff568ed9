//! Recovering signal distances from embedding distances.

use crate::error::{invalid, Error, Result};

/// A monotone distance map `d -> g(d)`.
pub trait DistanceCurve {
    fn value(&self, d: f64) -> f64;
    fn slope(&self, d: f64) -> f64;
    /// Radius past which the curve is treated as flat; infinite if never.
    fn saturation_radius(&self) -> f64;
    /// Curve value at the saturation radius; infinite if never saturates.
    fn saturation_level(&self) -> f64;
}

/// `g(d) = slope * d`.
#[derive(Clone, Copy, Debug, PartialEq)]
pub struct LinearMap {
    pub slope: f64,
}

impl DistanceCurve for LinearMap {
    fn value(&self, d: f64) -> f64 {
        self.slope * d
    }

    fn slope(&self, _d: f64) -> f64 {
        self.slope
    }

    fn saturation_radius(&self) -> f64 {
        f64::INFINITY
    }

    fn saturation_level(&self) -> f64 {
        f64::INFINITY
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum InversionStatus {
    Unique,
    /// The value lies in the flat region; the estimate is only a lower bound.
    Saturated,
    /// Negative value; the estimate is clamped to 0.
    BelowRange,
}

#[derive(Clone, Copy, Debug, PartialEq)]
pub struct Inversion {
    pub estimate: f64,
    pub status: InversionStatus,
}

/// Relative bisection tolerance on the recovered distance.
const INVERT_RTOL: f64 = 1e-12;
/// Grid points used to verify monotonicity before inverting.
const MONOTONE_GRID: usize = 256;

/// Solves `g(d) = gval` on `[0, D0]` by bisection.
pub fn invert_map<C: DistanceCurve + ?Sized>(curve: &C, gval: f64) -> Result<Inversion> {
    if !gval.is_finite() {
        return Err(Error::NonFinite(gval));
    }
    if gval < 0.0 {
        return Ok(Inversion {
            estimate: 0.0,
            status: InversionStatus::BelowRange,
        });
    }
    let d0 = curve.saturation_radius();
    if gval >= curve.saturation_level() {
        return Ok(Inversion {
            estimate: d0,
            status: InversionStatus::Saturated,
        });
    }
    let mut hi = if d0.is_finite() {
        d0
    } else {
        let mut hi = 1.0;
        while curve.value(hi) < gval {
            hi *= 2.0;
            if !hi.is_finite() {
                return Err(invalid("gval", "not reached by an unbounded curve"));
            }
        }
        hi
    };
    check_monotone(curve, hi)?;
    if gval == 0.0 {
        return Ok(Inversion {
            estimate: 0.0,
            status: InversionStatus::Unique,
        });
    }
    let mut lo = 0.0;
    for _ in 0..2000 {
        let mid = 0.5 * (lo + hi);
        if mid <= lo || mid >= hi || hi - lo <= INVERT_RTOL * hi {
            break;
        }
        if curve.value(mid) >= gval {
            hi = mid;
        } else {
            lo = mid;
        }
    }
    Ok(Inversion {
        estimate: 0.5 * (lo + hi),
        status: InversionStatus::Unique,
    })
}

fn check_monotone<C: DistanceCurve + ?Sized>(curve: &C, hi: f64) -> Result<()> {
    let mut prev = curve.value(0.0);
    for i in 1..=MONOTONE_GRID {
        let d = hi * i as f64 / MONOTONE_GRID as f64;
        let v = curve.value(d);
        if v < prev - 1e-12 * prev.abs().max(1.0) {
            return Err(Error::NonMonotone { at: d });
        }
        prev = v;
    }
    Ok(())
}

/// Uncertainty in the recovered distance, `(eps + delta d_W) / g'(d~)`.
/// Saturated embedding distances give `+inf`.
pub fn ambiguity<C: DistanceCurve + ?Sized>(curve: &C, d_w: f64, eps: f64, delta: f64) -> Result<f64> {
    if !(eps >= 0.0) || !eps.is_finite() {
        return Err(invalid("eps", format!("must be nonnegative, got {eps}")));
    }
    if !(delta >= 0.0) || !delta.is_finite() {
        return Err(invalid("delta", format!("must be nonnegative, got {delta}")));
    }
    let inv = invert_map(curve, d_w)?;
    if inv.status == InversionStatus::Saturated {
        return Ok(f64::INFINITY);
    }
    let numerator = eps + delta * d_w.max(0.0);
    if numerator == 0.0 {
        return Ok(0.0);
    }
    let slope = curve.slope(inv.estimate);
    if !(slope > 0.0) {
        return Err(invalid(
            "model",
            format!("nonpositive slope {slope} at d = {}", inv.estimate),
        ));
    }
    Ok(numerator / slope)
}

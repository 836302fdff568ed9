//! Period-1 embedding nonlinearities `h(t)` and their Fourier power spectra.
//!
//! | kind | values | `integral h^2` | spectrum |
//! |------|--------|----------------|----------|
//! | `square` | `{0, 1}`, 1 on `[0, 1/2)` | 1/2 | analytic |
//! | `sawtooth` | `[-sqrt2/2, sqrt2/2)` | 1/6 | analytic |
//! | `multibit:B=b` | `2^b` midpoint levels of the sawtooth | `(1 - 4^-b)/6` | analytic |
//! | `mixture:k:a,...` | `sum a sin(2 pi k t)` | `sum a^2/2` | exact |
//! | `quantized:<inner>:B=b` | uniform `2^b`-level quantizer over the inner range | numeric | from jumps |
//!
//! All maps are right-continuous at discontinuities. Coefficients are two-sided:
//! `|H_k|^2` for `k >= 0`, with `|H_-k|^2 = |H_k|^2` implied.

mod pieces;
mod spectrum;

use std::f64::consts::{FRAC_1_SQRT_2, PI};
use std::fmt;
use std::str::FromStr;
use std::sync::Arc;

use crate::error::{invalid, Error, Result};
use pieces::Pieces;
pub use spectrum::PowerSpectrum;

/// Largest supported quantizer resolution.
pub const MAX_BITS: u32 = 16;
/// Coefficient cap for spectra computed from a located step function.
pub const NUMERIC_KMAX: usize = 1 << 16;
/// Coefficient cap for spectra with closed-form coefficients.
pub const ANALYTIC_KMAX: usize = 1 << 24;
/// Half-range of the sawtooth family, chosen so that `g(inf) = 1/3`.
pub const SAWTOOTH_AMPLITUDE: f64 = FRAC_1_SQRT_2;

/// Grid used to locate jumps of quantized maps before bisection.
const LOCATE_GRID: usize = 1 << 16;
/// Guard added before flooring quantizer cell indices.
const CELL_GUARD: f64 = 1e-9;

#[derive(Clone, Debug, PartialEq)]
pub enum MapKind {
    Square,
    Sawtooth,
    Multibit { bits: u32 },
    FourierMixture { terms: Vec<(u32, f64)> },
    Quantized { inner: Box<PeriodicMap>, bits: u32 },
}

#[derive(Clone, Copy, Debug, PartialEq)]
struct Quantizer {
    lo: f64,
    step: f64,
    levels: i64,
}

impl Quantizer {
    fn index(&self, v: f64) -> i64 {
        let i = ((v - self.lo) / self.step + CELL_GUARD).floor() as i64;
        i.clamp(0, self.levels - 1)
    }

    fn level(&self, i: i64) -> f64 {
        self.lo + (i as f64 + 0.5) * self.step
    }
}

/// A bounded period-1 scalar map. Immutable once built; cheap to clone.
#[derive(Clone, Debug)]
pub struct PeriodicMap {
    kind: MapKind,
    inf: f64,
    sup: f64,
    quantizer: Option<Quantizer>,
    pieces: Option<Arc<Pieces>>,
}

impl PartialEq for PeriodicMap {
    fn eq(&self, other: &Self) -> bool {
        self.kind == other.kind
    }
}

/// Binary universal quantizer: 1 on `[0, 1/2)`, 0 on `[1/2, 1)`.
pub fn make_square_wave() -> PeriodicMap {
    PeriodicMap::plain(MapKind::Square, 0.0, 1.0)
}

/// `h(t) = sqrt2 (frac(t) - 1/2)`.
pub fn make_sawtooth() -> PeriodicMap {
    let a = SAWTOOTH_AMPLITUDE;
    PeriodicMap::plain(MapKind::Sawtooth, -a, a)
}

/// The sawtooth passed through a `2^bits`-level uniform quantizer with
/// midpoint reconstruction.
pub fn make_multibit(bits: u32) -> Result<PeriodicMap> {
    check_bits(bits)?;
    let a = SAWTOOTH_AMPLITUDE;
    let top = a * (1.0 - (-(bits as f64)).exp2());
    Ok(PeriodicMap::plain(MapKind::Multibit { bits }, -top, top))
}

/// `h(t) = sum_i a_i sin(2 pi k_i t)`.
pub fn make_fourier_mixture(terms: &[(u32, f64)]) -> Result<PeriodicMap> {
    if terms.is_empty() {
        return Err(invalid("terms", "empty term list"));
    }
    let mut seen = std::collections::HashSet::new();
    for &(k, a) in terms {
        if k == 0 {
            return Err(invalid("terms", "frequencies must be positive"));
        }
        if !a.is_finite() {
            return Err(Error::NonFinite(a));
        }
        if !seen.insert(k) {
            return Err(invalid("terms", format!("duplicate frequency {k}")));
        }
    }
    let kind = MapKind::FourierMixture { terms: terms.to_vec() };
    let mut map = PeriodicMap::plain(kind, 0.0, 0.0);
    let (inf, sup) = mixture_extremes(terms);
    map.inf = inf;
    map.sup = sup;
    Ok(map)
}

/// Passes `inner` through a `2^bits`-level uniform quantizer whose cells tile
/// `[inf h, sup h]`, reconstructing at cell midpoints.
pub fn quantize_map(inner: &PeriodicMap, bits: u32) -> Result<PeriodicMap> {
    check_bits(bits)?;
    let range = inner.range();
    if !range.is_finite() {
        return Err(Error::Unquantizable(inner.id(), "unbounded range"));
    }
    if range <= 0.0 {
        return Err(Error::Unquantizable(inner.id(), "constant map"));
    }
    let levels = 1i64 << bits;
    let q = Quantizer {
        lo: inner.inf,
        step: range / levels as f64,
        levels,
    };
    let pieces = Pieces::locate(LOCATE_GRID, |t| q.index(inner.value_reduced(t)), |i| q.level(i));
    let inf = pieces.values().iter().copied().fold(f64::INFINITY, f64::min);
    let sup = pieces.values().iter().copied().fold(f64::NEG_INFINITY, f64::max);
    Ok(PeriodicMap {
        kind: MapKind::Quantized {
            inner: Box::new(inner.clone()),
            bits,
        },
        inf,
        sup,
        quantizer: Some(q),
        pieces: Some(Arc::new(pieces)),
    })
}

fn check_bits(bits: u32) -> Result<()> {
    if (1..=MAX_BITS).contains(&bits) {
        Ok(())
    } else {
        Err(invalid("B", format!("{bits} outside 1..={MAX_BITS}")))
    }
}

fn mixture_value(terms: &[(u32, f64)], t: f64) -> f64 {
    terms
        .iter()
        .map(|&(k, a)| a * (2.0 * PI * (k as f64 * t).fract()).sin())
        .sum()
}

/// Grid search plus golden-section polish of the mixture's min and max.
fn mixture_extremes(terms: &[(u32, f64)]) -> (f64, f64) {
    let kmax = terms.iter().map(|t| t.0).max().unwrap_or(1) as usize;
    let n = 4096 + 64 * kmax;
    let f = |t: f64| mixture_value(terms, t);
    let (mut imin, mut imax) = (0usize, 0usize);
    let (mut vmin, mut vmax) = (f64::INFINITY, f64::NEG_INFINITY);
    for i in 0..n {
        let v = f(i as f64 / n as f64);
        if v < vmin {
            vmin = v;
            imin = i;
        }
        if v > vmax {
            vmax = v;
            imax = i;
        }
    }
    let h = 1.0 / n as f64;
    let lo = golden(f, imin as f64 * h - h, imin as f64 * h + h).min(vmin);
    let hi = (-golden(|t| -f(t), imax as f64 * h - h, imax as f64 * h + h)).max(vmax);
    (lo, hi)
}

fn golden<F: Fn(f64) -> f64>(f: F, mut a: f64, mut b: f64) -> f64 {
    let r = (5f64.sqrt() - 1.0) / 2.0;
    let mut c = b - r * (b - a);
    let mut d = a + r * (b - a);
    let (mut fc, mut fd) = (f(c), f(d));
    for _ in 0..80 {
        if fc < fd {
            b = d;
            d = c;
            fd = fc;
            c = b - r * (b - a);
            fc = f(c);
        } else {
            a = c;
            c = d;
            fc = fd;
            d = a + r * (b - a);
            fd = f(d);
        }
    }
    fc.min(fd)
}

#[inline]
fn reduce(t: f64) -> f64 {
    let f = t - t.floor();
    if f >= 1.0 {
        0.0
    } else {
        f
    }
}

impl PeriodicMap {
    fn plain(kind: MapKind, inf: f64, sup: f64) -> Self {
        Self {
            kind,
            inf,
            sup,
            quantizer: None,
            pieces: None,
        }
    }

    pub fn kind(&self) -> &MapKind {
        &self.kind
    }

    /// `h(t mod 1)`; errors on non-finite `t`.
    pub fn eval(&self, t: f64) -> Result<f64> {
        if !t.is_finite() {
            return Err(Error::NonFinite(t));
        }
        Ok(self.value(t))
    }

    /// [`PeriodicMap::eval`] over a slice.
    pub fn eval_many(&self, ts: &[f64]) -> Result<Vec<f64>> {
        ts.iter().map(|&t| self.eval(t)).collect()
    }

    /// `h(t mod 1)` without input checking; NaN in gives an unspecified value.
    #[inline]
    pub fn value(&self, t: f64) -> f64 {
        self.value_reduced(reduce(t))
    }

    #[inline]
    fn value_reduced(&self, f: f64) -> f64 {
        match &self.kind {
            MapKind::Square => {
                if f < 0.5 {
                    1.0
                } else {
                    0.0
                }
            }
            MapKind::Sawtooth => 2.0 * SAWTOOTH_AMPLITUDE * (f - 0.5),
            MapKind::Multibit { bits } => {
                let n = (1u64 << bits) as f64;
                let idx = (f * n).floor().min(n - 1.0);
                SAWTOOTH_AMPLITUDE * ((2.0 * idx + 1.0) / n - 1.0)
            }
            MapKind::FourierMixture { terms } => mixture_value(terms, f),
            MapKind::Quantized { inner, .. } => {
                let q = self.quantizer.as_ref().expect("quantized map has a quantizer");
                q.level(q.index(inner.value_reduced(f)))
            }
        }
    }

    /// `inf h`.
    pub fn inf(&self) -> f64 {
        self.inf
    }

    /// `sup h`.
    pub fn sup(&self) -> f64 {
        self.sup
    }

    /// `sup h - inf h`.
    pub fn range(&self) -> f64 {
        self.sup - self.inf
    }

    /// True when every value lies in `{0, 1}`.
    pub fn is_binary(&self) -> bool {
        matches!(self.kind, MapKind::Square)
    }

    /// `integral_0^1 h(t) dt`.
    pub fn mean(&self) -> f64 {
        match &self.kind {
            MapKind::Square => 0.5,
            MapKind::Sawtooth | MapKind::Multibit { .. } | MapKind::FourierMixture { .. } => 0.0,
            MapKind::Quantized { .. } => self.pieces().mean(),
        }
    }

    /// `integral_0^1 h(t)^2 dt`.
    pub fn mean_square(&self) -> f64 {
        let a2 = SAWTOOTH_AMPLITUDE * SAWTOOTH_AMPLITUDE;
        match &self.kind {
            MapKind::Square => 0.5,
            MapKind::Sawtooth => a2 / 3.0,
            MapKind::Multibit { bits } => a2 / 3.0 * (1.0 - (-2.0 * *bits as f64).exp2()),
            MapKind::FourierMixture { terms } => terms.iter().map(|&(_, a)| a * a / 2.0).sum(),
            MapKind::Quantized { .. } => self.pieces().mean_square(),
        }
    }

    /// `sum_{k != 0} |H_k|^2`.
    pub fn ac_power(&self) -> f64 {
        let m = self.mean();
        (self.mean_square() - m * m).max(0.0)
    }

    /// Large-distance limit of the distance map, `2 sum_{k != 0} |H_k|^2`.
    pub fn saturation(&self) -> f64 {
        2.0 * self.ac_power()
    }

    fn pieces(&self) -> &Pieces {
        self.pieces.as_deref().expect("numeric map has located pieces")
    }

    /// Closed-form `|H_k|^2`, if this kind has one.
    pub fn analytic_coeff(&self, k: usize) -> Option<f64> {
        let a2 = SAWTOOTH_AMPLITUDE * SAWTOOTH_AMPLITUDE;
        match &self.kind {
            MapKind::Square => Some(if k == 0 {
                0.25
            } else if k % 2 == 1 {
                1.0 / (PI * k as f64).powi(2)
            } else {
                0.0
            }),
            MapKind::Sawtooth => Some(if k == 0 { 0.0 } else { a2 / (PI * k as f64).powi(2) }),
            MapKind::Multibit { bits } => Some(if k == 0 || k.is_multiple_of(1usize << bits) {
                0.0
            } else {
                a2 / (PI * k as f64).powi(2)
            }),
            MapKind::FourierMixture { terms } => Some(
                terms
                    .iter()
                    .find(|t| t.0 as usize == k)
                    .map_or(0.0, |&(_, a)| a * a / 4.0),
            ),
            MapKind::Quantized { .. } => None,
        }
    }

    /// Whether [`PeriodicMap::analytic_coeff`] is available.
    pub fn has_analytic_spectrum(&self) -> bool {
        !matches!(self.kind, MapKind::Quantized { .. })
    }

    /// Highest frequency carrying power, when finite.
    pub fn bandlimit(&self) -> Option<usize> {
        match &self.kind {
            MapKind::FourierMixture { terms } => terms.iter().map(|t| t.0 as usize).max(),
            _ => None,
        }
    }

    /// `|H_k|^2` for `k = 0..=kmax`, analytic or from the located jumps.
    pub fn coefficient_table(&self, kmax: usize) -> Vec<f64> {
        if self.has_analytic_spectrum() {
            (0..=kmax).map(|k| self.analytic_coeff(k).unwrap_or(0.0)).collect()
        } else {
            self.pieces().power(kmax)
        }
    }

    /// Largest `k` a spectrum of this map may be expanded to.
    pub fn coefficient_cap(&self) -> usize {
        if self.has_analytic_spectrum() {
            ANALYTIC_KMAX
        } else {
            NUMERIC_KMAX
        }
    }

    /// Power spectrum truncated where the two-sided tail mass falls below `tol`.
    pub fn power_coeffs(&self, tol: f64) -> Result<PowerSpectrum> {
        if !(tol > 0.0) || !tol.is_finite() {
            return Err(invalid("tol", "must be positive and finite"));
        }
        let total = self.mean_square();
        let kmax = match &self.kind {
            MapKind::FourierMixture { .. } => self.bandlimit().unwrap_or(0),
            MapKind::Square | MapKind::Sawtooth | MapKind::Multibit { .. } => {
                // Both tails are below 1 / (pi^2 K).
                let k = (1.0 / (PI * PI * tol)).ceil().max(1.0);
                if k > ANALYTIC_KMAX as f64 {
                    return Err(Error::ToleranceUnreachable {
                        tol,
                        cap: ANALYTIC_KMAX,
                        tail: 1.0 / (PI * PI * ANALYTIC_KMAX as f64),
                    });
                }
                k as usize
            }
            MapKind::Quantized { .. } => return self.numeric_spectrum(tol, total),
        };
        Ok(finish(self.coefficient_table(kmax), total))
    }

    fn numeric_spectrum(&self, tol: f64, total: f64) -> Result<PowerSpectrum> {
        let mut k = 64usize;
        loop {
            let spec = finish(self.pieces().power(k), total);
            if spec.tail_bound <= tol {
                return Ok(spec);
            }
            if k >= NUMERIC_KMAX {
                return Err(Error::ToleranceUnreachable {
                    tol,
                    cap: NUMERIC_KMAX,
                    tail: spec.tail_bound,
                });
            }
            k = (k * 2).min(NUMERIC_KMAX);
        }
    }

    /// Canonical name, parseable by [`FromStr`].
    pub fn id(&self) -> String {
        self.to_string()
    }
}

fn finish(coeffs: Vec<f64>, total: f64) -> PowerSpectrum {
    let mut spec = PowerSpectrum {
        coeffs,
        tail_bound: 0.0,
        total_power: total,
    };
    spec.tail_bound = (total - spec.captured_power()).max(0.0);
    spec
}

impl fmt::Display for PeriodicMap {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match &self.kind {
            MapKind::Square => f.write_str("square"),
            MapKind::Sawtooth => f.write_str("sawtooth"),
            MapKind::Multibit { bits } => write!(f, "multibit:B={bits}"),
            MapKind::FourierMixture { terms } => {
                f.write_str("mixture:")?;
                for (i, (k, a)) in terms.iter().enumerate() {
                    if i > 0 {
                        f.write_str(",")?;
                    }
                    write!(f, "{k}:{a}")?;
                }
                Ok(())
            }
            MapKind::Quantized { inner, bits } => write!(f, "quantized:{inner}:B={bits}"),
        }
    }
}

impl FromStr for PeriodicMap {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        let s = s.trim();
        let bad = || Error::UnknownMap(s.to_string());
        let bits = |b: &str| b.trim().parse::<u32>().map_err(|_| bad());
        if s == "square" {
            return Ok(make_square_wave());
        }
        if s == "sawtooth" {
            return Ok(make_sawtooth());
        }
        if let Some(rest) = s.strip_prefix("multibit:B=") {
            return make_multibit(bits(rest)?);
        }
        if let Some(rest) = s.strip_prefix("quantized:") {
            let (inner, b) = rest.rsplit_once(":B=").ok_or_else(bad)?;
            return quantize_map(&inner.parse()?, bits(b)?);
        }
        if let Some(rest) = s.strip_prefix("mixture:") {
            let mut terms = Vec::new();
            for term in rest.split(',') {
                let (k, a) = term.split_once(':').ok_or_else(bad)?;
                let k = k.trim().parse::<u32>().map_err(|_| bad())?;
                let a = a.trim().parse::<f64>().map_err(|_| bad())?;
                terms.push((k, a));
            }
            return make_fourier_mixture(&terms);
        }
        Err(bad())
    }
}

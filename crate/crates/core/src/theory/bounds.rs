//! Failure-probability calculators for embedding guarantees.
//!
//! Every calculator returns a [`BoundReport`] whose probability is clamped to
//! `[0, 1]`; bounds that would exceed 1 are flagged vacuous rather than
//! rejected, so parameter sweeps can chart where guarantees switch on.

use std::f64::consts::LN_2;

use rayon::prelude::*;

use crate::error::{invalid, Result};
use crate::randproj::RandomState;

#[derive(Clone, Debug, PartialEq)]
pub struct BoundReport {
    /// Calculator name.
    pub kind: &'static str,
    /// Failure probability bound clamped to `[0, 1]`.
    pub probability: f64,
    /// Unclamped value (may exceed 1 or be infinite).
    pub raw: f64,
    /// `raw >= 1`: the bound says nothing.
    pub vacuous: bool,
    /// Inputs and derived constants, echoed for tabulation.
    pub params: Vec<(&'static str, f64)>,
}

impl BoundReport {
    fn new(kind: &'static str, raw: f64, params: Vec<(&'static str, f64)>) -> Self {
        let raw = if raw.is_nan() { f64::INFINITY } else { raw };
        Self {
            kind,
            probability: raw.clamp(0.0, 1.0),
            raw,
            vacuous: raw >= 1.0,
            params,
        }
    }

    pub fn param(&self, name: &str) -> Option<f64> {
        self.params.iter().find(|p| p.0 == name).map(|p| p.1)
    }
}

fn positive(name: &'static str, v: f64) -> Result<()> {
    if v > 0.0 && v.is_finite() {
        Ok(())
    } else {
        Err(invalid(name, format!("must be positive and finite, got {v}")))
    }
}

fn nonnegative(name: &'static str, v: f64) -> Result<()> {
    if v >= 0.0 && v.is_finite() {
        Ok(())
    } else {
        Err(invalid(name, format!("must be nonnegative and finite, got {v}")))
    }
}

/// Guarantee flavors for a finite point cloud of `Q` points.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum PointCloudFlavor {
    /// Squared embedding distance within `g(d) +- eps`.
    SqL2,
    /// Root-mean distance within `sqrt(g) +- eps`, loose exponent.
    SqrtLoose,
    /// Root-mean distance with the squared-distance exponent; needs `eps <= 1`.
    SqrtTight,
    /// Inner products within `K(d) +- eps`.
    Kernel,
    /// Norms `(1/M)||y||^2` within `sum |H_k|^2 +- eps`.
    Norm,
}

impl std::str::FromStr for PointCloudFlavor {
    type Err = crate::Error;
    fn from_str(s: &str) -> Result<Self> {
        Ok(match s.trim() {
            "sq_l2" => Self::SqL2,
            "sqrt_loose" => Self::SqrtLoose,
            "sqrt_tight" => Self::SqrtTight,
            "kernel" => Self::Kernel,
            "norm" => Self::Norm,
            other => return Err(invalid("flavor", format!("unknown flavor `{other}`"))),
        })
    }
}

/// `exp(exponent)` with the exponent per flavor:
///
/// | flavor | exponent |
/// |--------|----------|
/// | sq_l2, sqrt_tight | `2 ln Q - 2 M eps^2 / hbar^4` |
/// | sqrt_loose | `2 ln Q - 2 M (eps / hbar)^4` |
/// | kernel | `2 ln Q - (8/9) M eps^2 / hbar^4` |
/// | norm | `ln 2 + ln Q - 2 M eps^2 / hbar^4` |
pub fn pointcloud_bound(q: u64, m: u64, eps: f64, hbar: f64, flavor: PointCloudFlavor) -> Result<BoundReport> {
    if q < 2 {
        return Err(invalid("Q", "need at least 2 points"));
    }
    if m == 0 {
        return Err(invalid("M", "must be at least 1"));
    }
    positive("eps", eps)?;
    positive("hbar", hbar)?;
    if flavor == PointCloudFlavor::SqrtTight && eps > 1.0 {
        return Err(invalid("eps", "the tight root-distance bound needs eps <= 1"));
    }
    let (lq, mf, h4) = ((q as f64).ln(), m as f64, hbar.powi(4));
    let exponent = match flavor {
        PointCloudFlavor::SqL2 | PointCloudFlavor::SqrtTight => 2.0 * lq - 2.0 * mf * eps * eps / h4,
        PointCloudFlavor::SqrtLoose => 2.0 * lq - 2.0 * mf * (eps / hbar).powi(4),
        PointCloudFlavor::Kernel => 2.0 * lq - 8.0 / 9.0 * mf * eps * eps / h4,
        PointCloudFlavor::Norm => LN_2 + lq - 2.0 * mf * eps * eps / h4,
    };
    Ok(BoundReport::new(
        "pointcloud",
        exponent.exp(),
        vec![
            ("Q", q as f64),
            ("M", mf),
            ("eps", eps),
            ("hbar", hbar),
            ("exponent", exponent),
        ],
    ))
}

/// Inputs for extending a guarantee from an `r`-covering to a whole set of
/// signals when the embedding is Lipschitz.
#[derive(Clone, Copy, Debug, PartialEq)]
pub struct ContinuousExtension {
    /// Covering entropy `E_r` (natural log of the covering number) at the returned `r`.
    pub entropy: f64,
    pub m: f64,
    /// Per-measurement concentration exponent `w(delta, eps)`.
    pub w: f64,
    pub c: f64,
    pub eps: f64,
    pub delta: f64,
    pub k_f: f64,
    pub k_g: f64,
    pub alpha: f64,
}

/// `r = alpha / ((1 + delta) 2 K_g + 2 K_f)`, failure `c exp(2 E_r - M w)`,
/// additive constant `eps + alpha`.
pub fn continuous_extension_bound(p: &ContinuousExtension) -> Result<BoundReport> {
    nonnegative("E_r", p.entropy)?;
    positive("M", p.m)?;
    nonnegative("w", p.w)?;
    positive("c", p.c)?;
    nonnegative("eps", p.eps)?;
    nonnegative("delta", p.delta)?;
    nonnegative("K_f", p.k_f)?;
    nonnegative("K_g", p.k_g)?;
    positive("alpha", p.alpha)?;
    let denom = (1.0 + p.delta) * 2.0 * p.k_g + 2.0 * p.k_f;
    if denom == 0.0 {
        return Err(invalid("K_f", "K_f and K_g are both zero"));
    }
    let r = p.alpha / denom;
    let exponent = 2.0 * p.entropy - p.m * p.w;
    Ok(BoundReport::new(
        "continuous_extension",
        p.c * exponent.exp(),
        vec![
            ("E_r", p.entropy),
            ("M", p.m),
            ("w", p.w),
            ("c", p.c),
            ("delta", p.delta),
            ("K_f", p.k_f),
            ("K_g", p.k_g),
            ("alpha", p.alpha),
            ("r", r),
            ("eps_total", p.eps + p.alpha),
            ("exponent", exponent),
        ],
    ))
}

/// Inputs for the extension of quantized (piecewise Lipschitz) embeddings.
#[derive(Clone, Debug, PartialEq)]
pub struct DiscontinuousExtension {
    /// Covering entropy at radius `r/2`.
    pub entropy_half: f64,
    pub m: f64,
    pub w: f64,
    pub c: f64,
    /// `P_T` for `T = 2..=t_max`.
    pub p_t: Vec<f64>,
    pub t_max: u32,
    /// Probability of a non-Lipschitz event.
    pub p_f: f64,
    pub c0: f64,
}

/// Failure `c exp(2 E + c1 M - M w) + T_max exp(-2 c0^2 M) + P_F`, with
/// `c1 = sum_T P_T (1 + c0) ln T`. Decays in `M` iff `c1 < w`.
pub fn discontinuous_extension_bound(p: &DiscontinuousExtension) -> Result<BoundReport> {
    nonnegative("E", p.entropy_half)?;
    positive("M", p.m)?;
    nonnegative("w", p.w)?;
    positive("c", p.c)?;
    nonnegative("c0", p.c0)?;
    if p.t_max < 2 {
        return Err(invalid("T_max", "must be at least 2"));
    }
    if p.p_t.len() != (p.t_max - 1) as usize {
        return Err(invalid(
            "P_T",
            format!(
                "expected {} entries for T = 2..={}, got {}",
                p.t_max - 1,
                p.t_max,
                p.p_t.len()
            ),
        ));
    }
    for &v in p.p_t.iter().chain([&p.p_f]) {
        if !(0.0..=1.0).contains(&v) {
            return Err(invalid("P_T", format!("probability {v} outside [0, 1]")));
        }
    }
    let c1: f64 = p
        .p_t
        .iter()
        .enumerate()
        .map(|(i, &pt)| pt * (1.0 + p.c0) * ((i + 2) as f64).ln())
        .sum();
    let exponent = 2.0 * p.entropy_half + c1 * p.m - p.m * p.w;
    let raw = p.c * exponent.exp() + p.t_max as f64 * (-2.0 * p.c0 * p.c0 * p.m).exp() + p.p_f;
    Ok(BoundReport::new(
        "discontinuous_extension",
        raw,
        vec![
            ("E", p.entropy_half),
            ("M", p.m),
            ("w", p.w),
            ("c", p.c),
            ("T_max", p.t_max as f64),
            ("P_F", p.p_f),
            ("c0", p.c0),
            ("c1", c1),
            ("rate", p.w - c1),
            ("decays", if c1 < p.w { 1.0 } else { 0.0 }),
            ("exponent", exponent),
        ],
    ))
}

/// Smallest `eps` for which the extension exponent decays when `w = 2 eps^2`.
pub fn decay_threshold_eps(c1: f64) -> f64 {
    (c1 / 2.0).sqrt()
}

/// `eps + 2 E_Q`.
pub fn quantized_bound_inflation(eps: f64, e_q: f64) -> Result<f64> {
    nonnegative("E_Q", e_q)?;
    Ok(eps + 2.0 * e_q)
}

/// Worst-case l2 error of a scalar quantizer with step `step` in `M` dimensions.
pub fn scalar_quantizer_eq(m: u64, step: f64) -> Result<f64> {
    nonnegative("step", step)?;
    Ok((m as f64).sqrt() * step / 2.0)
}

/// Additive term at `R` total bits: `eps + 2^(1 - R/M) sqrt(M) S`.
pub fn rate_form(eps: f64, rate_bits: f64, m: u64, s: f64) -> Result<f64> {
    if m == 0 {
        return Err(invalid("M", "must be at least 1"));
    }
    if !(rate_bits >= m as f64) {
        return Err(invalid("R", format!("rate {rate_bits} below M = {m}")));
    }
    positive("S", s)?;
    let mf = m as f64;
    Ok(eps + (1.0 - rate_bits / mf).exp2() * mf.sqrt() * s)
}

/// Probability bound that a radius-`r/2` ball straddles a quantizer boundary.
#[derive(Clone, Copy, Debug, PartialEq)]
pub struct P2Bound {
    pub value: f64,
    /// `r < Delta / (sigma sqrt(N + 1))`
    pub meaningful: bool,
}

/// `sigma r sqrt(N+1) / Delta + exp(-(Delta/(sigma r sqrt N) - 1)^2 N / 6)`.
pub fn p2_bound(n: u64, sigma: f64, r: f64, delta: f64) -> Result<P2Bound> {
    if n == 0 {
        return Err(invalid("N", "must be at least 1"));
    }
    positive("sigma", sigma)?;
    positive("r", r)?;
    positive("Delta", delta)?;
    let nf = n as f64;
    let first = sigma * r * (nf + 1.0).sqrt() / delta;
    let z = delta / (sigma * r * nf.sqrt()) - 1.0;
    let second = (-z * z * nf / 6.0).exp();
    Ok(P2Bound {
        value: first + second,
        meaningful: r < p2_meaningful_radius(n, sigma, delta),
    })
}

/// `Delta / (sigma sqrt(N+1))`.
pub fn p2_meaningful_radius(n: u64, sigma: f64, delta: f64) -> f64 {
    delta / (sigma * (n as f64 + 1.0).sqrt())
}

#[derive(Clone, Copy, Debug, PartialEq)]
pub struct MonteCarloEstimate {
    pub mean: f64,
    pub stderr: f64,
    pub trials: u64,
}

/// Fraction of trials in which the projected interval of length `||a|| r`,
/// `a ~ N(0, sigma^2 I_N)`, placed at a uniform offset in `[0, Delta)`,
/// crosses a multiple of `Delta`.
pub fn p2_monte_carlo(
    n: u64,
    sigma: f64,
    r: f64,
    delta: f64,
    trials: u64,
    rs: &RandomState,
) -> Result<MonteCarloEstimate> {
    p2_bound(n, sigma, r, delta)?;
    if trials < 2 {
        return Err(invalid("trials", "need at least 2"));
    }
    let gauss = rs.derive(1);
    let offsets = rs.derive(2);
    let hits: u64 = (0..trials)
        .into_par_iter()
        .map(|t| {
            let base = t * n;
            let norm = (0..n).map(|j| gauss.gaussian(base + j).powi(2)).sum::<f64>().sqrt() * sigma;
            let u = offsets.uniform(t) * delta;
            u64::from(u + norm * r >= delta)
        })
        .sum();
    let p = hits as f64 / trials as f64;
    Ok(MonteCarloEstimate {
        mean: p,
        stderr: (p * (1.0 - p) / (trials - 1) as f64).sqrt(),
        trials,
    })
}

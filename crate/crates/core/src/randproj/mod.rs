//! Random projections, dither, and the characteristic functions of projected
//! distances.
//!
//! A row `a` of the projection has i.i.d. entries; for a pair at distance `d`
//! the projected difference `l = <a, x - x'>` is
//!
//! | family | entries | `l` | `phi(xi | d)` | metric |
//! |--------|---------|-----|---------------|--------|
//! | Gaussian | `N(0, s^2)` | `N(0, (s d)^2)` | `exp(-(s d xi)^2 / 2)` | l2 |
//! | Cauchy | `Cauchy(0, s)` | `Cauchy(0, s d)` | `exp(-s d abs(xi))` | l1 |

mod rng;

use rayon::prelude::*;

use crate::error::{invalid, Error, Result};
pub use rng::{RandomState, Stream};

/// Upper limit on the number of entries in a sampled matrix (2 GiB of f64).
pub const MAX_MATRIX_ELEMENTS: usize = 1 << 28;

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum Family {
    Gaussian,
    Cauchy,
}

/// Signal-space distance that the projection statistics depend on.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum SignalMetric {
    L2,
    L1,
}

impl std::str::FromStr for Family {
    type Err = Error;
    fn from_str(s: &str) -> Result<Self> {
        match s.trim() {
            "gaussian" => Ok(Family::Gaussian),
            "cauchy" => Ok(Family::Cauchy),
            other => Err(invalid("family", format!("unknown family `{other}`"))),
        }
    }
}

impl std::fmt::Display for Family {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        f.write_str(match self {
            Family::Gaussian => "gaussian",
            Family::Cauchy => "cauchy",
        })
    }
}

/// Distribution of the projection entries.
#[derive(Clone, Copy, Debug, PartialEq)]
pub struct ProjectionSpec {
    family: Family,
    scale: f64,
}

impl ProjectionSpec {
    pub fn new(family: Family, scale: f64) -> Result<Self> {
        if !(scale > 0.0) || !scale.is_finite() {
            return Err(invalid("scale", format!("must be positive and finite, got {scale}")));
        }
        Ok(Self { family, scale })
    }

    pub fn gaussian(sigma: f64) -> Result<Self> {
        Self::new(Family::Gaussian, sigma)
    }

    pub fn cauchy(gamma: f64) -> Result<Self> {
        Self::new(Family::Cauchy, gamma)
    }

    /// Period-1 scale for a user-level quantizer step `delta` and `bits`
    /// resolution: `scale / (2^bits * delta)`. Binary maps use `bits = 1`.
    pub fn universal(family: Family, scale: f64, delta: f64, bits: u32) -> Result<Self> {
        if !(delta > 0.0) || !delta.is_finite() {
            return Err(invalid("delta", format!("must be positive and finite, got {delta}")));
        }
        Self::new(family, scale / ((bits as f64).exp2() * delta))
    }

    pub fn family(&self) -> Family {
        self.family
    }

    pub fn scale(&self) -> f64 {
        self.scale
    }

    pub fn metric(&self) -> SignalMetric {
        match self.family {
            Family::Gaussian => SignalMetric::L2,
            Family::Cauchy => SignalMetric::L1,
        }
    }

    /// `phi_l(xi | d)`, the characteristic function of the projected
    /// difference at signal distance `d`.
    pub fn char_fn(&self, xi: f64, d: f64) -> Result<f64> {
        if !(d >= 0.0) {
            return Err(invalid("d", format!("must be nonnegative, got {d}")));
        }
        if !xi.is_finite() {
            return Err(Error::NonFinite(xi));
        }
        Ok(self.phi(xi, d))
    }

    /// Unchecked [`ProjectionSpec::char_fn`].
    #[inline]
    pub fn phi(&self, xi: f64, d: f64) -> f64 {
        let t = self.scale * d * xi;
        match self.family {
            Family::Gaussian => (-0.5 * t * t).exp(),
            Family::Cauchy => (-t.abs()).exp(),
        }
    }

    /// One draw of a projection entry.
    #[inline]
    pub fn draw(&self, rs: &RandomState, index: u64) -> f64 {
        self.scale
            * match self.family {
                Family::Gaussian => rs.gaussian(index),
                Family::Cauchy => rs.cauchy(index),
            }
    }

    /// Distance between signals in this spec's metric.
    pub fn signal_distance(&self, x: &[f64], y: &[f64]) -> Result<f64> {
        if x.len() != y.len() {
            return Err(Error::DimensionMismatch {
                expected: x.len(),
                got: y.len(),
            });
        }
        let it = x.iter().zip(y).map(|(a, b)| a - b);
        Ok(match self.metric() {
            SignalMetric::L2 => it.map(|v| v * v).sum::<f64>().sqrt(),
            SignalMetric::L1 => it.map(f64::abs).sum(),
        })
    }
}

/// Dense row-major matrix.
#[derive(Clone, Debug, PartialEq)]
pub struct Matrix {
    rows: usize,
    cols: usize,
    data: Vec<f64>,
}

impl Matrix {
    pub fn from_vec(rows: usize, cols: usize, data: Vec<f64>) -> Result<Self> {
        if data.len() != rows * cols {
            return Err(Error::DimensionMismatch {
                expected: rows * cols,
                got: data.len(),
            });
        }
        Ok(Self { rows, cols, data })
    }

    pub fn rows(&self) -> usize {
        self.rows
    }

    pub fn cols(&self) -> usize {
        self.cols
    }

    pub fn row(&self, i: usize) -> &[f64] {
        &self.data[i * self.cols..(i + 1) * self.cols]
    }

    pub fn as_slice(&self) -> &[f64] {
        &self.data
    }
}

fn check_size(m: usize, n: usize) -> Result<usize> {
    if m == 0 {
        return Err(invalid("M", "must be at least 1"));
    }
    if n == 0 {
        return Err(invalid("N", "must be at least 1"));
    }
    let total = m as u128 * n as u128;
    if total > MAX_MATRIX_ELEMENTS as u128 {
        return Err(Error::SizeCap {
            requested: total,
            cap: MAX_MATRIX_ELEMENTS as u128,
        });
    }
    Ok(total as usize)
}

/// `m x n` matrix of i.i.d. entries; entry `(i, j)` is draw `i * n + j`.
pub fn sample_projection(spec: &ProjectionSpec, m: usize, n: usize, rs: &RandomState) -> Result<Matrix> {
    let total = check_size(m, n)?;
    let mut data = vec![0.0; total];
    data.par_chunks_mut(n).enumerate().for_each(|(i, row)| {
        let base = (i * n) as u64;
        for (j, v) in row.iter_mut().enumerate() {
            *v = spec.draw(rs, base + j as u64);
        }
    });
    Matrix::from_vec(m, n, data)
}

/// `m` i.i.d. uniform draws on `[0, 1)`.
pub fn sample_dither(m: usize, rs: &RandomState) -> Result<Vec<f64>> {
    check_size(m, 1)?;
    Ok((0..m as u64).map(|i| rs.uniform(i)).collect())
}

/// `n` draws of the projected difference `l` at signal distance `d`.
pub fn projected_diff_samples(spec: &ProjectionSpec, d: f64, n: usize, rs: &RandomState) -> Result<Vec<f64>> {
    if !(d >= 0.0) || !d.is_finite() {
        return Err(invalid("d", format!("must be finite and nonnegative, got {d}")));
    }
    check_size(n, 1)?;
    Ok((0..n as u64).into_par_iter().map(|i| d * spec.draw(rs, i)).collect())
}

#[cfg(test)]
mod tests {
    use super::*;
    use std::f64::consts::PI;

    fn mc(seed: u64) -> RandomState {
        RandomState::new(seed, Stream::MonteCarlo)
    }

    #[test]
    fn gaussian_matrix_moments() {
        let spec = ProjectionSpec::gaussian(1.0).unwrap();
        let a = sample_projection(&spec, 1000, 1000, &RandomState::new(1, Stream::Matrix)).unwrap();
        let n = a.as_slice().len() as f64;
        let mean = a.as_slice().iter().sum::<f64>() / n;
        let var = a.as_slice().iter().map(|v| (v - mean).powi(2)).sum::<f64>() / n;
        assert!(mean.abs() < 4.0 / n.sqrt());
        assert!((var - 1.0).abs() < 0.05);
    }

    #[test]
    fn cauchy_median_abs() {
        let spec = ProjectionSpec::cauchy(1.0).unwrap();
        let a = sample_projection(&spec, 300, 300, &RandomState::new(2, Stream::Matrix)).unwrap();
        let mut v: Vec<f64> = a.as_slice().iter().map(|x| x.abs()).collect();
        v.sort_by(f64::total_cmp);
        let med = v[v.len() / 2];
        assert!((med - 1.0).abs() < 0.05, "median {med}");
    }

    #[test]
    fn sampling_is_deterministic() {
        let spec = ProjectionSpec::gaussian(0.3).unwrap();
        let rs = RandomState::new(11, Stream::Matrix);
        let a = sample_projection(&spec, 40, 17, &rs).unwrap();
        let b = sample_projection(&spec, 40, 17, &rs).unwrap();
        assert_eq!(a, b);
        let pool = rayon::ThreadPoolBuilder::new().num_threads(3).build().unwrap();
        let c = pool.install(|| sample_projection(&spec, 40, 17, &rs).unwrap());
        assert_eq!(a, c);
    }

    #[test]
    fn size_limits() {
        let spec = ProjectionSpec::gaussian(1.0).unwrap();
        let rs = RandomState::new(0, Stream::Matrix);
        assert!(matches!(
            sample_projection(&spec, 1 << 20, 1 << 20, &rs),
            Err(Error::SizeCap { .. })
        ));
        assert!(sample_projection(&spec, 0, 3, &rs).is_err());
        assert!(sample_dither(0, &rs).is_err());
    }

    #[test]
    fn dither_support_and_mean() {
        let w = sample_dither(100_000, &RandomState::new(5, Stream::Dither)).unwrap();
        assert!(w.iter().all(|v| (0.0..1.0).contains(v)));
        let mean = w.iter().sum::<f64>() / w.len() as f64;
        assert!((mean - 0.5).abs() < 0.005);
    }

    #[test]
    fn char_fn_values() {
        let g = ProjectionSpec::gaussian(1.0).unwrap();
        let c = ProjectionSpec::cauchy(1.0).unwrap();
        assert_eq!(g.char_fn(3.7, 0.0).unwrap(), 1.0);
        assert_eq!(c.char_fn(-2.0, 0.0).unwrap(), 1.0);
        assert!((g.char_fn(1.0, 1.0).unwrap() - 0.606_53).abs() < 1e-5);
        assert!((c.char_fn(PI, 2.0).unwrap() - 1.867e-3).abs() < 1e-6);
        assert!(g.char_fn(1.0, -0.1).is_err());
    }

    #[test]
    fn char_fn_monotone_in_distance() {
        for spec in [
            ProjectionSpec::gaussian(0.7).unwrap(),
            ProjectionSpec::cauchy(1.3).unwrap(),
        ] {
            for xi in [-5.0, 0.3, 2.0 * PI] {
                let mut prev = 1.0;
                for i in 0..200 {
                    let v = spec.phi(xi, i as f64 * 0.05);
                    assert!(v <= prev);
                    prev = v;
                }
            }
        }
    }

    #[test]
    fn char_fn_matches_monte_carlo() {
        let n = 1_000_000;
        let g = ProjectionSpec::gaussian(1.0).unwrap();
        let l = projected_diff_samples(&g, 1.0, n, &mc(21)).unwrap();
        let est = l.iter().map(|v| v.cos()).sum::<f64>() / n as f64;
        assert!((est - (-0.5f64).exp()).abs() < 0.003);

        let c = ProjectionSpec::cauchy(1.0).unwrap();
        let l = projected_diff_samples(&c, 1.0, n, &mc(22)).unwrap();
        let est = l.iter().map(|v| (2.0 * PI * v).cos()).sum::<f64>() / n as f64;
        assert!((est - (-2.0 * PI).exp()).abs() < 0.01);

        let l = projected_diff_samples(&c, 2.0, n, &mc(23)).unwrap();
        let est = l.iter().map(|v| (PI * v).cos()).sum::<f64>() / n as f64;
        assert!((est - c.phi(PI, 2.0)).abs() < 0.005);
    }

    #[test]
    fn zero_distance_samples() {
        let g = ProjectionSpec::gaussian(1.0).unwrap();
        assert!(projected_diff_samples(&g, 0.0, 100, &mc(1))
            .unwrap()
            .iter()
            .all(|&v| v == 0.0));
    }

    #[test]
    fn universal_scale() {
        let s = ProjectionSpec::universal(Family::Gaussian, 1.0, 1.0, 1).unwrap();
        assert_eq!(s.scale(), 0.5);
        let s2 = ProjectionSpec::universal(Family::Gaussian, 1.0, 1.0, 2).unwrap();
        assert_eq!(s2.scale(), 0.25);
        assert!(ProjectionSpec::universal(Family::Gaussian, 1.0, 0.0, 1).is_err());
        assert!(ProjectionSpec::gaussian(-1.0).is_err());
    }
}

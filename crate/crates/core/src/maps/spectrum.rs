/// Two-sided Fourier power coefficients `|H_k|^2` of a period-1 map.
///
/// Real maps have `|H_-k| = |H_k|`, so only `k >= 0` is stored. The power of
/// the pair `{-k, k}` is [`PowerSpectrum::pair_power`].
#[derive(Clone, Debug, PartialEq)]
pub struct PowerSpectrum {
    pub(crate) coeffs: Vec<f64>,
    pub(crate) tail_bound: f64,
    pub(crate) total_power: f64,
}

impl PowerSpectrum {
    /// Largest stored frequency.
    pub fn kmax(&self) -> usize {
        self.coeffs.len() - 1
    }

    /// `|H_k|^2`, zero beyond `kmax`.
    pub fn get(&self, k: usize) -> f64 {
        self.coeffs.get(k).copied().unwrap_or(0.0)
    }

    /// `|H_k|^2 + |H_-k|^2` for `k >= 1`, `|H_0|^2` for `k = 0`.
    pub fn pair_power(&self, k: usize) -> f64 {
        if k == 0 {
            self.get(0)
        } else {
            2.0 * self.get(k)
        }
    }

    /// `(k, |H_k|^2)` for `k = 0..=kmax`.
    pub fn iter(&self) -> impl Iterator<Item = (usize, f64)> + '_ {
        self.coeffs.iter().copied().enumerate()
    }

    pub fn coeffs(&self) -> &[f64] {
        &self.coeffs
    }

    /// Bound on `sum_{|k| > kmax} |H_k|^2`.
    pub fn tail_bound(&self) -> f64 {
        self.tail_bound
    }

    /// `integral_0^1 h(t)^2 dt`.
    pub fn total_power(&self) -> f64 {
        self.total_power
    }

    /// `sum_{|k| <= kmax} |H_k|^2`.
    pub fn captured_power(&self) -> f64 {
        self.coeffs[0] + 2.0 * self.coeffs[1..].iter().sum::<f64>()
    }

    /// Nonzero frequencies with power above `floor`.
    pub fn support(&self, floor: f64) -> Vec<usize> {
        self.iter()
            .skip(1)
            .filter(|&(_, p)| p > floor)
            .map(|(k, _)| k)
            .collect()
    }
}

//! Piecewise-constant periodic functions and their exact Fourier series.

use std::f64::consts::PI;

/// A period-1 step function: `values[i]` holds on `[starts[i], starts[i+1])`,
/// the last value runs up to 1. `starts[0]` is always 0.
#[derive(Clone, Debug, PartialEq)]
pub(crate) struct Pieces {
    starts: Vec<f64>,
    values: Vec<f64>,
}

/// Resolution of located jump points.
const JUMP_RESOLUTION: f64 = 1e-14;

impl Pieces {
    pub(crate) fn new(starts: Vec<f64>, values: Vec<f64>) -> Self {
        debug_assert_eq!(starts.len(), values.len());
        debug_assert!(starts.first() == Some(&0.0));
        let mut s = Vec::with_capacity(starts.len());
        let mut v: Vec<f64> = Vec::with_capacity(values.len());
        for (t, x) in starts.into_iter().zip(values) {
            if v.last() == Some(&x) {
                continue;
            }
            s.push(t);
            v.push(x);
        }
        Self { starts: s, values: v }
    }

    /// Samples a step function `f` on `[0, 1)` by scanning a uniform grid of
    /// `grid` cells and bisecting every cell whose endpoints land in different
    /// levels. `f` returns a level index.
    pub(crate) fn locate<F, L>(grid: usize, index: F, level: L) -> Self
    where
        F: Fn(f64) -> i64,
        L: Fn(i64) -> f64,
    {
        let upper = 1.0 - f64::EPSILON;
        let mut starts = vec![0.0];
        let first = index(0.0);
        let mut levels = vec![first];
        let mut prev_t = 0.0;
        let mut prev_i = first;
        for cell in 1..=grid {
            let t = if cell == grid { upper } else { cell as f64 / grid as f64 };
            let i = index(t);
            if i != prev_i {
                bisect(&index, prev_t, t, prev_i, i, &mut starts, &mut levels);
            }
            prev_t = t;
            prev_i = i;
        }
        let values = levels.into_iter().map(level).collect();
        Self::new(starts, values)
    }

    pub(crate) fn values(&self) -> &[f64] {
        &self.values
    }

    pub(crate) fn lengths(&self) -> impl Iterator<Item = f64> + '_ {
        self.starts.iter().enumerate().map(move |(i, &s)| {
            let end = self.starts.get(i + 1).copied().unwrap_or(1.0);
            end - s
        })
    }

    pub(crate) fn mean(&self) -> f64 {
        self.values.iter().zip(self.lengths()).map(|(v, l)| v * l).sum()
    }

    pub(crate) fn mean_square(&self) -> f64 {
        self.values.iter().zip(self.lengths()).map(|(v, l)| v * v * l).sum()
    }

    /// Jump locations and signed jump sizes, including the wrap-around jump
    /// at t = 0.
    fn jumps(&self) -> Vec<(f64, f64)> {
        let n = self.values.len();
        let mut out = Vec::with_capacity(n);
        let wrap = self.values[0] - self.values[n - 1];
        if wrap != 0.0 {
            out.push((0.0, wrap));
        }
        for i in 1..n {
            out.push((self.starts[i], self.values[i] - self.values[i - 1]));
        }
        out
    }

    /// Two-sided power coefficients `|H_k|^2` for `k = 0..=kmax`.
    ///
    /// Uses `2 pi i k H_k = sum_j J_j exp(-2 pi i k t_j)` over the jumps `J_j`.
    /// Phases are advanced by complex rotation and re-anchored every 256 steps.
    pub(crate) fn power(&self, kmax: usize) -> Vec<f64> {
        let mut out = Vec::with_capacity(kmax + 1);
        let dc = self.mean();
        out.push(dc * dc);
        if kmax == 0 {
            return out;
        }
        let jumps = self.jumps();
        let steps: Vec<(f64, f64)> = jumps
            .iter()
            .map(|&(t, _)| {
                let (s, c) = (-2.0 * PI * t).sin_cos();
                (c, s)
            })
            .collect();
        let mut phase: Vec<(f64, f64)> = steps.clone();
        for k in 1..=kmax {
            if k % 256 == 0 {
                for (p, &(t, _)) in phase.iter_mut().zip(&jumps) {
                    let frac = (k as f64 * t).fract();
                    let (s, c) = (-2.0 * PI * frac).sin_cos();
                    *p = (c, s);
                }
            }
            let (mut re, mut im) = (0.0, 0.0);
            for (&(c, s), &(_, jump)) in phase.iter().zip(&jumps) {
                re += jump * c;
                im += jump * s;
            }
            let w = 2.0 * PI * k as f64;
            out.push((re * re + im * im) / (w * w));
            for (p, &(rc, rs)) in phase.iter_mut().zip(&steps) {
                let (c, s) = *p;
                *p = (c * rc - s * rs, c * rs + s * rc);
            }
        }
        out
    }
}

fn bisect<F: Fn(f64) -> i64>(
    index: &F,
    a: f64,
    b: f64,
    ia: i64,
    ib: i64,
    starts: &mut Vec<f64>,
    levels: &mut Vec<i64>,
) {
    if ia == ib {
        return;
    }
    let mid = 0.5 * (a + b);
    if b - a <= JUMP_RESOLUTION || mid <= a || mid >= b {
        starts.push(b);
        levels.push(ib);
        return;
    }
    let im = index(mid);
    bisect(index, a, mid, ia, im, starts, levels);
    bisect(index, mid, b, im, ib, starts, levels);
}

//! Random signal pairs at prescribed distances.

use rayon::prelude::*;

use crate::embedder::{embedding_distance, DistanceMetric, EmbeddingOperator};
use crate::error::{invalid, Result};
use crate::randproj::{RandomState, SignalMetric};
use crate::theory::linear_grid;

/// `pairs` distances spaced evenly on `[d_min, d_max]`.
pub fn distance_grid(d_min: f64, d_max: f64, pairs: usize) -> Vec<f64> {
    linear_grid(d_min, d_max, pairs)
}

/// Signals `x_i, x_i + d_i u_i` interleaved as `[x_0, x_0', x_1, x_1', ...]`.
///
/// `x_i` has i.i.d. standard normal entries; `u_i` is a random direction of
/// unit norm in `metric`.
pub fn signal_pairs(n: usize, ds: &[f64], metric: SignalMetric, rs: &RandomState) -> Result<Vec<Vec<f64>>> {
    if n == 0 {
        return Err(invalid("N", "must be positive"));
    }
    if let Some(&d) = ds.iter().find(|d| !(**d >= 0.0) || !d.is_finite()) {
        return Err(invalid("d", format!("must be nonnegative and finite, got {d}")));
    }
    let base = rs.derive(0);
    let dirs = rs.derive(1);
    let out: Vec<[Vec<f64>; 2]> = ds
        .par_iter()
        .enumerate()
        .map(|(i, &d)| {
            let off = (i * n) as u64;
            let x: Vec<f64> = (0..n as u64).map(|j| base.gaussian(off + j)).collect();
            let u: Vec<f64> = (0..n as u64).map(|j| dirs.gaussian(off + j)).collect();
            let norm = match metric {
                SignalMetric::L2 => u.iter().map(|v| v * v).sum::<f64>().sqrt(),
                SignalMetric::L1 => u.iter().map(|v| v.abs()).sum::<f64>(),
            };
            let y = x.iter().zip(&u).map(|(a, b)| a + d * b / norm).collect();
            [x, y]
        })
        .collect();
    Ok(out.into_iter().flatten().collect())
}

/// Embedding distance of each interleaved pair from [`signal_pairs`].
pub(crate) fn pair_distances(op: &EmbeddingOperator, signals: &[Vec<f64>], metric: DistanceMetric) -> Result<Vec<f64>> {
    let ys = op.embed_batch(signals)?;
    ys.chunks(2).map(|p| embedding_distance(&p[0], &p[1], metric)).collect()
}

//! Binary universal embeddings over a grid of quantizer steps and embedding
//! dimensions.

use super::signals::{distance_grid, pair_distances, signal_pairs};
use super::{cell_seed, empirical_saturation, percentile, ExperimentConfig};
use crate::embedder::{DistanceMetric, EmbeddingOperator};
use crate::error::Result;
use crate::maps::make_square_wave;
use crate::randproj::{Family, ProjectionSpec, RandomState, Stream};
use crate::table::Table;
use crate::theory::{
    linear_saturation_radius, universal_binary_map, universal_binary_map_l1, DistanceMapModel, SATURATION_FRACTION,
};

#[derive(Clone, Debug, PartialEq)]
pub struct ScatterCell {
    pub delta: f64,
    pub m: usize,
    /// 95th percentile of `|hamming - g(d)|`.
    pub spread95: f64,
    pub mean_abs_dev: f64,
    pub d0_theory: f64,
    /// Where the linear bound reaches 1/2.
    pub d0_linear: f64,
    pub d0_empirical: f64,
}

#[derive(Clone, Debug)]
pub struct UniversalScatter {
    pub cells: Vec<ScatterCell>,
    /// `universal_scatter` and `universal_scatter_summary`.
    pub tables: super::Tables,
}

/// Normalized Hamming distance of binary universal embeddings (`scale` is
/// sigma or gamma) for every `(delta, M)` in `delta_list x m_list`.
pub fn universal_scatter(cfg: &ExperimentConfig) -> Result<UniversalScatter> {
    cfg.validate()?;
    let ds = distance_grid(cfg.d_min, cfg.d_max, cfg.pairs);
    let metric = ProjectionSpec::new(cfg.family, cfg.scale)?.metric();
    let signals = signal_pairs(cfg.n, &ds, metric, &RandomState::new(cfg.seed, Stream::Label(1)))?;
    let mut scatter = Table::new(&["delta", "M", "d_true", "hamming", "g_theory"]);
    let mut summary = Table::new(&[
        "delta",
        "M",
        "spread95",
        "mean_abs_dev",
        "d0_theory",
        "d0_linear",
        "d0_empirical",
    ]);
    let mut cells = Vec::new();
    let mut tag = 0u64;
    for &delta in &cfg.delta_list {
        let spec = ProjectionSpec::universal(cfg.family, cfg.scale, delta, 1)?;
        let model = DistanceMapModel::new(make_square_wave(), spec)?;
        let theory: Vec<f64> = ds
            .iter()
            .map(|&d| match cfg.family {
                Family::Gaussian => universal_binary_map(d, cfg.scale, delta).map(|b| b.g),
                Family::Cauchy => universal_binary_map_l1(d, cfg.scale, delta),
            })
            .collect::<Result<_>>()?;
        for &m in &cfg.m_list {
            let op = EmbeddingOperator::build(spec, make_square_wave(), m, cfg.n, cell_seed(cfg.seed, tag))?;
            tag += 1;
            let ham = pair_distances(&op, &signals, DistanceMetric::HammingMean)?;
            let devs: Vec<f64> = ham.iter().zip(&theory).map(|(h, g)| (h - g).abs()).collect();
            for i in 0..ds.len() {
                scatter.push(vec![
                    delta.into(),
                    m.into(),
                    ds[i].into(),
                    ham[i].into(),
                    theory[i].into(),
                ]);
            }
            let cell = ScatterCell {
                delta,
                m,
                spread95: percentile(&devs, 95.0),
                mean_abs_dev: devs.iter().sum::<f64>() / devs.len() as f64,
                d0_theory: model.d0(),
                d0_linear: linear_saturation_radius(cfg.scale, delta),
                d0_empirical: empirical_saturation(&ds, &ham, SATURATION_FRACTION * 0.5),
            };
            summary.push(vec![
                delta.into(),
                m.into(),
                cell.spread95.into(),
                cell.mean_abs_dev.into(),
                cell.d0_theory.into(),
                cell.d0_linear.into(),
                cell.d0_empirical.into(),
            ]);
            cells.push(cell);
        }
    }
    Ok(UniversalScatter {
        cells,
        tables: vec![
            ("universal_scatter".into(), scatter),
            ("universal_scatter_summary".into(), summary),
        ],
    })
}

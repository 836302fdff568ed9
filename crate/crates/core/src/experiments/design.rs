//! Embedding distance versus signal distance for a designed map at several
//! projection scales.

use super::signals::{distance_grid, pair_distances, signal_pairs};
use super::{cell_seed, empirical_saturation, resolve_spec, ExperimentConfig};
use crate::embedder::{DistanceMetric, EmbeddingOperator};
use crate::error::Result;
use crate::maps::PeriodicMap;
use crate::randproj::{RandomState, Stream};
use crate::table::Table;
use crate::theory::{DistanceMapModel, SATURATION_FRACTION};

/// Summary of one scale.
#[derive(Clone, Debug, PartialEq)]
pub struct DesignCell {
    pub scale: f64,
    /// Fraction of pairs with `|emb - g(d)| <= eps`.
    pub within: f64,
    /// `1 - within`.
    pub violation_rate: f64,
    /// Per-pair Hoeffding bound `2 exp(-2 M eps^2 / hbar^4)`.
    pub hoeffding: f64,
    pub d0_theory: f64,
    /// Where a moving average of the scatter reaches the saturation fraction.
    pub d0_empirical: f64,
    pub mean_abs_dev: f64,
}

#[derive(Clone, Debug)]
pub struct DesignSim {
    pub cells: Vec<DesignCell>,
    /// `design_sim` (scatter) and `design_sim_summary`.
    pub tables: super::Tables,
}

/// For each scale in `scale_list`: one operator with map `map`, `pairs`
/// signal pairs at distances spread over `[d_min, d_max]`, squared mean
/// embedding distances against the theory curve.
pub fn design_sim(cfg: &ExperimentConfig) -> Result<DesignSim> {
    cfg.validate()?;
    let map: PeriodicMap = cfg.map.parse()?;
    let ds = distance_grid(cfg.d_min, cfg.d_max, cfg.pairs);
    let first = resolve_spec(cfg, &map, cfg.scale_list[0], cfg.delta)?;
    let signals = signal_pairs(
        cfg.n,
        &ds,
        first.metric(),
        &RandomState::new(cfg.seed, Stream::Label(1)),
    )?;
    let hbar = map.range();
    let hoeffding = (2.0 * (-2.0 * cfg.m as f64 * cfg.eps * cfg.eps / hbar.powi(4)).exp()).min(1.0);

    let mut scatter = Table::new(&["scale", "d_true", "emb_sq_l2_mean", "g_theory"]);
    let mut summary = Table::new(&[
        "scale",
        "eps",
        "within",
        "violation_rate",
        "hoeffding",
        "mean_abs_dev",
        "d0_theory",
        "d0_empirical",
    ]);
    let mut cells = Vec::new();
    for (c, &scale) in cfg.scale_list.iter().enumerate() {
        let spec = resolve_spec(cfg, &map, scale, cfg.delta)?;
        let model = DistanceMapModel::new(map.clone(), spec)?;
        let op = EmbeddingOperator::build(spec, map.clone(), cfg.m, cfg.n, cell_seed(cfg.seed, c as u64))?;
        let emb = pair_distances(&op, &signals, DistanceMetric::SqL2Mean)?;
        let theory: Vec<f64> = ds.iter().map(|&d| model.g(d)).collect();
        let devs: Vec<f64> = emb.iter().zip(&theory).map(|(e, g)| (e - g).abs()).collect();
        for i in 0..ds.len() {
            scatter.push(vec![scale.into(), ds[i].into(), emb[i].into(), theory[i].into()]);
        }
        let within = devs.iter().filter(|&&v| v <= cfg.eps).count() as f64 / devs.len() as f64;
        let cell = DesignCell {
            scale,
            within,
            violation_rate: 1.0 - within,
            hoeffding,
            d0_theory: model.d0(),
            d0_empirical: empirical_saturation(&ds, &emb, SATURATION_FRACTION * model.saturation()),
            mean_abs_dev: devs.iter().sum::<f64>() / devs.len() as f64,
        };
        summary.push(vec![
            scale.into(),
            cfg.eps.into(),
            cell.within.into(),
            cell.violation_rate.into(),
            cell.hoeffding.into(),
            cell.mean_abs_dev.into(),
            cell.d0_theory.into(),
            cell.d0_empirical.into(),
        ]);
        cells.push(cell);
    }
    Ok(DesignSim {
        cells,
        tables: vec![("design_sim".into(), scatter), ("design_sim_summary".into(), summary)],
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::experiments::ExperimentKind;

    #[test]
    fn small_run_tracks_theory() {
        let mut cfg = ExperimentConfig::defaults(ExperimentKind::DesignSim);
        cfg.n = 20;
        cfg.m = 400;
        cfg.pairs = 40;
        let r = design_sim(&cfg).unwrap();
        assert_eq!(r.cells.len(), 2);
        assert!(r.cells.iter().all(|c| c.mean_abs_dev < 0.1), "{:?}", r.cells);
        assert_eq!(r.tables[0].1.len(), 80);
        let again = design_sim(&cfg).unwrap();
        assert_eq!(again.tables[0].1, r.tables[0].1);
    }
}

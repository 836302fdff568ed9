//! Simulation runners. Each takes an [`ExperimentConfig`], is deterministic
//! in its seed, and returns named CSV tables alongside summary statistics.

pub mod config;
mod design;
mod quant;
mod retrieval;
mod scatter;
mod signals;
mod sweep;

use std::path::{Path, PathBuf};

pub use config::{ExperimentConfig, ExperimentKind, DEFAULT_MIXTURE};
pub use design::{design_sim, DesignCell, DesignSim};
pub use quant::{quantization_sim, quantized_jl, JlCheck, QuantCell, QuantizationSim};
pub use retrieval::{l2_retrieval_accuracy, make_clusters, retrieval, vote, ClusterDataset, Retrieval, RetrievalCell};
pub use scatter::{universal_scatter, ScatterCell, UniversalScatter};
pub use signals::{distance_grid, signal_pairs};
pub use sweep::{bounds_sweep, map_eval, BoundsSweep, MapEval};

use crate::error::{io_at, Result};
use crate::maps::{MapKind, PeriodicMap};
use crate::randproj::{ProjectionSpec, RandomState, Stream};
use crate::table::{emit_csv, Table};

/// Named tables produced by a run; names are file stems.
pub type Tables = Vec<(String, Table)>;

/// Runs `cfg.kind` and returns its tables.
pub fn run(cfg: &ExperimentConfig) -> Result<Tables> {
    cfg.validate()?;
    Ok(match cfg.kind {
        ExperimentKind::DesignSim => design_sim(cfg)?.tables,
        ExperimentKind::QuantizationSim => quantization_sim(cfg)?.tables,
        ExperimentKind::UniversalScatter => universal_scatter(cfg)?.tables,
        ExperimentKind::Retrieval => retrieval(cfg)?.tables,
        ExperimentKind::BoundsSweep => bounds_sweep(cfg)?.tables,
        ExperimentKind::MapEval => map_eval(cfg)?.tables,
    })
}

/// Writes each table to `dir/<name>.csv`, creating `dir`.
pub fn write_tables(dir: impl AsRef<Path>, tables: &Tables) -> Result<Vec<PathBuf>> {
    let dir = dir.as_ref();
    std::fs::create_dir_all(dir).map_err(io_at(dir))?;
    let mut paths = Vec::with_capacity(tables.len());
    for (name, table) in tables {
        let path = dir.join(format!("{name}.csv"));
        emit_csv(&path, table)?;
        paths.push(path);
    }
    Ok(paths)
}

/// Independent seed for cell `tag` of a run.
pub(crate) fn cell_seed(seed: u64, tag: u64) -> u64 {
    RandomState::new(seed, Stream::Label(0x63656c6c)).derive(tag).bits(0)
}

/// Resolution used when mapping a user-level step `delta` to the period-1 scale.
pub(crate) fn map_bits(map: &PeriodicMap) -> u32 {
    match map.kind() {
        MapKind::Multibit { bits } => *bits,
        MapKind::Quantized { bits, .. } => *bits,
        _ => 1,
    }
}

/// `scale / (2^B delta)` when `delta > 0`, else `scale` as is.
pub(crate) fn resolve_spec(
    cfg: &ExperimentConfig,
    map: &PeriodicMap,
    scale: f64,
    delta: f64,
) -> Result<ProjectionSpec> {
    if delta > 0.0 {
        ProjectionSpec::universal(cfg.family, scale, delta, map_bits(map))
    } else {
        ProjectionSpec::new(cfg.family, scale)
    }
}

/// Smallest `d` at which a centered moving average of `values` (sorted by `d`)
/// reaches `level`; `NaN` if it never does.
pub fn empirical_saturation(ds: &[f64], values: &[f64], level: f64) -> f64 {
    let n = ds.len();
    if n == 0 {
        return f64::NAN;
    }
    let mut idx: Vec<usize> = (0..n).collect();
    idx.sort_by(|&a, &b| ds[a].total_cmp(&ds[b]));
    let half = (n / 50).max(2);
    for (pos, &i) in idx.iter().enumerate() {
        let lo = pos.saturating_sub(half);
        let hi = (pos + half + 1).min(n);
        let mean = idx[lo..hi].iter().map(|&j| values[j]).sum::<f64>() / (hi - lo) as f64;
        if mean >= level {
            return ds[i];
        }
    }
    f64::NAN
}

/// Nearest-rank percentile, `p` in `[0, 100]`.
pub fn percentile(values: &[f64], p: f64) -> f64 {
    if values.is_empty() {
        return f64::NAN;
    }
    let mut v = values.to_vec();
    v.sort_by(f64::total_cmp);
    let rank = ((p / 100.0) * v.len() as f64).ceil().max(1.0) as usize;
    v[rank.min(v.len()) - 1]
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn percentile_nearest_rank() {
        let v: Vec<f64> = (1..=20).map(f64::from).collect();
        assert_eq!(percentile(&v, 95.0), 19.0);
        assert_eq!(percentile(&v, 100.0), 20.0);
        assert_eq!(percentile(&v, 0.0), 1.0);
        assert!(percentile(&[], 50.0).is_nan());
    }

    #[test]
    fn saturation_of_step() {
        let ds: Vec<f64> = (0..200).map(|i| i as f64 / 100.0).collect();
        let vs: Vec<f64> = ds.iter().map(|&d| if d < 1.0 { 0.0 } else { 1.0 }).collect();
        let s = empirical_saturation(&ds, &vs, 0.5);
        assert!((s - 1.0).abs() < 0.05, "{s}");
        assert!(empirical_saturation(&ds, &vs, 2.0).is_nan());
    }

    #[test]
    fn cell_seeds_differ() {
        assert_ne!(cell_seed(1, 0), cell_seed(1, 1));
        assert_ne!(cell_seed(1, 0), cell_seed(2, 0));
        assert_eq!(cell_seed(5, 3), cell_seed(5, 3));
    }
}

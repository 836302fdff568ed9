//! Quantized maps against their unquantized distance curves, and the
//! quantized linear-embedding guarantee.

use rayon::prelude::*;

use super::signals::{distance_grid, pair_distances, signal_pairs};
use super::{cell_seed, ExperimentConfig};
use crate::embedder::{post_quantize, DistanceMetric, EmbeddingOperator, EmbeddingVector};
use crate::error::{invalid, Result};
use crate::maps::{make_multibit, make_sawtooth, quantize_map, PeriodicMap};
use crate::randproj::{sample_projection, ProjectionSpec, RandomState, Stream};
use crate::table::Table;
use crate::theory::{multibit_map, scalar_quantizer_eq, DistanceMapModel};

/// One resolution of the sweep.
#[derive(Clone, Debug, PartialEq)]
pub struct QuantCell {
    pub bits: u32,
    /// Mean `|emb - g_unquantized(d)|`.
    pub mean_abs_dev: f64,
    pub max_abs_dev: f64,
    /// Mean `|g_quantized(d) - g_unquantized(d)|` over the grid.
    pub theory_gap: f64,
}

/// Post-quantized linear embedding check for one resolution.
#[derive(Clone, Debug, PartialEq)]
pub struct JlCheck {
    pub bits: u32,
    /// Largest `| ||f(x) - f(x')|| - ||x - x'|| |` of the unquantized embedding.
    pub eps: f64,
    /// Worst-case quantization error `sqrt(M) 2^-B S`.
    pub e_q: f64,
    /// Largest deviation after quantization.
    pub max_deviation: f64,
    pub bound: f64,
    pub saturated: usize,
    pub holds: bool,
}

#[derive(Clone, Debug)]
pub struct QuantizationSim {
    pub cells: Vec<QuantCell>,
    pub jl: Vec<JlCheck>,
    /// `quant_sim_B<b>` per resolution, `quant_sim_summary`, `quant_sim_jl`.
    pub tables: super::Tables,
}

fn maps_for(cfg: &ExperimentConfig, bits: u32) -> Result<(PeriodicMap, ProjectionSpec)> {
    if cfg.universal {
        if cfg.delta <= 0.0 {
            return Err(invalid("delta", "universal sweeps need delta > 0"));
        }
        Ok((
            make_multibit(bits)?,
            ProjectionSpec::universal(cfg.family, cfg.scale, cfg.delta, bits)?,
        ))
    } else {
        let inner: PeriodicMap = cfg.map.parse()?;
        let spec = super::resolve_spec(cfg, &inner, cfg.scale, cfg.delta)?;
        Ok((quantize_map(&inner, bits)?, spec))
    }
}

/// Sweeps `bits_list`. With `universal = 1` the maps are the multibit
/// universal staircases at step `delta` and the reference curve is the
/// unquantized sawtooth at the same effective scale; otherwise `map` is
/// quantized to `B` bits and compared with its own unquantized curve.
pub fn quantization_sim(cfg: &ExperimentConfig) -> Result<QuantizationSim> {
    cfg.validate()?;
    let ds = distance_grid(cfg.d_min, cfg.d_max, cfg.pairs);
    let (_, spec0) = maps_for(cfg, cfg.bits_list[0])?;
    let signals = signal_pairs(
        cfg.n,
        &ds,
        spec0.metric(),
        &RandomState::new(cfg.seed, Stream::Label(1)),
    )?;

    let mut tables = Vec::new();
    let mut summary = Table::new(&["bits", "mean_abs_dev", "max_abs_dev", "theory_gap"]);
    let mut cells = Vec::new();
    for (c, &bits) in cfg.bits_list.iter().enumerate() {
        let (map, spec) = maps_for(cfg, bits)?;
        let reference: Vec<f64> = if cfg.universal {
            ds.iter()
                .map(|&d| multibit_map(d, cfg.family, cfg.scale, bits, cfg.delta))
                .collect::<Result<_>>()?
        } else {
            let inner: PeriodicMap = cfg.map.parse()?;
            let model = DistanceMapModel::new(inner, spec)?;
            ds.iter().map(|&d| model.g(d)).collect()
        };
        let own = DistanceMapModel::new(map.clone(), spec)?;
        let op = EmbeddingOperator::build(spec, map, cfg.m, cfg.n, cell_seed(cfg.seed, c as u64))?;
        let emb = pair_distances(&op, &signals, DistanceMetric::SqL2Mean)?;
        let mut t = Table::new(&["d_true", "emb_sq_l2_mean", "g_theory", "g_quantized"]);
        let mut devs = Vec::with_capacity(ds.len());
        let mut gap = 0.0;
        for i in 0..ds.len() {
            let gq = own.g(ds[i]);
            t.push(vec![ds[i].into(), emb[i].into(), reference[i].into(), gq.into()]);
            devs.push((emb[i] - reference[i]).abs());
            gap += (gq - reference[i]).abs();
        }
        let cell = QuantCell {
            bits,
            mean_abs_dev: devs.iter().sum::<f64>() / devs.len() as f64,
            max_abs_dev: devs.iter().cloned().fold(0.0, f64::max),
            theory_gap: gap / ds.len() as f64,
        };
        summary.push(vec![
            bits.into(),
            cell.mean_abs_dev.into(),
            cell.max_abs_dev.into(),
            cell.theory_gap.into(),
        ]);
        tables.push((format!("quant_sim_B{bits}"), t));
        cells.push(cell);
    }

    let jl = quantized_jl(&signals, cfg.m, &cfg.bits_list, cell_seed(cfg.seed, 1 << 32))?;
    let mut jt = Table::new(&["bits", "eps", "e_q", "max_deviation", "bound", "saturated", "holds"]);
    for j in &jl {
        jt.push(vec![
            j.bits.into(),
            j.eps.into(),
            j.e_q.into(),
            j.max_deviation.into(),
            j.bound.into(),
            j.saturated.into(),
            j.holds.into(),
        ]);
    }
    tables.push(("quant_sim_summary".into(), summary));
    tables.push(("quant_sim_jl".into(), jt));
    Ok(QuantizationSim { cells, jl, tables })
}

fn l2(a: &[f64], b: &[f64]) -> f64 {
    a.iter().zip(b).map(|(x, y)| (x - y) * (x - y)).sum::<f64>().sqrt()
}

/// Linear embedding `f(x) = A x`, `A_ij ~ N(0, 1/M)`, followed by a `B`-bit
/// scalar quantizer on `[-S, S]` with `S` just above the largest `|f_i|`.
/// Checks every pair deviation against `eps + 2 E_Q`.
pub fn quantized_jl(signals: &[Vec<f64>], m: usize, bits_list: &[u32], seed: u64) -> Result<Vec<JlCheck>> {
    let n = signals.first().map_or(0, Vec::len);
    let spec = ProjectionSpec::gaussian(1.0 / (m as f64).sqrt())?;
    let a = sample_projection(&spec, m, n, &RandomState::new(seed, Stream::Matrix))?;
    let op = EmbeddingOperator::from_parts(a, vec![0.0; m], make_sawtooth(), spec)?;
    let f: Vec<Vec<f64>> = signals.par_iter().map(|x| op.project(x)).collect::<Result<_>>()?;
    let s = f.iter().flatten().fold(0.0f64, |acc, v| acc.max(v.abs())) * (1.0 + 1e-9) + f64::MIN_POSITIVE;
    let truth: Vec<f64> = signals.chunks(2).map(|p| l2(&p[0], &p[1])).collect();
    let eps = f
        .chunks(2)
        .zip(&truth)
        .map(|(p, t)| (l2(&p[0], &p[1]) - t).abs())
        .fold(0.0, f64::max);
    let mut out = Vec::new();
    for &bits in bits_list {
        let mut saturated = 0;
        let q: Vec<Vec<f64>> = f
            .iter()
            .map(|v| {
                let pq = post_quantize(&EmbeddingVector::new(v.clone(), "jl"), bits, s)?;
                saturated += pq.saturated;
                Ok(pq.vector.values)
            })
            .collect::<Result<_>>()?;
        let e_q = scalar_quantizer_eq(m as u64, 2.0 * s / (bits as f64).exp2())?;
        let max_deviation = q
            .chunks(2)
            .zip(&truth)
            .map(|(p, t)| (l2(&p[0], &p[1]) - t).abs())
            .fold(0.0, f64::max);
        let bound = eps + 2.0 * e_q;
        out.push(JlCheck {
            bits,
            eps,
            e_q,
            max_deviation,
            bound,
            saturated,
            holds: max_deviation <= bound,
        });
    }
    Ok(out)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::experiments::ExperimentKind;

    #[test]
    fn small_sweeps() {
        let mut cfg = ExperimentConfig::defaults(ExperimentKind::QuantizationSim);
        cfg.n = 16;
        cfg.m = 300;
        cfg.pairs = 30;
        let r = quantization_sim(&cfg).unwrap();
        assert_eq!(r.cells.len(), 3);
        assert!(r.cells[0].theory_gap > r.cells[2].theory_gap);
        assert!(r.jl.iter().all(|j| j.holds && j.saturated == 0));
        cfg.universal = true;
        assert!(quantization_sim(&cfg).is_err());
        cfg.delta = 1.0;
        cfg.scale = 1.0;
        let r = quantization_sim(&cfg).unwrap();
        assert!(r.cells[2].theory_gap < 0.01, "{:?}", r.cells);
    }
}

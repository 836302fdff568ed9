//! Bound calculator sweeps and single-map evaluation.

use super::{resolve_spec, ExperimentConfig};
use crate::error::Result;
use crate::maps::{MapKind, PeriodicMap};
use crate::randproj::{Family, RandomState, Stream};
use crate::table::Table;
use crate::theory::{
    curve_table, decay_threshold_eps, discontinuous_extension_bound, linear_grid, p2_bound, p2_monte_carlo,
    pointcloud_bound, BinaryParams, DiscontinuousExtension, DistanceMapModel, PointCloudFlavor,
};

#[derive(Clone, Debug)]
pub struct BoundsSweep {
    /// `bounds_pointcloud`, `bounds_threshold`, `bounds_p2`.
    pub tables: super::Tables,
}

const FLAVORS: [(&str, PointCloudFlavor); 5] = [
    ("sq_l2", PointCloudFlavor::SqL2),
    ("sqrt_loose", PointCloudFlavor::SqrtLoose),
    ("sqrt_tight", PointCloudFlavor::SqrtTight),
    ("kernel", PointCloudFlavor::Kernel),
    ("norm", PointCloudFlavor::Norm),
];

/// Point-cloud bounds over `m_list` (with `hbar` the range of `map`),
/// extension decay for a binary quantizer (`P_2 = 1`) over `eps_list`, and
/// the boundary-crossing bound against Monte Carlo over `n_list x ratio_list`
/// with `trials` draws per cell.
pub fn bounds_sweep(cfg: &ExperimentConfig) -> Result<BoundsSweep> {
    cfg.validate()?;
    let map: PeriodicMap = cfg.map.parse()?;
    let hbar = map.range();

    let mut pc = Table::new(&["M", "flavor", "Q", "eps", "hbar", "probability", "vacuous"]);
    for &m in &cfg.m_list {
        for (name, flavor) in FLAVORS {
            if flavor == PointCloudFlavor::SqrtTight && cfg.eps > 1.0 {
                continue;
            }
            let r = pointcloud_bound(cfg.q, m as u64, cfg.eps, hbar, flavor)?;
            pc.push(vec![
                m.into(),
                name.into(),
                cfg.q.into(),
                cfg.eps.into(),
                hbar.into(),
                r.probability.into(),
                r.vacuous.into(),
            ]);
        }
    }

    let mut th = Table::new(&["eps", "M", "c0", "c1", "threshold", "rate", "decays", "probability"]);
    for &eps in &cfg.eps_list {
        let r = discontinuous_extension_bound(&DiscontinuousExtension {
            entropy_half: (cfg.q as f64).ln(),
            m: cfg.m as f64,
            w: 2.0 * eps * eps,
            c: 1.0,
            p_t: vec![1.0],
            t_max: 2,
            p_f: 0.0,
            c0: cfg.c0,
        })?;
        let c1 = r.param("c1").unwrap_or(f64::NAN);
        th.push(vec![
            eps.into(),
            cfg.m.into(),
            cfg.c0.into(),
            c1.into(),
            decay_threshold_eps(c1).into(),
            r.param("rate").unwrap_or(f64::NAN).into(),
            (r.param("decays") == Some(1.0)).into(),
            r.probability.into(),
        ]);
    }

    let delta = if cfg.delta > 0.0 { cfg.delta } else { 1.0 };
    let mut p2 = Table::new(&[
        "N",
        "r_over_delta",
        "bound",
        "meaningful",
        "mc_mean",
        "mc_stderr",
        "trials",
    ]);
    let mc = RandomState::new(cfg.seed, Stream::MonteCarlo);
    let mut tag = 0;
    for &n in &cfg.n_list {
        for &ratio in &cfg.ratio_list {
            let r = ratio * delta;
            let b = p2_bound(n as u64, cfg.scale, r, delta)?;
            let est = p2_monte_carlo(n as u64, cfg.scale, r, delta, cfg.trials.max(2) as u64, &mc.derive(tag))?;
            tag += 1;
            p2.push(vec![
                n.into(),
                ratio.into(),
                b.value.into(),
                b.meaningful.into(),
                est.mean.into(),
                est.stderr.into(),
                est.trials.into(),
            ]);
        }
    }
    Ok(BoundsSweep {
        tables: vec![
            ("bounds_pointcloud".into(), pc),
            ("bounds_threshold".into(), th),
            ("bounds_p2".into(), p2),
        ],
    })
}

#[derive(Clone, Debug)]
pub struct MapEval {
    pub model: DistanceMapModel,
    /// `map_eval_curve`, `map_eval_spectrum`, `map_eval_summary`.
    pub tables: super::Tables,
}

/// Coefficients listed in the spectrum table.
const SPECTRUM_ROWS: usize = 256;

/// Distance-map curve of `map` on `pairs` points over `[d_min, d_max]`,
/// its leading power coefficients, and summary constants. With `delta > 0`
/// the scale is user-level and the binary bounds are tabulated for the
/// square wave under Gaussian projections.
pub fn map_eval(cfg: &ExperimentConfig) -> Result<MapEval> {
    cfg.validate()?;
    let map: PeriodicMap = cfg.map.parse()?;
    let spec = resolve_spec(cfg, &map, cfg.scale, cfg.delta)?;
    let model = DistanceMapModel::new(map.clone(), spec)?;
    let binary = (matches!(map.kind(), MapKind::Square) && cfg.family == Family::Gaussian && cfg.delta > 0.0)
        .then_some(BinaryParams {
            sigma: cfg.scale,
            delta: cfg.delta,
        });
    let curve = curve_table(&model, &linear_grid(cfg.d_min, cfg.d_max, cfg.pairs), binary)?;

    let coeffs = map.coefficient_table(SPECTRUM_ROWS - 1);
    let mut sp = Table::new(&["k", "c_k", "pair_power"]);
    for (k, &c) in coeffs.iter().enumerate() {
        let pair = if k == 0 { c } else { 2.0 * c };
        sp.push(vec![k.into(), c.into(), pair.into()]);
    }
    let captured = coeffs[0] + 2.0 * coeffs[1..].iter().sum::<f64>();
    let tail = (map.mean_square() - captured).max(0.0);

    let mut summary = Table::new(&[
        "map",
        "family",
        "scale",
        "effective_scale",
        "g_inf",
        "d0",
        "total_power",
        "dc_power",
        "tail_beyond_table",
    ]);
    summary.push(vec![
        map.id().into(),
        cfg.family.to_string().into(),
        cfg.scale.into(),
        spec.scale().into(),
        model.saturation().into(),
        model.d0().into(),
        model.total_power().into(),
        model.dc_power().into(),
        tail.into(),
    ]);
    Ok(MapEval {
        model,
        tables: vec![
            ("map_eval_curve".into(), curve),
            ("map_eval_spectrum".into(), sp),
            ("map_eval_summary".into(), summary),
        ],
    })
}

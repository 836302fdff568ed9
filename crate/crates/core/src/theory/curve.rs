//! Tabulated theory curves.

use super::closed_form::universal_binary_map;
use super::distance::DistanceMapModel;
use crate::error::Result;
use crate::table::{Cell, Table};

/// User-level parameters of a binary universal embedding, for the bound columns.
#[derive(Clone, Copy, Debug, PartialEq)]
pub struct BinaryParams {
    pub sigma: f64,
    pub delta: f64,
}

/// Columns `d, g, g_sqrt, K`, plus `lower5, upper6, upper7` when `binary` is given.
pub fn curve_table(model: &DistanceMapModel, ds: &[f64], binary: Option<BinaryParams>) -> Result<Table> {
    let mut header = vec!["d", "g", "g_sqrt", "K"];
    if binary.is_some() {
        header.extend(["lower5", "upper6", "upper7"]);
    }
    let mut t = Table::new(&header);
    for &d in ds {
        super::distance::check_distance(d)?;
        let mut row: Vec<Cell> = vec![
            d.into(),
            model.g(d).into(),
            model.g_sqrt(d).into(),
            model.kernel(d).into(),
        ];
        if let Some(p) = binary {
            let b = universal_binary_map(d, p.sigma, p.delta)?;
            row.extend([b.lower.into(), b.upper_exp.into(), b.upper_lin.into()]);
        }
        t.push(row);
    }
    Ok(t)
}

/// `n` points spaced evenly on `[lo, hi]`.
pub fn linear_grid(lo: f64, hi: f64, n: usize) -> Vec<f64> {
    match n {
        0 => vec![],
        1 => vec![lo],
        _ => (0..n).map(|i| lo + (hi - lo) * i as f64 / (n - 1) as f64).collect(),
    }
}

/// `n` points spaced logarithmically on `[lo, hi]`, `lo > 0`.
pub fn log_grid(lo: f64, hi: f64, n: usize) -> Vec<f64> {
    let (a, b) = (lo.ln(), hi.ln());
    linear_grid(a, b, n).into_iter().map(f64::exp).collect()
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::maps::make_square_wave;
    use crate::randproj::ProjectionSpec;

    #[test]
    fn columns() {
        let m = DistanceMapModel::new(make_square_wave(), ProjectionSpec::gaussian(0.5).unwrap()).unwrap();
        let t = curve_table(
            &m,
            &linear_grid(0.0, 2.0, 5),
            Some(BinaryParams { sigma: 1.0, delta: 1.0 }),
        )
        .unwrap();
        assert_eq!(t.header(), ["d", "g", "g_sqrt", "K", "lower5", "upper6", "upper7"]);
        assert_eq!(t.len(), 5);
        let plain = curve_table(&m, &[0.5], None).unwrap();
        assert_eq!(plain.header().len(), 4);
        let lg = log_grid(1e-3, 10.0, 5);
        assert!((lg[0] - 1e-3).abs() < 1e-15 && (lg[4] - 10.0).abs() < 1e-12);
    }
}

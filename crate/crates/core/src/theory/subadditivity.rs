//! Relaxed subadditivity `(1 - 2 eps) g(a + b) - 3 delta <= g(a) + g(b)`.

/// Worst grid point of a subadditivity check.
#[derive(Clone, Copy, Debug, PartialEq)]
pub struct SubadditivityReport {
    /// `max (1 - 2 eps) g(a+b) - 3 delta - g(a) - g(b)` over the grid.
    pub worst: f64,
    pub at: (f64, f64),
    pub pass: bool,
}

/// Numerical slack allowed before a violation counts.
pub const SUBADDITIVITY_SLACK: f64 = 1e-9;

pub fn check_subadditivity<G: Fn(f64) -> f64>(g: G, eps: f64, delta: f64, grid: &[(f64, f64)]) -> SubadditivityReport {
    let mut worst = f64::NEG_INFINITY;
    let mut at = (0.0, 0.0);
    for &(a, b) in grid {
        let v = (1.0 - 2.0 * eps) * g(a + b) - 3.0 * delta - g(a) - g(b);
        if v > worst {
            worst = v;
            at = (a, b);
        }
    }
    SubadditivityReport {
        worst,
        at,
        pass: worst <= SUBADDITIVITY_SLACK,
    }
}

/// All pairs from `n` evenly spaced points on `[0, max]`.
pub fn pair_grid(max: f64, n: usize) -> Vec<(f64, f64)> {
    let pts: Vec<f64> = (0..n).map(|i| max * i as f64 / (n.max(2) - 1) as f64).collect();
    pts.iter().flat_map(|&a| pts.iter().map(move |&b| (a, b))).collect()
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn linear_passes_square_fails() {
        let grid = pair_grid(2.0, 21);
        assert!(check_subadditivity(|d| d, 0.0, 0.0, &grid).pass);
        let r = check_subadditivity(|d| d * d, 0.0, 0.0, &[(1.0, 1.0)]);
        assert!(!r.pass);
        assert!((r.worst - 2.0).abs() < 1e-15);
        assert!(check_subadditivity(|d| d * d, 0.0, 1.0, &[(1.0, 1.0)]).pass);
    }
}

//! Relaxed subadditivity of several distance maps on a pair grid.
//!
//! ```text
//! cargo run --example subadditivity
//! ```

use uembed::maps::make_square_wave;
use uembed::randproj::ProjectionSpec;
use uembed::theory::{check_subadditivity, pair_grid, DistanceMapModel};

fn main() -> uembed::Result<()> {
    let model = DistanceMapModel::new(make_square_wave(), ProjectionSpec::gaussian(1.0)?)?;
    let grid = pair_grid(3.0, 61);
    let cases: [(&str, &dyn Fn(f64) -> f64); 4] = [
        ("identity", &|d| d),
        ("square", &|d| d * d),
        ("sqrt of square-wave g", &|d| model.g_sqrt(d)),
        ("square-wave g", &|d| model.g(d)),
    ];
    for (name, g) in &cases {
        let r = check_subadditivity(*g, 0.0, 0.0, &grid);
        println!(
            "{name:<24} pass {:<5} worst {:+.4} at ({:.2}, {:.2})",
            r.pass, r.worst, r.at.0, r.at.1
        );
    }
    Ok(())
}

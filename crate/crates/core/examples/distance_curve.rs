//! The binary universal distance map with its bounds, and the generic
//! series model for the same curve.
//!
//! ```text
//! cargo run --example distance_curve [sigma] [delta]
//! ```

use uembed::maps::make_square_wave;
use uembed::randproj::{Family, ProjectionSpec};
use uembed::theory::{linear_saturation_radius, universal_binary_map, DistanceMapModel};

fn main() -> uembed::Result<()> {
    let mut args = std::env::args().skip(1).map(|s| s.parse::<f64>().unwrap_or(1.0));
    let sigma = args.next().unwrap_or(1.0);
    let delta = args.next().unwrap_or(1.0);
    let model = DistanceMapModel::new(
        make_square_wave(),
        ProjectionSpec::universal(Family::Gaussian, sigma, delta, 1)?,
    )?;

    println!(
        "{:>6} {:>9} {:>9} {:>9} {:>9} {:>9}",
        "d", "g", "series", "lower", "upper", "linear"
    );
    for i in 0..=20 {
        let d = 0.1 * i as f64 * delta / sigma;
        let b = universal_binary_map(d, sigma, delta)?;
        println!(
            "{d:>6.2} {:>9.5} {:>9.5} {:>9.5} {:>9.5} {:>9.5}",
            b.g,
            model.g(d),
            b.lower,
            b.upper_exp,
            b.upper_lin
        );
    }
    println!(
        "saturation level {:.3}, D0 (95%) {:.4}, linear bound reaches 1/2 at {:.4}",
        model.saturation(),
        model.d0(),
        linear_saturation_radius(sigma, delta)
    );
    Ok(())
}

//! Recovering a signal distance from a measured embedding distance, with
//! the resulting ambiguity.
//!
//! ```text
//! cargo run --release --example recover_distance
//! ```

use uembed::embedder::{embedding_distance, DistanceMetric, EmbeddingOperator};
use uembed::maps::make_square_wave;
use uembed::randproj::{Family, ProjectionSpec, RandomState, Stream};
use uembed::theory::{ambiguity, invert_map, DistanceMapModel};

fn main() -> uembed::Result<()> {
    let (n, m) = (128, 4096);
    let spec = ProjectionSpec::universal(Family::Gaussian, 1.0, 1.0, 1)?;
    let model = DistanceMapModel::new(make_square_wave(), spec)?;
    let op = EmbeddingOperator::build(spec, make_square_wave(), m, n, 5)?;
    let rs = RandomState::new(9, Stream::Label(0));
    let x: Vec<f64> = (0..n).map(|j| rs.gaussian(j as u64)).collect();
    let eps = 2.0 * (0.25 / m as f64).sqrt();

    println!(
        "{:>6} {:>9} {:>9} {:>10} {:>10}",
        "d", "hamming", "estimate", "status", "ambiguity"
    );
    for d in [0.05, 0.2, 0.4, 0.6, 1.0, 2.0] {
        let mut x2 = x.clone();
        x2[0] += d;
        let h = embedding_distance(&op.embed(&x)?, &op.embed(&x2)?, DistanceMetric::HammingMean)?;
        let inv = invert_map(&model, h)?;
        let amb = ambiguity(&model, h, eps, 0.0)?;
        println!(
            "{d:>6.2} {h:>9.4} {:>9.4} {:>10} {amb:>10.4}",
            inv.estimate,
            format!("{:?}", inv.status)
        );
    }
    Ok(())
}

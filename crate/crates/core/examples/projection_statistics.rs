//! Projection families, their characteristic functions, and a Monte Carlo check.
//!
//! ```text
//! cargo run --release --example projection_statistics
//! ```

use std::f64::consts::PI;

use uembed::randproj::{projected_diff_samples, sample_projection, ProjectionSpec, RandomState, Stream};

fn main() -> uembed::Result<()> {
    let rs = RandomState::new(7, Stream::MonteCarlo);
    for (name, spec, d, xi) in [
        ("gaussian", ProjectionSpec::gaussian(1.0)?, 1.0, 1.0),
        ("cauchy", ProjectionSpec::cauchy(1.0)?, 1.0, 2.0 * PI),
    ] {
        let l = projected_diff_samples(&spec, d, 1_000_000, &rs)?;
        let mc = l.iter().map(|v| (xi * v).cos()).sum::<f64>() / l.len() as f64;
        println!(
            "{name:<8} metric {:?}: phi({xi:.3} | d = {d}) = {:.6}, sample mean of cos = {mc:.6}",
            spec.metric(),
            spec.char_fn(xi, d)?
        );
    }

    let a = sample_projection(
        &ProjectionSpec::gaussian(0.5)?,
        200,
        300,
        &RandomState::new(1, Stream::Matrix),
    )?;
    let n = a.as_slice().len() as f64;
    let mean = a.as_slice().iter().sum::<f64>() / n;
    let var = a.as_slice().iter().map(|v| (v - mean).powi(2)).sum::<f64>() / n;
    println!("200 x 300 gaussian(0.5) matrix: mean {mean:.4}, variance {var:.4}");
    Ok(())
}

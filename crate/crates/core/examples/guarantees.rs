//! Failure-probability calculators for point clouds, continuous and
//! quantized extensions, and quantized measurements.
//!
//! ```text
//! cargo run --example guarantees
//! ```

use uembed::theory::{
    continuous_extension_bound, decay_threshold_eps, discontinuous_extension_bound, pointcloud_bound,
    quantized_bound_inflation, rate_form, scalar_quantizer_eq, ContinuousExtension, DiscontinuousExtension,
    PointCloudFlavor,
};

fn main() -> uembed::Result<()> {
    println!("point cloud, Q = 1000 points, eps = 0.1, hbar = 1");
    for m in [1_000u64, 5_000, 20_000] {
        let row: Vec<String> = [
            PointCloudFlavor::SqL2,
            PointCloudFlavor::SqrtLoose,
            PointCloudFlavor::Kernel,
            PointCloudFlavor::Norm,
        ]
        .iter()
        .map(|&f| pointcloud_bound(1000, m, 0.1, 1.0, f).map(|r| format!("{:?} {:.2e}", f, r.probability)))
        .collect::<uembed::Result<_>>()?;
        println!("  M = {m:>6}: {}", row.join(", "));
    }

    let c = continuous_extension_bound(&ContinuousExtension {
        entropy: 10.0,
        m: 1e4,
        w: 0.02,
        c: 1.0,
        eps: 0.05,
        delta: 0.0,
        k_f: 1.0,
        k_g: 1.0,
        alpha: 0.4,
    })?;
    println!(
        "\ncontinuous extension: r = {:?}, failure {:.3e}",
        c.param("r").unwrap_or(f64::NAN),
        c.raw
    );

    for c0 in [0.0, 0.1] {
        let d = discontinuous_extension_bound(&DiscontinuousExtension {
            entropy_half: 10.0,
            m: 1e4,
            w: 2.0 * 0.7f64.powi(2),
            c: 1.0,
            p_t: vec![1.0],
            t_max: 2,
            p_f: 0.0,
            c0,
        })?;
        let c1 = d.param("c1").unwrap_or(f64::NAN);
        println!(
            "quantized extension, c0 = {c0}: c1 = {c1:.4}, decays for eps > {:.4}, failure {:.3e}",
            decay_threshold_eps(c1),
            d.probability
        );
    }

    let (m, s) = (1000u64, 1.0);
    for bits in [2u32, 4, 8] {
        let eq = scalar_quantizer_eq(m, 2.0 * s / (bits as f64).exp2())?;
        println!(
            "B = {bits}: E_Q = {eq:.4}, eps + 2 E_Q = {:.4}, rate form at R = {} bits: {:.4}",
            quantized_bound_inflation(0.05, eq)?,
            bits as u64 * m,
            rate_form(0.05, (bits as u64 * m) as f64, m, s)?
        );
    }
    Ok(())
}

//! Quantized maps at several bit depths against their unquantized curves, plus the quantized JL check.
//!
//! ```text
//! cargo run --release --example quantization_sim [out_dir]
//! ```

use std::path::PathBuf;

use uembed::experiments::{quantization_sim, write_tables, ExperimentConfig, ExperimentKind};

fn main() -> uembed::Result<()> {
    let out = std::env::args()
        .nth(1)
        .map(PathBuf::from)
        .unwrap_or_else(|| std::env::temp_dir().join("quantization_sim"));
    let cfg = ExperimentConfig::defaults(ExperimentKind::QuantizationSim);
    let r = quantization_sim(&cfg)?;
    for c in &r.cells {
        println!(
            "B = {}: mean |dev| {:.4}, max |dev| {:.4}, gap to unquantized {:.4}",
            c.bits, c.mean_abs_dev, c.max_abs_dev, c.theory_gap
        );
    }
    for j in &r.jl {
        println!(
            "JL B = {}: deviation {:.4} <= eps + 2 E_Q = {:.4}: {}",
            j.bits, j.max_deviation, j.bound, j.holds
        );
    }
    for p in write_tables(&out, &r.tables)? {
        println!("wrote {}", p.display());
    }
    Ok(())
}

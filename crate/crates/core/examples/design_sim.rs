//! Embedding distances of random signal pairs against the designed curve, over several scales.
//!
//! ```text
//! cargo run --release --example design_sim [out_dir]
//! ```

use std::path::PathBuf;

use uembed::experiments::{design_sim, write_tables, ExperimentConfig, ExperimentKind};

fn main() -> uembed::Result<()> {
    let out = std::env::args()
        .nth(1)
        .map(PathBuf::from)
        .unwrap_or_else(|| std::env::temp_dir().join("design_sim"));
    let mut cfg = ExperimentConfig::defaults(ExperimentKind::DesignSim);
    cfg.pairs = 200;
    let r = design_sim(&cfg)?;
    for c in &r.cells {
        println!(
            "scale {:.2}: mean |dev| {:.4}, violation rate {:.4} (Hoeffding {:.2e}), D0 {:.3} vs empirical {:.3}",
            c.scale, c.mean_abs_dev, c.violation_rate, c.hoeffding, c.d0_theory, c.d0_empirical
        );
    }
    for p in write_tables(&out, &r.tables)? {
        println!("wrote {}", p.display());
    }
    Ok(())
}

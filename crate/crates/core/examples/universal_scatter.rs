//! Binary universal embeddings: Hamming distance against signal distance over steps and dimensions.
//!
//! ```text
//! cargo run --release --example universal_scatter [out_dir]
//! ```

use std::path::PathBuf;

use uembed::experiments::{universal_scatter, write_tables, ExperimentConfig, ExperimentKind};

fn main() -> uembed::Result<()> {
    let out = std::env::args()
        .nth(1)
        .map(PathBuf::from)
        .unwrap_or_else(|| std::env::temp_dir().join("universal_scatter"));
    let cfg = ExperimentConfig::defaults(ExperimentKind::UniversalScatter);
    let r = universal_scatter(&cfg)?;
    for c in &r.cells {
        println!(
            "Delta {:.2}, M {:>5}: 95% spread {:.4}, mean |dev| {:.4}, D0 {:.3} (linear {:.3}, empirical {:.3})",
            c.delta, c.m, c.spread95, c.mean_abs_dev, c.d0_theory, c.d0_linear, c.d0_empirical
        );
    }
    for p in write_tables(&out, &r.tables)? {
        println!("wrote {}", p.display());
    }
    Ok(())
}

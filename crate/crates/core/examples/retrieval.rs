//! Nearest-neighbour retrieval on clustered data in the embedded domain, over quantizer steps and dimensions.
//!
//! ```text
//! cargo run --release --example retrieval [out_dir]
//! ```

use std::path::PathBuf;

use uembed::experiments::{retrieval, write_tables, ExperimentConfig, ExperimentKind};

fn main() -> uembed::Result<()> {
    let out = std::env::args()
        .nth(1)
        .map(PathBuf::from)
        .unwrap_or_else(|| std::env::temp_dir().join("retrieval"));
    let mut cfg = ExperimentConfig::defaults(ExperimentKind::Retrieval);
    cfg.trials = 2;
    let r = retrieval(&cfg)?;
    println!("unembedded accuracy {:.3}, chance {:.3}", r.baseline, r.chance);
    for c in &r.cells {
        println!("Delta {:>6.2}, M {:>4}: accuracy {:.3}", c.delta, c.m, c.accuracy);
    }
    for p in write_tables(&out, &r.tables)? {
        println!("wrote {}", p.display());
    }
    Ok(())
}

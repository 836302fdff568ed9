//! Sweeps of the probability bounds, with Monte Carlo for the boundary-crossing bound.
//!
//! ```text
//! cargo run --release --example bounds_sweep [out_dir]
//! ```

use std::path::PathBuf;

use uembed::experiments::{bounds_sweep, write_tables, ExperimentConfig, ExperimentKind};

fn main() -> uembed::Result<()> {
    let out = std::env::args()
        .nth(1)
        .map(PathBuf::from)
        .unwrap_or_else(|| std::env::temp_dir().join("bounds_sweep"));
    let mut cfg = ExperimentConfig::defaults(ExperimentKind::BoundsSweep);
    cfg.trials = 20_000;
    let r = bounds_sweep(&cfg)?;
    for (name, t) in &r.tables {
        println!("{name}: {} rows", t.len());
    }
    print!("{}", r.tables[1].1.to_csv_string());
    for p in write_tables(&out, &r.tables)? {
        println!("wrote {}", p.display());
    }
    Ok(())
}

//! Distance-map curve, spectrum and summary constants of one map.
//!
//! ```text
//! cargo run --release --example map_eval [out_dir] [map]
//! ```

use std::path::PathBuf;

use uembed::experiments::{map_eval, write_tables, ExperimentConfig, ExperimentKind};

fn main() -> uembed::Result<()> {
    let out = std::env::args()
        .nth(1)
        .map(PathBuf::from)
        .unwrap_or_else(|| std::env::temp_dir().join("map_eval"));
    let mut cfg = ExperimentConfig::defaults(ExperimentKind::MapEval);
    if let Some(map) = std::env::args().nth(2) {
        cfg.map = map;
    }
    let r = map_eval(&cfg)?;
    print!("{}", r.tables[2].1.to_csv_string());
    for p in write_tables(&out, &r.tables)? {
        println!("wrote {}", p.display());
    }
    Ok(())
}

//! Times `embed_batch` on 10^4 Gaussian signals, N = 1000, M = 2000.
//!
//! ```text
//! cargo run --release --example throughput [signals]
//! ```

use std::time::Instant;

use uembed::embedder::EmbeddingOperator;
use uembed::maps::make_square_wave;
use uembed::randproj::{ProjectionSpec, RandomState, Stream};

fn main() -> uembed::Result<()> {
    let count: usize = std::env::args().nth(1).and_then(|s| s.parse().ok()).unwrap_or(10_000);
    let (n, m) = (1000, 2000);
    let op = EmbeddingOperator::build(ProjectionSpec::gaussian(0.5)?, make_square_wave(), m, n, 1)?;
    let rs = RandomState::new(2, Stream::Label(0));
    let xs: Vec<Vec<f64>> = (0..count)
        .map(|s| (0..n).map(|j| rs.gaussian((s * n + j) as u64)).collect())
        .collect();
    let t = Instant::now();
    let ys = op.embed_batch(&xs)?;
    let secs = t.elapsed().as_secs_f64();
    let ones: f64 = ys.iter().flat_map(|y| &y.values).sum();
    println!(
        "{count} signals, N={n}, M={m}: {secs:.2} s ({:.2} GFMA/s), mean bit {:.4}, threads {}",
        (count * n * m) as f64 / secs / 1e9,
        ones / (count * m) as f64,
        rayon::current_num_threads()
    );
    Ok(())
}

//! Embeds signals, compares them in the embedded domain, and round-trips
//! the embeddings through the binary file format.
//!
//! ```text
//! cargo run --release --example embed_and_store [dir]
//! ```

use std::path::PathBuf;

use uembed::embedder::{
    embedding_distance, load_embeddings, post_quantize, save_embeddings, write_embeddings_csv, DistanceMetric,
    EmbeddingOperator,
};
use uembed::maps::{make_sawtooth, make_square_wave};
use uembed::randproj::{Family, ProjectionSpec, RandomState, Stream};

fn main() -> uembed::Result<()> {
    let dir = std::env::args()
        .nth(1)
        .map(PathBuf::from)
        .unwrap_or_else(std::env::temp_dir);
    let (n, m) = (64, 1024);
    let rs = RandomState::new(3, Stream::Label(0));
    let x: Vec<f64> = (0..n).map(|j| rs.gaussian(j as u64)).collect();
    let xs: Vec<Vec<f64>> = [0.0, 0.1, 0.5, 2.0]
        .iter()
        .map(|&d| {
            x.iter()
                .enumerate()
                .map(|(j, v)| if j == 0 { v + d } else { *v })
                .collect()
        })
        .collect();

    let spec = ProjectionSpec::universal(Family::Gaussian, 1.0, 0.5, 1)?;
    let op = EmbeddingOperator::build(spec, make_square_wave(), m, n, 11)?;
    let ys = op.embed_batch(&xs)?;
    for (i, y) in ys.iter().enumerate().skip(1) {
        println!(
            "d = {:.1}: hamming {:.4}",
            xs[i][0] - xs[0][0],
            embedding_distance(&ys[0], y, DistanceMetric::HammingMean)?
        );
    }
    let path = dir.join("uembed_binary.uemb");
    save_embeddings(&path, &ys)?;
    let back = load_embeddings(&path)?;
    println!(
        "{} ({} bytes) round trip: {}",
        path.display(),
        std::fs::metadata(&path).map(|m| m.len()).unwrap_or(0),
        back == ys
    );

    let op = EmbeddingOperator::build(ProjectionSpec::gaussian(0.5)?, make_sawtooth(), m, n, 11)?;
    let ys = op.embed_batch(&xs)?;
    let q: Vec<_> = ys
        .iter()
        .map(|y| post_quantize(y, 4, make_sawtooth().sup()).map(|p| p.vector))
        .collect::<uembed::Result<_>>()?;
    println!(
        "sawtooth, 4-bit post-quantized: sq_l2 at d = 2.0 is {:.4} (unquantized {:.4})",
        embedding_distance(&q[0], &q[3], DistanceMetric::SqL2Mean)?,
        embedding_distance(&ys[0], &ys[3], DistanceMetric::SqL2Mean)?
    );
    let csv = dir.join("uembed_quantized.csv");
    write_embeddings_csv(std::fs::File::create(&csv).map_err(uembed::Error::from)?, &q)?;
    println!("wrote {}", csv.display());
    Ok(())
}

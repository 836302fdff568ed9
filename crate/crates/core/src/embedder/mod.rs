//! Embedding operators `y = h(Ax + w)`, embedding-space distances,
//! post-quantization and persistence.

mod io;
pub mod kernel;

use std::fmt;
use std::str::FromStr;
use std::sync::Arc;

use crate::error::{invalid, Error, Result};
use crate::maps::PeriodicMap;
use crate::randproj::{sample_dither, sample_projection, Matrix, ProjectionSpec, RandomState, Stream};

pub use io::{load_embeddings, read_embeddings, save_embeddings, write_embeddings, write_embeddings_csv};

/// Largest post-quantization resolution.
pub const MAX_POST_BITS: u32 = 52;

/// A frozen `(A, w, h)` triple.
#[derive(Clone, Debug)]
pub struct EmbeddingOperator {
    a: Matrix,
    w: Vec<f64>,
    map: PeriodicMap,
    spec: ProjectionSpec,
    seed: u64,
    provenance: Arc<str>,
}

impl EmbeddingOperator {
    /// Samples `A` (`m x n`, entries from `spec`) and `w` (uniform) from
    /// independent streams of `seed`.
    ///
    /// `spec` is the period-1 scale; see [`ProjectionSpec::universal`] for
    /// converting a user-level `(sigma, Delta, B)`.
    pub fn build(spec: ProjectionSpec, map: PeriodicMap, m: usize, n: usize, seed: u64) -> Result<Self> {
        let a = sample_projection(&spec, m, n, &RandomState::new(seed, Stream::Matrix))?;
        let w = sample_dither(m, &RandomState::new(seed, Stream::Dither))?;
        Ok(Self::assemble(a, w, map, spec, seed))
    }

    /// Builds from explicit parts; `w` entries must lie in `[0, 1)`.
    pub fn from_parts(a: Matrix, w: Vec<f64>, map: PeriodicMap, spec: ProjectionSpec) -> Result<Self> {
        if w.len() != a.rows() {
            return Err(Error::DimensionMismatch {
                expected: a.rows(),
                got: w.len(),
            });
        }
        if let Some(&bad) = w.iter().find(|v| !(0.0..1.0).contains(*v)) {
            return Err(invalid("w", format!("dither entry {bad} outside [0, 1)")));
        }
        Ok(Self::assemble(a, w, map, spec, 0))
    }

    fn assemble(a: Matrix, w: Vec<f64>, map: PeriodicMap, spec: ProjectionSpec, seed: u64) -> Self {
        let provenance = format!(
            "{map}|{}:{}|seed={seed}|M={}|N={}",
            spec.family(),
            spec.scale(),
            a.rows(),
            a.cols()
        );
        Self {
            a,
            w,
            map,
            spec,
            seed,
            provenance: provenance.into(),
        }
    }

    pub fn m(&self) -> usize {
        self.a.rows()
    }

    pub fn n(&self) -> usize {
        self.a.cols()
    }

    pub fn matrix(&self) -> &Matrix {
        &self.a
    }

    pub fn dither(&self) -> &[f64] {
        &self.w
    }

    pub fn map(&self) -> &PeriodicMap {
        &self.map
    }

    pub fn spec(&self) -> &ProjectionSpec {
        &self.spec
    }

    pub fn seed(&self) -> u64 {
        self.seed
    }

    /// Tag identifying the operator; embeddings only compare within one tag.
    pub fn provenance(&self) -> &str {
        &self.provenance
    }

    fn check(&self, x: &[f64]) -> Result<()> {
        if x.len() != self.n() {
            return Err(Error::DimensionMismatch {
                expected: self.n(),
                got: x.len(),
            });
        }
        if let Some(&bad) = x.iter().find(|v| !v.is_finite()) {
            return Err(Error::NonFinite(bad));
        }
        Ok(())
    }

    /// `A x` without dither or map.
    pub fn project(&self, x: &[f64]) -> Result<Vec<f64>> {
        self.check(x)?;
        let mut u = vec![0.0; self.m()];
        kernel::project_many(&self.a, &[x], &mut u);
        Ok(u)
    }

    pub fn embed(&self, x: &[f64]) -> Result<EmbeddingVector> {
        let mut u = self.project(x)?;
        self.finish(&mut u);
        Ok(self.wrap(u))
    }

    /// Same values as mapping [`EmbeddingOperator::embed`] over `xs`, computed
    /// in parallel cache-blocked tiles.
    pub fn embed_batch<X: AsRef<[f64]> + Sync>(&self, xs: &[X]) -> Result<Vec<EmbeddingVector>> {
        for x in xs {
            self.check(x.as_ref())?;
        }
        let m = self.m();
        let mut u = vec![0.0; xs.len() * m];
        kernel::project_many(&self.a, xs, &mut u);
        Ok(u.chunks_mut(m.max(1))
            .map(|row| {
                self.finish(row);
                self.wrap(row.to_vec())
            })
            .collect())
    }

    fn finish(&self, u: &mut [f64]) {
        for (v, w) in u.iter_mut().zip(&self.w) {
            *v = self.map.value(*v + w);
        }
    }

    fn wrap(&self, values: Vec<f64>) -> EmbeddingVector {
        EmbeddingVector {
            values,
            map_id: self.provenance.clone(),
            quantized_bits: None,
        }
    }
}

/// One embedded signal with its operator tag.
#[derive(Clone, Debug, PartialEq)]
pub struct EmbeddingVector {
    pub values: Vec<f64>,
    pub map_id: Arc<str>,
    pub quantized_bits: Option<u32>,
}

impl EmbeddingVector {
    pub fn new(values: Vec<f64>, map_id: impl Into<Arc<str>>) -> Self {
        Self {
            values,
            map_id: map_id.into(),
            quantized_bits: None,
        }
    }

    pub fn len(&self) -> usize {
        self.values.len()
    }

    pub fn is_empty(&self) -> bool {
        self.values.is_empty()
    }

    /// True when every value is exactly 0 or 1.
    pub fn is_binary(&self) -> bool {
        self.values.iter().all(|&v| v == 0.0 || v == 1.0)
    }
}

/// Normalized embedding-space comparisons.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum DistanceMetric {
    /// `(1/M) ||y - y'||^2`
    SqL2Mean,
    /// `sqrt((1/M) ||y - y'||^2)`
    L2Mean,
    /// Fraction of differing coordinates; binary embeddings only.
    HammingMean,
    /// `(1/M) <y, y'>`
    InnerMean,
}

impl FromStr for DistanceMetric {
    type Err = Error;
    fn from_str(s: &str) -> Result<Self> {
        Ok(match s.trim() {
            "sq_l2_mean" => Self::SqL2Mean,
            "l2_mean" => Self::L2Mean,
            "hamming_mean" => Self::HammingMean,
            "inner_mean" => Self::InnerMean,
            other => return Err(invalid("metric", format!("unknown metric `{other}`"))),
        })
    }
}

impl fmt::Display for DistanceMetric {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            Self::SqL2Mean => "sq_l2_mean",
            Self::L2Mean => "l2_mean",
            Self::HammingMean => "hamming_mean",
            Self::InnerMean => "inner_mean",
        })
    }
}

pub fn embedding_distance(y: &EmbeddingVector, z: &EmbeddingVector, metric: DistanceMetric) -> Result<f64> {
    if y.map_id != z.map_id {
        return Err(Error::Incompatible(format!("`{}` vs `{}`", y.map_id, z.map_id)));
    }
    if y.len() != z.len() {
        return Err(Error::DimensionMismatch {
            expected: y.len(),
            got: z.len(),
        });
    }
    if y.is_empty() {
        return Err(invalid("y", "empty embedding"));
    }
    let m = y.len() as f64;
    let pairs = y.values.iter().zip(&z.values);
    Ok(match metric {
        DistanceMetric::SqL2Mean => pairs.map(|(a, b)| (a - b) * (a - b)).sum::<f64>() / m,
        DistanceMetric::L2Mean => (pairs.map(|(a, b)| (a - b) * (a - b)).sum::<f64>() / m).sqrt(),
        DistanceMetric::HammingMean => {
            if !y.is_binary() || !z.is_binary() {
                return Err(Error::NotBinary);
            }
            pairs.filter(|(a, b)| a != b).count() as f64 / m
        }
        DistanceMetric::InnerMean => pairs.map(|(a, b)| a * b).sum::<f64>() / m,
    })
}

/// Result of [`post_quantize`].
#[derive(Clone, Debug, PartialEq)]
pub struct PostQuantized {
    pub vector: EmbeddingVector,
    /// Coordinates outside `[-S, S]` that were clamped.
    pub saturated: usize,
}

/// Uniform scalar quantizer with step `2^(1-B) S` on `[-S, S]`,
/// reconstructing at cell midpoints.
pub fn post_quantize(y: &EmbeddingVector, bits: u32, s: f64) -> Result<PostQuantized> {
    if !(1..=MAX_POST_BITS).contains(&bits) {
        return Err(invalid("B", format!("{bits} outside 1..={MAX_POST_BITS}")));
    }
    if !(s > 0.0) || !s.is_finite() {
        return Err(invalid("S", format!("must be positive and finite, got {s}")));
    }
    let levels = (bits as f64).exp2();
    let step = 2.0 * s / levels;
    let mut saturated = 0;
    let values = y
        .values
        .iter()
        .map(|&v| {
            if v.abs() > s {
                saturated += 1;
            }
            let idx = ((v + s) / step).floor().clamp(0.0, levels - 1.0);
            -s + (idx + 0.5) * step
        })
        .collect();
    Ok(PostQuantized {
        vector: EmbeddingVector {
            values,
            map_id: y.map_id.clone(),
            quantized_bits: Some(bits),
        },
        saturated,
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::maps::{make_fourier_mixture, make_sawtooth, make_square_wave};

    fn signal(n: usize, k: u64) -> Vec<f64> {
        let rs = RandomState::new(k, Stream::Label(99));
        (0..n as u64).map(|i| rs.gaussian(i)).collect()
    }

    fn op(map: PeriodicMap, m: usize, n: usize) -> EmbeddingOperator {
        EmbeddingOperator::build(ProjectionSpec::gaussian(0.5).unwrap(), map, m, n, 42).unwrap()
    }

    #[test]
    fn binary_codomain_and_determinism() {
        let o = op(make_square_wave(), 64, 20);
        let x = signal(20, 1);
        let y = o.embed(&x).unwrap();
        assert!(y.is_binary());
        assert_eq!(y, o.embed(&x).unwrap());
        let o2 = op(make_square_wave(), 64, 20);
        assert_eq!(o.matrix(), o2.matrix());
        assert_eq!(o.dither(), o2.dither());
    }

    #[test]
    fn constant_map_gives_zero_distances() {
        // amplitude-zero tone is a constant map
        let o = op(make_fourier_mixture(&[(1, 0.0)]).unwrap(), 16, 5);
        let a = o.embed(&signal(5, 1)).unwrap();
        let b = o.embed(&signal(5, 2)).unwrap();
        assert_eq!(embedding_distance(&a, &b, DistanceMetric::SqL2Mean).unwrap(), 0.0);
    }

    #[test]
    fn batch_equals_single_bitwise() {
        let o = op(make_sawtooth(), 77, 33);
        let xs: Vec<Vec<f64>> = (0..45).map(|k| signal(33, k)).collect();
        let batch = o.embed_batch(&xs).unwrap();
        for (x, b) in xs.iter().zip(&batch) {
            let s = o.embed(x).unwrap();
            assert!(s.values.iter().zip(&b.values).all(|(p, q)| p.to_bits() == q.to_bits()));
        }
        let one = o.embed_batch(&xs[..1]).unwrap();
        assert_eq!(one[0], batch[0]);
        let pool = rayon::ThreadPoolBuilder::new().num_threads(4).build().unwrap();
        let par = pool.install(|| o.embed_batch(&xs).unwrap());
        assert_eq!(par, batch);
    }

    #[test]
    fn input_validation() {
        let o = op(make_square_wave(), 8, 4);
        assert!(matches!(o.embed(&[1.0; 3]), Err(Error::DimensionMismatch { .. })));
        assert!(matches!(o.embed(&[1.0, f64::NAN, 0.0, 0.0]), Err(Error::NonFinite(_))));
        assert!(o.embed_batch(&[vec![0.0; 4], vec![0.0; 5]]).is_err());
        let spec = ProjectionSpec::gaussian(1.0).unwrap();
        assert!(EmbeddingOperator::build(spec, make_square_wave(), 0, 4, 1).is_err());
    }

    #[test]
    fn distance_identities() {
        let o = op(make_square_wave(), 200, 10);
        let y = o.embed(&signal(10, 1)).unwrap();
        let z = o.embed(&signal(10, 2)).unwrap();
        let sq = embedding_distance(&y, &z, DistanceMetric::SqL2Mean).unwrap();
        let ham = embedding_distance(&y, &z, DistanceMetric::HammingMean).unwrap();
        assert_eq!(sq, ham);
        let l2 = embedding_distance(&y, &z, DistanceMetric::L2Mean).unwrap();
        assert!((l2 * l2 - sq).abs() < 1e-15);
        assert_eq!(embedding_distance(&y, &y, DistanceMetric::SqL2Mean).unwrap(), 0.0);
        let yy = embedding_distance(&y, &y, DistanceMetric::InnerMean).unwrap();
        let zz = embedding_distance(&z, &z, DistanceMetric::InnerMean).unwrap();
        let yz = embedding_distance(&y, &z, DistanceMetric::InnerMean).unwrap();
        assert!((sq - (yy + zz - 2.0 * yz)).abs() < 1e-12);

        let saw = op(make_sawtooth(), 200, 10).embed(&signal(10, 1)).unwrap();
        let saw2 = op(make_sawtooth(), 200, 10).embed(&signal(10, 2)).unwrap();
        assert!(matches!(
            embedding_distance(&saw, &saw2, DistanceMetric::HammingMean),
            Err(Error::NotBinary)
        ));
        assert!(matches!(
            embedding_distance(&y, &saw, DistanceMetric::SqL2Mean),
            Err(Error::Incompatible(_))
        ));
    }

    #[test]
    fn post_quantization_error_and_saturation() {
        let y = EmbeddingVector::new((0..101).map(|i| -1.0 + i as f64 * 0.02).collect(), "t");
        for bits in [1, 3, 8] {
            let q = post_quantize(&y, bits, 1.0).unwrap();
            assert_eq!(q.saturated, 0);
            let half = (-(bits as f64)).exp2();
            for (a, b) in y.values.iter().zip(&q.vector.values) {
                assert!((a - b).abs() <= half + 1e-15);
            }
            let l2: f64 = y
                .values
                .iter()
                .zip(&q.vector.values)
                .map(|(a, b)| (a - b).powi(2))
                .sum::<f64>()
                .sqrt();
            assert!(l2 <= (y.len() as f64).sqrt() * half);
        }
        let fine = post_quantize(&y, 30, 1.0).unwrap();
        assert!(y
            .values
            .iter()
            .zip(&fine.vector.values)
            .all(|(a, b)| (a - b).abs() < 1e-6));
        let clipped = post_quantize(&EmbeddingVector::new(vec![-3.0, 0.0, 2.0], "t"), 2, 1.0).unwrap();
        assert_eq!(clipped.saturated, 2);
        assert_eq!(clipped.vector.values, vec![-0.75, 0.25, 0.75]);
        assert!(post_quantize(&y, 0, 1.0).is_err());
        assert!(post_quantize(&y, 2, 0.0).is_err());
    }
}
